#include <cardcnf/cardcnf.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

using namespace cardcnf;

namespace
{

struct EncoderArgs
{
  std::string constraint = "amk";
  std::size_t k = 1;
  std::size_t n = 0;
  std::string encoder;
  std::string params;
  std::uint64_t seed = 1;
};

void add_encoder_options( CLI::App* cmd, EncoderArgs& a )
{
  cmd->add_option( "--constraint", a.constraint, "amo or amk" )->check( CLI::IsMember( { "amo", "amk" } ) );
  cmd->add_option( "--k", a.k, "cardinality bound" );
  cmd->add_option( "--n", a.n, "number of inputs" );
  cmd->add_option( "--encoder", a.encoder, "encoder name" );
  cmd->add_option( "--seed", a.seed, "seed for randomized encoders" );
  cmd->add_option( "--params", a.params, "encoder parameters as key=value,..." );
}

Encoding build( EncoderArgs const& a )
{
  auto options = parse_params( a.params );
  auto const& info = find_encoder( a.encoder );
  if ( a.encoder == "gc" && !options.count( "seed" ) )
  {
    options["seed"] = std::to_string( a.seed );
  }
  auto c = a.constraint == "amo" || ( info.amo_only && a.k == 1 ) ? Constraint::amo()
                                                                   : Constraint::amk( static_cast<std::uint32_t>( a.k ) );
  return encode( a.encoder, a.n, c, options );
}

void print_counts( Encoding const& e )
{
  std::cout << "clauses=" << e.num_clauses() << " aux=" << e.num_aux() << '\n';
}

std::string format_assignment( std::vector<bool> const& bits )
{
  std::string s;
  for ( auto b : bits )
  {
    s += b ? '1' : '0';
  }
  return s;
}

std::vector<std::string> split_list( std::string const& s )
{
  std::vector<std::string> out;
  std::stringstream is( s );
  for ( std::string item; std::getline( is, item, ',' ); )
  {
    if ( !item.empty() )
    {
      out.push_back( item );
    }
  }
  return out;
}

template<class T>
std::vector<T> parse_numbers( std::string const& s )
{
  std::vector<T> out;
  for ( auto const& item : split_list( s ) )
  {
    std::size_t used = 0;
    auto const v = std::stod( item, &used );
    if ( used != item.size() || v < 0 )
    {
      throw std::invalid_argument( "not a non-negative number: " + item );
    }
    out.push_back( static_cast<T>( v ) );
  }
  return out;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Cardinality constraint CNF encodings" };
  app.require_subcommand( 1 );

  EncoderArgs enc;
  std::string out_path;
  auto* encode_cmd = app.add_subcommand( "encode", "write an encoding as DIMACS" );
  add_encoder_options( encode_cmd, enc );
  encode_cmd->add_option( "--out", out_path, "output DIMACS path" );

  EncoderArgs cnt;
  auto* count_cmd = app.add_subcommand( "count", "print clause and auxiliary counts" );
  add_encoder_options( count_cmd, cnt );

  EncoderArgs ver;
  std::string verify_in, strategy = "exhaustive";
  auto* verify_cmd = app.add_subcommand( "verify", "check an encoding against its constraint" );
  add_encoder_options( verify_cmd, ver );
  verify_cmd->add_option( "--in", verify_in, "DIMACS file with constraint metadata" )->check( CLI::ExistingFile );
  verify_cmd->add_option( "--strategy", strategy, "exhaustive or weight-window" )
      ->check( CLI::IsMember( { "exhaustive", "weight-window" } ) );

  EncoderArgs pc;
  std::string pc_in;
  std::size_t pc_prefixes = 500;
  auto* pc_cmd = app.add_subcommand( "check-pc", "search for a propagation-completeness counterexample" );
  add_encoder_options( pc_cmd, pc );
  pc_cmd->add_option( "--in", pc_in, "DIMACS file with constraint metadata" )->check( CLI::ExistingFile );
  pc_cmd->add_option( "--prefixes", pc_prefixes, "random partial assignments to try" );

  InstanceSpec inst_spec;
  std::string family = "L", inst_params, inst_out;
  auto* gen_cmd = app.add_subcommand( "gen-instance", "generate a benchmark instance" );
  gen_cmd->add_option( "--family", family, "L, M or D" )->required();
  gen_cmd->add_option( "--n", inst_spec.n, "L: variables, D: layer width" );
  gen_cmd->add_option( "--k", inst_spec.k, "cardinality bound" );
  gen_cmd->add_flag( "--sat", inst_spec.satisfiable, "L: satisfiable variant" );
  gen_cmd->add_option( "--seed", inst_spec.seed, "random seed" );
  gen_cmd->add_option( "--machines", inst_spec.machines, "M: machines" );
  gen_cmd->add_option( "--jobs", inst_spec.jobs, "M: jobs" );
  gen_cmd->add_option( "--capacity", inst_spec.capacity, "M: jobs per machine" );
  gen_cmd->add_option( "--encoder", inst_spec.encoder, "AMK encoder under test" );
  gen_cmd->add_option( "--params", inst_params, "encoder parameters as key=value,..." );
  gen_cmd->add_option( "--out", inst_out, "output DIMACS path" );

  MatrixSpec matrix;
  std::string bench_family = "L", encoders_list = "seqcounter", sizes_list, seeds_list = "1", csv_path;
  auto* bench_cmd = app.add_subcommand( "bench", "run a solver over an instance matrix" );
  bench_cmd->add_option( "--family", bench_family, "L, M or D" );
  bench_cmd->add_option( "--encoders", encoders_list, "comma-separated encoders" );
  bench_cmd->add_option( "--sizes", sizes_list, "comma-separated sizes" )->required();
  bench_cmd->add_option( "--seeds", seeds_list, "comma-separated seeds" );
  bench_cmd->add_option( "--k", matrix.base.k, "cardinality bound" );
  bench_cmd->add_flag( "--sat", matrix.base.satisfiable, "satisfiable variant (L, M)" );
  bench_cmd->add_option( "--capacity", matrix.base.capacity, "M: jobs per machine" );
  bench_cmd->add_option( "--jobs", matrix.base.jobs, "M: jobs (default k*c, +1 unless --sat)" );
  bench_cmd->add_option( "--solver", matrix.solver, "solver command; CARDCNF_SOLVER overrides" );
  bench_cmd->add_option( "--timeout", matrix.timeout_ms, "per-run timeout in ms" );
  bench_cmd->add_option( "--repeats", matrix.repeats, "solver runs per cell, averaged" );
  bench_cmd->add_option( "--parallel", matrix.parallel, "cells run concurrently" );
  bench_cmd->add_option( "--tmpdir", matrix.temp_dir, "directory for DIMACS files" );
  bench_cmd->add_option( "--csv", csv_path, "CSV output path" );

  std::string circuit_kind = "t2";
  std::size_t circuit_n = 0;
  bool circuit_dump = false;
  auto* circuit_cmd = app.add_subcommand( "circuit-audit", "build a threshold circuit and report its shape" );
  circuit_cmd->add_option( "--circuit", circuit_kind, "s2, t3, t2 or t2-product" )
      ->check( CLI::IsMember( { "s2", "t3", "t2", "t2-product" } ) );
  circuit_cmd->add_option( "--n", circuit_n, "number of inputs" )->required();
  circuit_cmd->add_flag( "--dump", circuit_dump, "print every gate" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e );
    return 2;
  }

  try
  {
    if ( *encode_cmd || *count_cmd )
    {
      auto const& a = *encode_cmd ? enc : cnt;
      auto const e = build( a );
      if ( *encode_cmd && !out_path.empty() )
      {
        write_dimacs_file( e, out_path );
      }
      print_counts( e );
      return 0;
    }

    if ( *verify_cmd )
    {
      auto const e = verify_in.empty() ? build( ver ) : read_dimacs_file( verify_in );
      auto const strat = strategy == "exhaustive" ? Strategy::exhaustive : Strategy::weight_window;
      CheckOptions opt;
      opt.seed = ver.seed;
      auto const report = check_encoding_correct( e, strat, opt );
      if ( report.pass() )
      {
        std::cout << "pass: " << report.checked_assignments << " assignments\n";
        return 0;
      }
      auto const& m = *report.first_mismatch;
      std::cout << "fail: inputs " << format_assignment( m.assignment ) << " constraint "
                << ( m.expected ? "holds" : "fails" ) << " but formula is " << ( m.got ? "SAT" : "UNSAT" ) << '\n';
      return 1;
    }

    if ( *pc_cmd )
    {
      auto const e = pc_in.empty() ? build( pc ) : read_dimacs_file( pc_in );
      PcOptions opt;
      opt.seed = pc.seed;
      opt.random_prefixes = pc_prefixes;
      auto const report = check_propagation_complete( e, opt );
      if ( report.pass )
      {
        std::cout << "pass: " << report.queries << " queries\n";
        return 0;
      }
      std::cout << "counterexample: prefix";
      for ( auto l : report.prefix )
      {
        std::cout << ' ' << l.dimacs();
      }
      if ( report.missing )
      {
        std::cout << " entails " << report.missing->dimacs() << " but unit propagation misses it\n";
      }
      else
      {
        std::cout << " is infeasible but unit propagation finds no conflict\n";
      }
      return 1;
    }

    if ( *gen_cmd )
    {
      inst_spec.family = parse_family( family );
      inst_spec.encoder_options = parse_params( inst_params );
      auto const inst = generate( inst_spec );
      if ( !inst_out.empty() )
      {
        write_dimacs_file( inst.encoding, inst_out );
      }
      std::cout << "clauses=" << inst.encoding.num_clauses() << " aux=" << inst.encoding.num_aux()
                << " expected=" << ( inst.expected_sat ? "SAT" : "UNSAT" ) << '\n';
      return 0;
    }

    if ( *bench_cmd )
    {
      matrix.solver = resolve_solver( matrix.solver );
      if ( matrix.solver.empty() )
      {
        std::cerr << "no solver: pass --solver or set CARDCNF_SOLVER\n";
        return 2;
      }
      matrix.base.family = parse_family( bench_family );
      matrix.encoders = split_list( encoders_list );
      for ( auto const& e : matrix.encoders )
      {
        find_encoder( e );
      }
      matrix.sizes = parse_numbers<std::size_t>( sizes_list );
      matrix.seeds = parse_numbers<std::uint64_t>( seeds_list );
      auto const records = run_matrix( matrix );
      if ( !csv_path.empty() )
      {
        std::ofstream os( csv_path );
        if ( !os )
        {
          throw std::runtime_error( "cannot write " + csv_path );
        }
        write_csv( records, os );
      }
      std::cout << std::left << std::setw( 12 ) << "encoder" << std::setw( 10 ) << "n" << std::setw( 8 ) << "seed"
                << std::setw( 12 ) << "clauses" << std::setw( 10 ) << "aux" << std::setw( 12 ) << "ms"
                << "status\n";
      for ( auto const& r : records )
      {
        std::cout << std::left << std::setw( 12 ) << r.encoder << std::setw( 10 ) << r.n << std::setw( 8 ) << r.seed
                  << std::setw( 12 ) << r.clause_count << std::setw( 10 ) << r.aux_count << std::setw( 12 )
                  << std::fixed << std::setprecision( 1 ) << r.wall_time_ms << to_string( r.status )
                  << ( r.params.find( "expected_mismatch" ) != std::string::npos ? " (unexpected)" : "" ) << '\n';
      }
      return 0;
    }

    if ( *circuit_cmd )
    {
      auto const c = circuit_kind == "s2"           ? build_s2( circuit_n )
                     : circuit_kind == "t3"         ? build_t3( circuit_n )
                     : circuit_kind == "t2-product" ? build_t2_product( circuit_n )
                                                    : build_t2_multipartite( circuit_n );
      auto const a = audit( c );
      std::cout << "gates=" << a.gate_count << " monotone=" << ( a.is_monotone_structure ? 1 : 0 )
                << " max_and_depth=" << a.max_and_depth << '\n';
      if ( circuit_dump )
      {
        dump( c, std::cout );
      }
      return 0;
    }
  }
  catch ( unknown_encoder const& e )
  {
    std::cerr << e.what() << '\n';
    return 2;
  }
  catch ( strategy_infeasible const& e )
  {
    std::cerr << e.what() << '\n';
    return 2;
  }
  catch ( dimacs_error const& e )
  {
    std::cerr << e.what() << '\n';
    return 2;
  }
  catch ( std::invalid_argument const& e )
  {
    std::cerr << e.what() << '\n';
    return 2;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
