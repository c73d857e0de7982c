#pragma once

#include "dimacs.hpp"
#include "instances.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include <csignal>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace cardcnf
{

enum class SolveStatus
{
  SAT,
  UNSAT,
  TIMEOUT,
  ERROR
};

inline std::string to_string( SolveStatus s )
{
  switch ( s )
  {
  case SolveStatus::SAT:
    return "SAT";
  case SolveStatus::UNSAT:
    return "UNSAT";
  case SolveStatus::TIMEOUT:
    return "TIMEOUT";
  default:
    return "ERROR";
  }
}

inline SolveStatus parse_status( std::string_view s )
{
  for ( auto st : { SolveStatus::SAT, SolveStatus::UNSAT, SolveStatus::TIMEOUT, SolveStatus::ERROR } )
  {
    if ( s == to_string( st ) )
    {
      return st;
    }
  }
  throw std::invalid_argument( "unknown status '" + std::string( s ) + "'" );
}

struct SolverRun
{
  SolveStatus status = SolveStatus::ERROR;
  double wall_time_ms = 0;
  /* tail of the solver output when the status line is missing */
  std::string excerpt;
};

/* whitespace-separated words; no quoting */
inline std::vector<std::string> split_command( std::string_view command )
{
  std::vector<std::string> words;
  std::istringstream is{ std::string( command ) };
  for ( std::string w; is >> w; )
  {
    words.push_back( w );
  }
  return words;
}

inline std::string solver_name( std::string_view command )
{
  auto const words = split_command( command );
  return words.empty() ? std::string{} : std::filesystem::path( words.back() ).filename().string();
}

/*! \brief Runs `solver_command <dimacs_path>` and reads its "s SATISFIABLE" / "s UNSATISFIABLE" line. */
inline SolverRun run_solver( std::string const& dimacs_path, std::string const& solver_command, double timeout_ms )
{
  SolverRun run;
  auto words = split_command( solver_command );
  if ( words.empty() )
  {
    run.excerpt = "empty solver command";
    return run;
  }
  words.push_back( dimacs_path );
  std::vector<char*> argv;
  for ( auto& w : words )
  {
    argv.push_back( w.data() );
  }
  argv.push_back( nullptr );

  int fds[2];
  if ( pipe( fds ) != 0 )
  {
    run.excerpt = "pipe failed";
    return run;
  }
  auto const start = std::chrono::steady_clock::now();
  pid_t const pid = fork();
  if ( pid < 0 )
  {
    close( fds[0] );
    close( fds[1] );
    run.excerpt = "fork failed";
    return run;
  }
  if ( pid == 0 )
  {
    setpgid( 0, 0 );
    dup2( fds[1], STDOUT_FILENO );
    dup2( fds[1], STDERR_FILENO );
    close( fds[0] );
    close( fds[1] );
    execvp( argv[0], argv.data() );
    char const msg[] = "cannot execute solver\n";
    [[maybe_unused]] auto const w = write( STDERR_FILENO, msg, sizeof( msg ) - 1 );
    _exit( 127 );
  }
  close( fds[1] );
  setpgid( pid, pid );

  auto const deadline = start + std::chrono::duration<double, std::milli>( timeout_ms );
  std::string output;
  bool timed_out = false;
  char buffer[4096];
  while ( true )
  {
    auto const left = std::chrono::ceil<std::chrono::milliseconds>( deadline - std::chrono::steady_clock::now() );
    if ( left.count() <= 0 )
    {
      timed_out = true;
      break;
    }
    pollfd p{ fds[0], POLLIN, 0 };
    auto const ready = poll( &p, 1, static_cast<int>( std::min<long long>( left.count(), 100 ) ) );
    if ( ready > 0 )
    {
      auto const got = read( fds[0], buffer, sizeof( buffer ) );
      if ( got <= 0 )
      {
        break;
      }
      output.append( buffer, static_cast<std::size_t>( got ) );
    }
  }
  int wstatus = 0;
  if ( timed_out )
  {
    kill( -pid, SIGKILL );
    kill( pid, SIGKILL );
    waitpid( pid, &wstatus, 0 );
  }
  else
  {
    waitpid( pid, &wstatus, 0 );
  }
  run.wall_time_ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
  close( fds[0] );
  if ( timed_out )
  {
    run.status = SolveStatus::TIMEOUT;
    return run;
  }

  std::istringstream lines( output );
  for ( std::string line; std::getline( lines, line ); )
  {
    if ( line.starts_with( "s SATISFIABLE" ) )
    {
      run.status = SolveStatus::SAT;
      return run;
    }
    if ( line.starts_with( "s UNSATISFIABLE" ) )
    {
      run.status = SolveStatus::UNSAT;
      return run;
    }
  }
  run.excerpt = output.size() > 200 ? output.substr( output.size() - 200 ) : output;
  return run;
}

/*! \brief One solver run on one (instance, encoder) cell. */
struct BenchRecord
{
  std::string family;
  std::string params;
  std::string encoder;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t clause_count = 0;
  std::size_t aux_count = 0;
  std::string solver_name;
  double wall_time_ms = 0;
  SolveStatus status = SolveStatus::ERROR;

  friend bool operator==( BenchRecord const&, BenchRecord const& ) = default;
};

inline std::vector<std::string> const& bench_columns()
{
  static std::vector<std::string> const cols = { "family",    "params",       "encoder",   "n",
                                                 "k",         "seed",         "clause_count", "aux_count",
                                                 "solver_name", "wall_time_ms", "status" };
  return cols;
}

namespace detail
{

inline std::string csv_field( std::string const& s )
{
  if ( s.find_first_of( ",\"\r\n" ) == std::string::npos )
  {
    return s;
  }
  std::string out = "\"";
  for ( auto ch : s )
  {
    if ( ch == '"' )
    {
      out += '"';
    }
    out += ch;
  }
  return out + "\"";
}

inline std::string format_ms( double ms )
{
  std::ostringstream os;
  os.precision( 17 );
  os << ms;
  return os.str();
}

inline std::string join_record_params( Params const& params )
{
  std::string out;
  for ( auto const& [k, v] : params )
  {
    if ( !out.empty() )
    {
      out += ';';
    }
    out += k + "=" + v;
  }
  return out;
}

} // namespace detail

inline void write_csv( std::vector<BenchRecord> const& records, std::ostream& os )
{
  auto const& cols = bench_columns();
  for ( std::size_t i = 0; i < cols.size(); ++i )
  {
    os << ( i ? "," : "" ) << cols[i];
  }
  os << '\n';
  for ( auto const& r : records )
  {
    os << detail::csv_field( r.family ) << ',' << detail::csv_field( r.params ) << ',' << detail::csv_field( r.encoder )
       << ',' << r.n << ',' << r.k << ',' << r.seed << ',' << r.clause_count << ',' << r.aux_count << ','
       << detail::csv_field( r.solver_name ) << ',' << detail::format_ms( r.wall_time_ms ) << ','
       << to_string( r.status ) << '\n';
  }
}

/*! \brief Parses CSV written by write_csv (quoted fields may contain commas, quotes and newlines). */
inline std::vector<BenchRecord> read_csv( std::istream& is )
{
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char ch;
  while ( is.get( ch ) )
  {
    any = true;
    if ( quoted )
    {
      if ( ch == '"' )
      {
        if ( is.peek() == '"' )
        {
          is.get( ch );
          field += '"';
        }
        else
        {
          quoted = false;
        }
      }
      else
      {
        field += ch;
      }
    }
    else if ( ch == '"' )
    {
      quoted = true;
    }
    else if ( ch == ',' )
    {
      row.push_back( std::move( field ) );
      field.clear();
    }
    else if ( ch == '\n' )
    {
      row.push_back( std::move( field ) );
      field.clear();
      rows.push_back( std::move( row ) );
      row.clear();
      any = false;
    }
    else if ( ch != '\r' )
    {
      field += ch;
    }
  }
  if ( any )
  {
    row.push_back( std::move( field ) );
    rows.push_back( std::move( row ) );
  }
  if ( rows.empty() || rows.front() != bench_columns() )
  {
    throw std::invalid_argument( "CSV header does not match the bench record columns" );
  }
  std::vector<BenchRecord> out;
  for ( std::size_t i = 1; i < rows.size(); ++i )
  {
    auto const& r = rows[i];
    if ( r.size() != bench_columns().size() )
    {
      throw std::invalid_argument( "CSV row " + std::to_string( i + 1 ) + " has " + std::to_string( r.size() ) +
                                   " fields" );
    }
    BenchRecord rec;
    rec.family = r[0];
    rec.params = r[1];
    rec.encoder = r[2];
    rec.n = std::stoull( r[3] );
    rec.k = std::stoull( r[4] );
    rec.seed = std::stoull( r[5] );
    rec.clause_count = std::stoull( r[6] );
    rec.aux_count = std::stoull( r[7] );
    rec.solver_name = r[8];
    rec.wall_time_ms = std::stod( r[9] );
    rec.status = parse_status( r[10] );
    out.push_back( std::move( rec ) );
  }
  return out;
}

/*! \brief Cartesian product of encoders x sizes x seeds over one family.

  `base` supplies the family and the fixed parameters. A size is the
  variable count n for family L, the layer width for D and the machine
  count for M (where jobs default to k*c, or k*c+1 for the UNSAT variant).
*/
struct MatrixSpec
{
  InstanceSpec base;
  std::vector<std::string> encoders;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds = { 1 };
  std::string solver;
  double timeout_ms = 60000;
  std::size_t repeats = 1;
  /* 0 or 1 runs cells one after another */
  std::size_t parallel = 1;
  std::filesystem::path temp_dir = std::filesystem::temp_directory_path();
};

/* CARDCNF_SOLVER wins over the given command */
inline std::string resolve_solver( std::string const& command )
{
  if ( auto const* env = std::getenv( "CARDCNF_SOLVER" ); env && *env )
  {
    return env;
  }
  return command;
}

inline InstanceSpec cell_spec( InstanceSpec base, std::string const& encoder, std::size_t size, std::uint64_t seed )
{
  base.encoder = encoder;
  base.seed = seed;
  if ( base.family == Family::M )
  {
    base.machines = size;
    if ( base.jobs == 0 )
    {
      base.jobs = base.k * base.capacity + ( base.satisfiable ? 0 : 1 );
    }
  }
  else
  {
    base.n = size;
  }
  return base;
}

/*! \brief Generates, writes, solves and times one cell, averaging over `repeats` solver runs. */
inline BenchRecord run_cell( InstanceSpec const& spec, std::string const& solver, double timeout_ms,
                             std::size_t repeats, std::filesystem::path const& path )
{
  BenchRecord rec;
  rec.family = to_string( spec.family );
  rec.encoder = spec.encoder;
  rec.n = spec.family == Family::M ? spec.machines : spec.n;
  rec.k = spec.k;
  rec.seed = spec.seed;
  rec.solver_name = solver_name( solver );
  Params notes;
  try
  {
    auto const t0 = std::chrono::steady_clock::now();
    auto const inst = generate( spec );
    write_dimacs_file( inst.encoding, path.string() );
    notes = inst.encoding.params;
    notes["encode_ms"] =
        detail::format_ms( std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 ).count() );
    notes["expected"] = inst.expected_sat ? "SAT" : "UNSAT";
    rec.clause_count = inst.encoder_clauses;
    rec.aux_count = inst.encoder_aux;

    double total = 0;
    repeats = std::max<std::size_t>( repeats, 1 );
    for ( std::size_t r = 0; r < repeats; ++r )
    {
      auto const run = run_solver( path.string(), solver, timeout_ms );
      total += run.wall_time_ms;
      rec.status = run.status;
      if ( run.status == SolveStatus::ERROR )
      {
        notes["error"] = run.excerpt;
      }
      if ( run.status == SolveStatus::ERROR || run.status == SolveStatus::TIMEOUT )
      {
        total = run.wall_time_ms * repeats;
        break;
      }
    }
    rec.wall_time_ms = total / repeats;
    if ( repeats > 1 )
    {
      notes["repeats"] = std::to_string( repeats );
    }
    if ( ( rec.status == SolveStatus::SAT ) != inst.expected_sat &&
         ( rec.status == SolveStatus::SAT || rec.status == SolveStatus::UNSAT ) )
    {
      notes["expected_mismatch"] = "1";
    }
  }
  catch ( std::exception const& ex )
  {
    rec.status = SolveStatus::ERROR;
    notes["error"] = ex.what();
  }
  std::error_code ec;
  std::filesystem::remove( path, ec );
  rec.params = detail::join_record_params( notes );
  return rec;
}

inline std::vector<BenchRecord> run_matrix( MatrixSpec const& m )
{
  std::vector<InstanceSpec> cells;
  for ( auto size : m.sizes )
  {
    for ( auto seed : m.seeds )
    {
      for ( auto const& enc : m.encoders )
      {
        cells.push_back( cell_spec( m.base, enc, size, seed ) );
      }
    }
  }
  auto const solver = resolve_solver( m.solver );
  std::vector<BenchRecord> records( cells.size() );
  auto path_for = [&]( std::size_t i ) {
    return m.temp_dir / ( "cardcnf-" + std::to_string( getpid() ) + "-" + std::to_string( i ) + ".cnf" );
  };
  auto const workers = std::max<std::size_t>( m.parallel, 1 );
  if ( workers == 1 )
  {
    for ( std::size_t i = 0; i < cells.size(); ++i )
    {
      records[i] = run_cell( cells[i], solver, m.timeout_ms, m.repeats, path_for( i ) );
    }
    return records;
  }
  std::atomic<std::size_t> next{ 0 };
  std::vector<std::thread> pool;
  for ( std::size_t w = 0; w < workers; ++w )
  {
    pool.emplace_back( [&] {
      for ( auto i = next++; i < cells.size(); i = next++ )
      {
        records[i] = run_cell( cells[i], solver, m.timeout_ms, m.repeats, path_for( i ) );
        records[i].params += ( records[i].params.empty() ? "" : ";" ) + std::string( "parallel=" ) +
                             std::to_string( workers );
      }
    } );
  }
  for ( auto& t : pool )
  {
    t.join();
  }
  return records;
}

} // namespace cardcnf
