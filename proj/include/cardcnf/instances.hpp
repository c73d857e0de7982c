#pragma once

#include "registry.hpp"

#include <numeric>
#include <random>

namespace cardcnf
{

enum class Family
{
  L,
  M,
  D
};

inline std::string to_string( Family f )
{
  return f == Family::L ? "L" : f == Family::M ? "M" : "D";
}

inline Family parse_family( std::string_view s )
{
  if ( s == "L" || s == "l" )
  {
    return Family::L;
  }
  if ( s == "M" || s == "m" )
  {
    return Family::M;
  }
  if ( s == "D" || s == "d" )
  {
    return Family::D;
  }
  throw std::invalid_argument( "unknown family '" + std::string( s ) + "', expected L, M or D" );
}

/*! \brief Parameters of one benchmark instance. Fields a family does not use are ignored. */
struct InstanceSpec
{
  Family family = Family::L;
  std::size_t n = 0;
  std::size_t k = 2;
  /* L: satisfiable variant */
  bool satisfiable = false;
  std::uint64_t seed = 1;
  /* M: machines, jobs, capacity */
  std::size_t machines = 0;
  std::size_t jobs = 0;
  std::size_t capacity = 1;
  std::string encoder = "seqcounter";
  Params encoder_options;
};

struct Instance
{
  Encoding encoding;
  bool expected_sat = false;
  /* size of the AMK(k) constraint under test and what its encoder emitted */
  std::size_t constraint_size = 0;
  std::size_t encoder_clauses = 0;
  std::size_t encoder_aux = 0;
  /* L: the positive clauses, as sets of input variables */
  std::vector<std::vector<Var>> subsets;
};

namespace detail
{

inline Instance start_instance( InstanceSpec const& spec )
{
  Instance inst;
  inst.encoding.encoder_name = spec.encoder;
  inst.encoding.annotations["family"] = to_string( spec.family );
  inst.encoding.annotations["seed"] = std::to_string( spec.seed );
  return inst;
}

inline void finish_instance( Instance& inst )
{
  inst.encoding.annotations["expected"] = inst.expected_sat ? "SAT" : "UNSAT";
}

/* AMK(k) over x with the encoder under test, measuring what it adds */
inline void add_tested_constraint( Instance& inst, InstanceSpec const& spec, LitSpan x )
{
  auto& f = inst.encoding.formula;
  auto const clauses = f.num_clauses();
  auto const aux = f.aux_vars().size();
  inst.encoding.params = add_cardinality( spec.encoder, f, x, spec.k, spec.encoder_options );
  inst.encoding.params["k"] = std::to_string( spec.k );
  inst.constraint_size = x.size();
  inst.encoder_clauses = f.num_clauses() - clauses;
  inst.encoder_aux = f.aux_vars().size() - aux;
}

} // namespace detail

/*! \brief x_1..x_n under AMK(k), plus k+1 (UNSAT) or k (SAT) positive clauses over disjoint random 10-sets. */
inline Instance gen_family_l( InstanceSpec const& spec )
{
  auto const n = spec.n, k = spec.k;
  auto const groups = spec.satisfiable ? k : k + 1;
  if ( k < 1 || n < 10 * ( k + 1 ) )
  {
    throw std::invalid_argument( "family L needs k >= 1 and n >= 10(k+1)" );
  }
  auto inst = detail::start_instance( spec );
  auto& f = inst.encoding.formula;
  auto const xs = f.new_vars( n, Role::input );
  detail::add_tested_constraint( inst, spec, positive_literals( xs ) );

  /* U_i is the tail of `pool` after position 10 i; each S_i is a uniform 10-subset of it */
  std::mt19937_64 rng( spec.seed );
  std::vector<std::uint32_t> pool( n );
  std::iota( pool.begin(), pool.end(), 0u );
  for ( std::size_t i = 0; i < groups; ++i )
  {
    std::vector<Var> s;
    std::vector<Lit> clause;
    for ( std::size_t j = 10 * i; j < 10 * ( i + 1 ); ++j )
    {
      std::uniform_int_distribution<std::size_t> pick( j, n - 1 );
      std::swap( pool[j], pool[pick( rng )] );
      s.push_back( xs[pool[j]] );
      clause.push_back( pos( xs[pool[j]] ) );
    }
    std::sort( s.begin(), s.end() );
    f.add_clause( clause );
    inst.subsets.push_back( std::move( s ) );
  }
  inst.encoding.params["n"] = std::to_string( n );
  inst.encoding.params["satisfiable"] = spec.satisfiable ? "1" : "0";
  inst.expected_sat = spec.satisfiable;
  detail::finish_instance( inst );
  return inst;
}

/*! \brief Jobs on machines: every job placed, at most k active machines, at most c jobs per machine. */
inline Instance gen_family_m( InstanceSpec const& spec )
{
  auto const M = spec.machines, T = spec.jobs, c = spec.capacity, k = spec.k;
  if ( k < 1 || M < k || c < 1 || T < 1 )
  {
    throw std::invalid_argument( "family M needs k >= 1, machines >= k, capacity >= 1 and jobs >= 1" );
  }
  auto inst = detail::start_instance( spec );
  auto& f = inst.encoding.formula;
  std::vector<std::vector<Var>> x( M );
  for ( auto& row : x )
  {
    row = f.new_vars( T, Role::input );
  }
  auto const a = f.new_vars( M, Role::input );
  for ( std::size_t t = 0; t < T; ++t )
  {
    std::vector<Lit> clause;
    for ( std::size_t m = 0; m < M; ++m )
    {
      clause.push_back( pos( x[m][t] ) );
    }
    f.add_clause( clause );
  }
  for ( std::size_t m = 0; m < M; ++m )
  {
    for ( std::size_t t = 0; t < T; ++t )
    {
      f.add_clause( { neg( x[m][t] ), pos( a[m] ) } );
    }
  }
  detail::add_tested_constraint( inst, spec, positive_literals( a ) );
  for ( std::size_t m = 0; m < M; ++m )
  {
    add_sequential_amk( f, positive_literals( x[m] ), c );
  }
  inst.encoding.params["machines"] = std::to_string( M );
  inst.encoding.params["jobs"] = std::to_string( T );
  inst.encoding.params["capacity"] = std::to_string( c );
  inst.expected_sat = T <= std::min( M, k ) * c;
  detail::finish_instance( inst );
  return inst;
}

/*! \brief Layered DAG s -> n -> ... -> n -> t with k+1 layers; s active, active vertices need an active successor. */
inline Instance gen_family_d( InstanceSpec const& spec )
{
  auto const n = spec.n, k = spec.k;
  if ( n < 1 || k < 2 )
  {
    throw std::invalid_argument( "family D needs n >= 1 and k >= 2" );
  }
  auto inst = detail::start_instance( spec );
  auto& f = inst.encoding.formula;
  std::vector<std::vector<Var>> layers;
  layers.push_back( f.new_vars( 1, Role::input ) );
  for ( std::size_t i = 2; i <= k; ++i )
  {
    layers.push_back( f.new_vars( n, Role::input ) );
  }
  layers.push_back( f.new_vars( 1, Role::input ) );
  for ( std::size_t i = 0; i + 1 < layers.size(); ++i )
  {
    for ( auto v : layers[i] )
    {
      std::vector<Lit> clause = { neg( v ) };
      for ( auto u : layers[i + 1] )
      {
        clause.push_back( pos( u ) );
      }
      f.add_clause( clause );
    }
  }
  f.add_clause( { pos( layers.front().front() ) } );
  std::vector<Lit> all;
  for ( auto const& layer : layers )
  {
    for ( auto v : layer )
    {
      all.push_back( pos( v ) );
    }
  }
  detail::add_tested_constraint( inst, spec, all );
  inst.encoding.params["width"] = std::to_string( n );
  inst.expected_sat = false;
  detail::finish_instance( inst );
  return inst;
}

inline Instance generate( InstanceSpec const& spec )
{
  switch ( spec.family )
  {
  case Family::L:
    return gen_family_l( spec );
  case Family::M:
    return gen_family_m( spec );
  default:
    return gen_family_d( spec );
  }
}

} // namespace cardcnf
