#pragma once

#include "cnf.hpp"

#include <cmath>
#include <set>

namespace cardcnf
{

using LitSpan = std::span<const Lit>;

namespace detail
{

/* smallest p with p*p >= n */
inline std::size_t ceil_sqrt( std::size_t n )
{
  auto p = static_cast<std::size_t>( std::sqrt( static_cast<double>( n ) ) );
  while ( p * p < n )
  {
    ++p;
  }
  while ( p > 0 && ( p - 1 ) * ( p - 1 ) >= n )
  {
    --p;
  }
  return p;
}

inline void add_guarded( CnfFormula& f, std::vector<Lit>& clause, std::optional<Lit> guard )
{
  if ( guard )
  {
    clause.push_back( *guard );
  }
  f.add_clause( clause );
}

inline void check_distinct( std::span<const Var> xs )
{
  std::set<std::uint32_t> seen;
  for ( auto v : xs )
  {
    if ( v.index == 0 || !seen.insert( v.index ).second )
    {
      throw std::invalid_argument( "duplicate or invalid input variable " + std::to_string( v.index ) );
    }
  }
}

} // namespace detail

/*! \brief Pairwise AMO; every clause is extended by `guard` when given. */
inline void add_direct_amo( CnfFormula& f, LitSpan lits, std::optional<Lit> guard = std::nullopt )
{
  std::vector<Lit> clause;
  for ( std::size_t i = 0; i < lits.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < lits.size(); ++j )
    {
      clause = { ~lits[i], ~lits[j] };
      detail::add_guarded( f, clause, guard );
    }
  }
}

/*! \brief Chen's product AMO: inputs on a grid, each implies its row and column. */
inline void add_product_amo( CnfFormula& f, LitSpan lits, std::optional<Lit> guard = std::nullopt )
{
  auto const n = lits.size();
  if ( n <= 4 )
  {
    add_direct_amo( f, lits, guard );
    return;
  }
  auto const p = detail::ceil_sqrt( n );
  auto const rows = ( n + p - 1 ) / p;
  auto const r = positive_literals( f.new_vars( rows ) );
  auto const c = positive_literals( f.new_vars( p ) );
  std::vector<Lit> clause;
  for ( std::size_t t = 0; t < n; ++t )
  {
    clause = { ~lits[t], r[t / p] };
    detail::add_guarded( f, clause, guard );
    clause = { ~lits[t], c[t % p] };
    detail::add_guarded( f, clause, guard );
  }
  add_product_amo( f, r, guard );
  add_product_amo( f, c, guard );
}

inline std::size_t product_amo_clauses( std::size_t n )
{
  if ( n <= 4 )
  {
    return n * ( n - ( n > 0 ) ) / 2;
  }
  auto const p = detail::ceil_sqrt( n );
  auto const rows = ( n + p - 1 ) / p;
  return 2 * n + product_amo_clauses( rows ) + product_amo_clauses( p );
}

inline std::size_t product_amo_aux( std::size_t n )
{
  if ( n <= 4 )
  {
    return 0;
  }
  auto const p = detail::ceil_sqrt( n );
  auto const rows = ( n + p - 1 ) / p;
  return rows + p + product_amo_aux( rows ) + product_amo_aux( p );
}

/*! \brief AMO over lits plus lit -> z for every lit, via one product level with row indicators. */
inline void add_amo_indicator( CnfFormula& f, LitSpan lits, Lit z )
{
  auto const n = lits.size();
  if ( n <= 4 )
  {
    add_direct_amo( f, lits );
    for ( auto x : lits )
    {
      f.add_clause( { ~x, z } );
    }
    return;
  }
  auto const p = detail::ceil_sqrt( n );
  auto const rows = ( n + p - 1 ) / p;
  auto const r = positive_literals( f.new_vars( rows ) );
  auto const c = positive_literals( f.new_vars( p ) );
  for ( std::size_t t = 0; t < n; ++t )
  {
    f.add_clause( { ~lits[t], r[t / p] } );
    f.add_clause( { ~lits[t], c[t % p] } );
  }
  add_product_amo( f, r );
  add_product_amo( f, c );
  for ( auto ri : r )
  {
    f.add_clause( { ~ri, z } );
  }
}

inline Encoding encode_direct( std::span<const Var> xs )
{
  detail::check_distinct( xs );
  auto e = make_encoding( xs, "direct", Constraint::amo() );
  add_direct_amo( e.formula, positive_literals( xs ) );
  return e;
}

inline Encoding encode_product( std::span<const Var> xs )
{
  detail::check_distinct( xs );
  auto e = make_encoding( xs, "product", Constraint::amo() );
  add_product_amo( e.formula, positive_literals( xs ) );
  return e;
}

/* the encoding's inputs are xs followed by z */
inline Encoding encode_amo_prime( std::span<const Var> xs, Var z )
{
  detail::check_distinct( xs );
  if ( std::find( xs.begin(), xs.end(), z ) != xs.end() )
  {
    throw std::invalid_argument( "indicator variable is among the inputs" );
  }
  std::vector<Var> all( xs.begin(), xs.end() );
  all.push_back( z );
  auto e = make_encoding( all, "amo-prime", Constraint::amo_indicator() );
  add_amo_indicator( e.formula, positive_literals( xs ), pos( z ) );
  return e;
}

} // namespace cardcnf
