#pragma once

#include <cardcnf/cnf.hpp>

#include <cstdint>
#include <functional>
#include <vector>

/* Test oracles written independently of the library's solver and checkers. */
namespace oracle
{

using Clauses = std::vector<std::vector<int>>;

inline Clauses clauses_of( cardcnf::CnfFormula const& f )
{
  Clauses out;
  for ( std::size_t i = 0; i < f.num_clauses(); ++i )
  {
    std::vector<int> c;
    for ( auto l : f.clause( i ) )
    {
      c.push_back( l.dimacs() );
    }
    out.push_back( c );
  }
  return out;
}

/* plain recursive DPLL, clause scanning, no watches; value[v] in {-1 unknown, 0, 1} */
inline bool satisfiable( Clauses const& cls, std::vector<int> value )
{
  while ( true )
  {
    bool changed = false;
    for ( auto const& c : cls )
    {
      int unassigned = 0, last = 0;
      bool sat = false;
      for ( auto l : c )
      {
        auto const v = value[std::abs( l )];
        if ( v < 0 )
        {
          ++unassigned;
          last = l;
        }
        else if ( ( v == 1 ) == ( l > 0 ) )
        {
          sat = true;
          break;
        }
      }
      if ( sat )
      {
        continue;
      }
      if ( unassigned == 0 )
      {
        return false;
      }
      if ( unassigned == 1 )
      {
        value[std::abs( last )] = last > 0 ? 1 : 0;
        changed = true;
      }
    }
    if ( !changed )
    {
      break;
    }
  }
  for ( std::size_t v = 1; v < value.size(); ++v )
  {
    if ( value[v] < 0 )
    {
      for ( int b : { 0, 1 } )
      {
        auto next = value;
        next[v] = b;
        if ( satisfiable( cls, next ) )
        {
          return true;
        }
      }
      return false;
    }
  }
  return true;
}

inline std::uint32_t num_vars( cardcnf::CnfFormula const& f ) { return f.max_var().index; }

/* satisfiable with the listed variables fixed */
inline bool satisfiable_with( cardcnf::CnfFormula const& f, std::vector<std::pair<std::uint32_t, bool>> const& fixed )
{
  std::vector<int> value( num_vars( f ) + 1, -1 );
  for ( auto [v, b] : fixed )
  {
    value[v] = b ? 1 : 0;
  }
  return satisfiable( clauses_of( f ), value );
}

/* for every input assignment, SAT iff pred(assignment); returns the first disagreeing mask or -1 */
inline long long first_disagreement( cardcnf::CnfFormula const& f, std::vector<cardcnf::Var> const& inputs,
                                     std::function<bool( std::vector<bool> const& )> const& pred )
{
  auto const cls = clauses_of( f );
  auto const n = inputs.size();
  for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << n ); ++mask )
  {
    std::vector<int> value( num_vars( f ) + 1, -1 );
    std::vector<bool> bits( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
      bits[i] = ( mask >> i ) & 1;
      value[inputs[i].index] = bits[i] ? 1 : 0;
    }
    if ( satisfiable( cls, value ) != pred( bits ) )
    {
      return static_cast<long long>( mask );
    }
  }
  return -1;
}

inline std::size_t weight( std::vector<bool> const& bits )
{
  std::size_t w = 0;
  for ( auto b : bits )
  {
    w += b;
  }
  return w;
}

inline std::function<bool( std::vector<bool> const& )> at_most( std::size_t k )
{
  return [k]( std::vector<bool> const& bits ) { return weight( bits ) <= k; };
}

} // namespace oracle
