#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cardcnf
{

/*! \brief Indexed family of subsets of [ground_size]; elements are 1-based and sorted. */
struct SetFamily
{
  std::uint32_t ground_size = 0;
  std::vector<std::vector<std::uint32_t>> sets;

  std::size_t size() const { return sets.size(); }

  bool valid() const
  {
    return std::all_of( sets.begin(), sets.end(), [&]( auto const& s ) {
      return !s.empty() && std::is_sorted( s.begin(), s.end() ) &&
             std::adjacent_find( s.begin(), s.end() ) == s.end() && s.front() >= 1 && s.back() <= ground_size;
    } );
  }

  friend bool operator==( SetFamily const&, SetFamily const& ) = default;
};

inline bool is_prime( std::uint64_t q )
{
  if ( q < 2 )
  {
    return false;
  }
  for ( std::uint64_t d = 2; d * d <= q; ++d )
  {
    if ( q % d == 0 )
    {
      return false;
    }
  }
  return true;
}

inline std::uint64_t next_prime( std::uint64_t q )
{
  while ( !is_prime( q ) )
  {
    ++q;
  }
  return q;
}

/*! \brief Arithmetic modulo a prime. */
struct PrimeField
{
  std::uint32_t q;

  explicit PrimeField( std::uint32_t modulus ) : q( modulus )
  {
    if ( !is_prime( modulus ) )
    {
      throw std::invalid_argument( std::to_string( modulus ) + " is not prime" );
    }
  }

  std::uint32_t add( std::uint32_t a, std::uint32_t b ) const { return ( a + b ) % q; }
  std::uint32_t mul( std::uint32_t a, std::uint32_t b ) const
  {
    return static_cast<std::uint32_t>( static_cast<std::uint64_t>( a ) * b % q );
  }

  /* coefficients lowest degree first */
  std::uint32_t eval( std::span<const std::uint32_t> coeffs, std::uint32_t x ) const
  {
    std::uint32_t acc = 0;
    for ( auto it = coeffs.rbegin(); it != coeffs.rend(); ++it )
    {
      acc = add( mul( acc, x ), *it );
    }
    return acc;
  }
};

struct TransversalCheck
{
  bool pass = true;
  /* indices of a subfamily with fewer elements in its union than members */
  std::vector<std::size_t> witness;
};

/*! \brief Does every subfamily of at most k sets have a system of distinct representatives?

  By Hall's theorem a violation is a subfamily G with |G| <= k and |U G| < |G|.
  Some connected component of a violating G violates as well, so the search
  grows connected subfamilies from a root set (the member of least index)
  and keeps only those whose union has at most k-1 elements.
*/
inline TransversalCheck check_bounded_transversal( SetFamily const& family, std::size_t k )
{
  TransversalCheck result;
  if ( k == 0 )
  {
    return result;
  }
  auto const limit = k - 1;
  std::vector<std::vector<std::size_t>> containing( family.ground_size + 1 );
  for ( std::size_t j = 0; j < family.size(); ++j )
  {
    for ( auto e : family.sets[j] )
    {
      containing[e].push_back( j );
    }
  }

  std::vector<std::size_t> chosen;
  std::vector<std::uint32_t> uni, merged;
  std::function<bool( std::size_t )> extend = [&]( std::size_t root ) -> bool {
    if ( chosen.size() > uni.size() )
    {
      result.pass = false;
      result.witness = chosen;
      std::sort( result.witness.begin(), result.witness.end() );
      return true;
    }
    if ( chosen.size() == k )
    {
      return false;
    }
    auto const current = uni;
    for ( auto e : current )
    {
      for ( auto j : containing[e] )
      {
        if ( j <= root || std::find( chosen.begin(), chosen.end(), j ) != chosen.end() )
        {
          continue;
        }
        auto const& s = family.sets[j];
        merged.clear();
        std::set_union( current.begin(), current.end(), s.begin(), s.end(), std::back_inserter( merged ) );
        if ( merged.size() > limit )
        {
          continue;
        }
        uni = merged;
        chosen.push_back( j );
        if ( extend( root ) )
        {
          return true;
        }
        chosen.pop_back();
        uni = current;
      }
    }
    return false;
  };

  for ( std::size_t r = 0; r < family.size(); ++r )
  {
    auto const& s = family.sets[r];
    if ( s.size() > limit && !s.empty() )
    {
      continue;
    }
    chosen = { r };
    uni = s;
    if ( extend( r ) )
    {
      break;
    }
  }
  return result;
}

/*! \brief m i.i.d. uniform 3-subsets of [ell]; nullopt when the k-transversal check fails. */
inline std::optional<SetFamily> sample_hall_family( std::size_t m, std::uint32_t ell, std::size_t k,
                                                    std::uint64_t seed )
{
  if ( ell < 3 )
  {
    throw std::invalid_argument( "hall family needs a ground set of at least 3 elements" );
  }
  std::mt19937_64 rng( seed );
  std::uniform_int_distribution<std::uint32_t> pick( 1, ell );
  SetFamily family{ ell, {} };
  family.sets.reserve( m );
  for ( std::size_t j = 0; j < m; ++j )
  {
    std::vector<std::uint32_t> s;
    while ( s.size() < 3 )
    {
      auto const e = pick( rng );
      if ( std::find( s.begin(), s.end(), e ) == s.end() )
      {
        s.push_back( e );
      }
    }
    std::sort( s.begin(), s.end() );
    family.sets.push_back( std::move( s ) );
  }
  if ( !check_bounded_transversal( family, std::min( k, m ) ).pass )
  {
    return std::nullopt;
  }
  return family;
}

/*! \brief Graphs of the first `count` polynomials over F_q of degree < ceil(q/(k-1)).

  Polynomials are taken in lexicographic coefficient order (constant term
  varying fastest); the point (x, y) is element x*q + y + 1 of [q^2].
*/
inline SetFamily build_reed_solomon( std::uint32_t q, std::size_t k, std::size_t count )
{
  if ( k < 2 )
  {
    throw std::invalid_argument( "reed-solomon family needs k >= 2" );
  }
  PrimeField field( q );
  auto const degree = ( q + k - 2 ) / ( k - 1 );
  SetFamily family{ q * q, {} };
  family.sets.reserve( count );
  std::vector<std::uint32_t> coeffs( degree, 0 );
  for ( std::size_t j = 0; j < count; ++j )
  {
    std::vector<std::uint32_t> s( q );
    for ( std::uint32_t x = 0; x < q; ++x )
    {
      s[x] = x * q + field.eval( coeffs, x ) + 1;
    }
    family.sets.push_back( std::move( s ) );

    std::size_t i = 0;
    while ( i < degree && ++coeffs[i] == q )
    {
      coeffs[i++] = 0;
    }
    if ( i == degree && j + 1 < count )
    {
      throw std::invalid_argument( "only " + std::to_string( j + 1 ) + " polynomials of this degree exist" );
    }
  }
  return family;
}

/* q^ceil(q/(k-1)), saturated at `cap` */
inline std::size_t reed_solomon_capacity( std::uint32_t q, std::size_t k, std::size_t cap )
{
  auto const degree = ( q + k - 2 ) / ( k - 1 );
  std::size_t total = 1;
  for ( std::size_t i = 0; i < degree && total < cap; ++i )
  {
    total = total > cap / q ? cap : total * q;
  }
  return std::min( total, cap );
}

inline std::size_t ceil_log( std::size_t base, std::size_t n )
{
  std::size_t e = 0;
  for ( std::size_t v = 1; v < n; v *= base )
  {
    ++e;
  }
  return e;
}

/*! \brief (k-1)-cover-free family of at least target_m sets from the smallest admissible prime. */
inline SetFamily build_cover_free_family( std::size_t target_m, std::size_t k, std::size_t n, double c = 2.0,
                                          std::uint32_t q_cap = 1021 )
{
  if ( k < 2 )
  {
    throw std::invalid_argument( "cover-free family needs k >= 2" );
  }
  auto const lower = std::max<double>( k + 1, c * k * ceil_log( k, std::max<std::size_t>( n, 2 ) ) );
  for ( auto q = next_prime( static_cast<std::uint64_t>( std::ceil( lower ) ) ); q <= q_cap; q = next_prime( q + 1 ) )
  {
    auto const qq = static_cast<std::uint32_t>( q );
    if ( reed_solomon_capacity( qq, k, target_m ) >= target_m )
    {
      return build_reed_solomon( qq, k, target_m );
    }
  }
  throw std::invalid_argument( "no prime up to " + std::to_string( q_cap ) + " gives " + std::to_string( target_m ) +
                               " sets" );
}

struct CoverFreeCheck
{
  bool pass = true;
  std::size_t covered = 0;
  std::vector<std::size_t> covering;
};

/*! \brief Brute force: no set lies inside the union of k-1 others. */
inline CoverFreeCheck check_cover_free( SetFamily const& family, std::size_t k )
{
  CoverFreeCheck result;
  auto const m = family.size();
  if ( k < 2 || m < k )
  {
    return result;
  }
  auto const words = ( family.ground_size + 64 ) / 64;
  std::vector<std::vector<std::uint64_t>> bits( m, std::vector<std::uint64_t>( words, 0 ) );
  for ( std::size_t j = 0; j < m; ++j )
  {
    for ( auto e : family.sets[j] )
    {
      bits[j][e / 64] |= std::uint64_t{ 1 } << ( e % 64 );
    }
  }

  std::vector<std::size_t> others;
  std::vector<std::uint64_t> uni( words );
  std::function<bool( std::size_t, std::size_t )> pick = [&]( std::size_t target, std::size_t from ) -> bool {
    if ( others.size() == k - 1 )
    {
      std::fill( uni.begin(), uni.end(), 0 );
      for ( auto o : others )
      {
        for ( std::size_t w = 0; w < words; ++w )
        {
          uni[w] |= bits[o][w];
        }
      }
      for ( std::size_t w = 0; w < words; ++w )
      {
        if ( bits[target][w] & ~uni[w] )
        {
          return false;
        }
      }
      result = { false, target, others };
      return true;
    }
    for ( std::size_t j = from; j < m; ++j )
    {
      if ( j == target )
      {
        continue;
      }
      others.push_back( j );
      if ( pick( target, j + 1 ) )
      {
        return true;
      }
      others.pop_back();
    }
    return false;
  };

  for ( std::size_t target = 0; target < m; ++target )
  {
    if ( pick( target, 0 ) )
    {
      break;
    }
  }
  return result;
}

inline std::size_t choose2( std::size_t n ) { return n * ( n - ( n > 0 ) ) / 2; }

/*! \brief The first m 2-subsets of [ell] in lexicographic order. */
inline SetFamily build_sperner_pairs( std::size_t m, std::uint32_t ell )
{
  if ( choose2( ell ) < m )
  {
    throw std::invalid_argument( "ell = " + std::to_string( ell ) + " has fewer than " + std::to_string( m ) +
                                 " pairs" );
  }
  SetFamily family{ ell, {} };
  family.sets.reserve( m );
  for ( std::uint32_t a = 1; a <= ell && family.size() < m; ++a )
  {
    for ( std::uint32_t b = a + 1; b <= ell && family.size() < m; ++b )
    {
      family.sets.push_back( { a, b } );
    }
  }
  return family;
}

} // namespace cardcnf
