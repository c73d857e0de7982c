#pragma once

#include "amo.hpp"
#include "set_families.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace cardcnf
{

namespace detail
{

inline std::uint64_t ipow( std::uint64_t base, std::size_t e )
{
  std::uint64_t r = 1;
  while ( e-- )
  {
    r *= base;
  }
  return r;
}

/* smallest p with p^e >= n */
inline std::uint64_t ceil_root( std::uint64_t n, std::size_t e )
{
  auto p = static_cast<std::uint64_t>( std::pow( static_cast<double>( n ), 1.0 / static_cast<double>( e ) ) );
  p = std::max<std::uint64_t>( p, 1 );
  while ( ipow( p, e ) < n )
  {
    ++p;
  }
  while ( p > 1 && ipow( p - 1, e ) >= n )
  {
    --p;
  }
  return p;
}

/* largest p with p^e <= n */
inline std::uint64_t floor_root( std::uint64_t n, std::size_t e )
{
  auto p = ceil_root( n, e );
  while ( p > 0 && ipow( p, e ) > n )
  {
    --p;
  }
  return p;
}

inline void check_bound( std::size_t n, std::size_t k )
{
  if ( k < 1 || k >= n )
  {
    throw std::invalid_argument( "bound k = " + std::to_string( k ) + " must satisfy 1 <= k < n = " +
                                 std::to_string( n ) );
  }
}

} // namespace detail

/* ---------------------------------------------------------------- */
/* sequential counter                                               */
/* ---------------------------------------------------------------- */

inline std::size_t sequential_clauses( std::size_t n, std::size_t k )
{
  return n <= k ? 0 : 2 * n * k + n - 3 * k - 1;
}

inline std::size_t sequential_aux( std::size_t n, std::size_t k ) { return n <= k ? 0 : k * ( n - 1 ); }

/*! \brief Sinz's LTseq counter; s[i][j] means "at least j+1 of the first i+1 literals are true". */
inline void add_sequential_amk( CnfFormula& f, LitSpan x, std::size_t k )
{
  auto const n = x.size();
  if ( n <= k )
  {
    return;
  }
  if ( k == 0 )
  {
    for ( auto l : x )
    {
      f.add_clause( { ~l } );
    }
    return;
  }
  std::vector<Lit> prev( k ), cur( k );
  for ( std::size_t j = 0; j < k; ++j )
  {
    prev[j] = pos( f.new_var() );
  }
  f.add_clause( { ~x[0], prev[0] } );
  for ( std::size_t j = 1; j < k; ++j )
  {
    f.add_clause( { ~prev[j] } );
  }
  for ( std::size_t i = 1; i + 1 < n; ++i )
  {
    for ( std::size_t j = 0; j < k; ++j )
    {
      cur[j] = pos( f.new_var() );
    }
    f.add_clause( { ~x[i], cur[0] } );
    f.add_clause( { ~prev[0], cur[0] } );
    for ( std::size_t j = 1; j < k; ++j )
    {
      f.add_clause( { ~x[i], ~prev[j - 1], cur[j] } );
      f.add_clause( { ~prev[j], cur[j] } );
    }
    f.add_clause( { ~x[i], ~prev[k - 1] } );
    std::swap( prev, cur );
  }
  f.add_clause( { ~x[n - 1], ~prev[k - 1] } );
}

/*! \brief One clause per (k+1)-subset. */
inline void add_direct_amk( CnfFormula& f, LitSpan x, std::size_t k )
{
  auto const n = x.size();
  if ( n <= k )
  {
    return;
  }
  std::vector<std::size_t> idx( k + 1 );
  std::iota( idx.begin(), idx.end(), 0 );
  std::vector<Lit> clause( k + 1 );
  while ( true )
  {
    for ( std::size_t i = 0; i <= k; ++i )
    {
      clause[i] = ~x[idx[i]];
    }
    f.add_clause( clause );
    std::size_t i = k + 1;
    while ( i > 0 && idx[i - 1] == n - ( k + 1 ) + ( i - 1 ) )
    {
      --i;
    }
    if ( i == 0 )
    {
      break;
    }
    ++idx[i - 1];
    for ( auto j = i; j <= k; ++j )
    {
      idx[j] = idx[j - 1] + 1;
    }
  }
}

/* ---------------------------------------------------------------- */
/* generalized product                                              */
/* ---------------------------------------------------------------- */

struct GpOptions
{
  enum class Base
  {
    sequential,
    direct
  };
  /* subproblems of at most this many literals use the base encoding; 0 means (k+1)^(k+1) */
  std::size_t base_threshold = 0;
  Base base = Base::sequential;
};

namespace detail
{

/* index of tuple t (base p, coordinate 0 least significant) with coordinate d removed */
inline std::uint64_t drop_coordinate( std::uint64_t t, std::uint64_t p, std::size_t d )
{
  auto const low_mod = ipow( p, d );
  return t % low_mod + ( t / ( low_mod * p ) ) * low_mod;
}

/* rod variables of one face: key -> literal, allocated in key order for used keys */
struct Face
{
  std::vector<std::uint32_t> slot;
  std::vector<Lit> rods;
};

inline std::vector<Face> make_faces( CnfFormula& f, std::size_t n, std::uint64_t p, std::size_t dims )
{
  auto const face_cells = ipow( p, dims - 1 );
  std::vector<Face> faces( dims );
  for ( std::size_t d = 0; d < dims; ++d )
  {
    auto& face = faces[d];
    face.slot.assign( face_cells, std::numeric_limits<std::uint32_t>::max() );
    for ( std::uint64_t t = 0; t < n; ++t )
    {
      face.slot[drop_coordinate( t, p, d )] = 0;
    }
    for ( std::uint64_t key = 0; key < face_cells; ++key )
    {
      if ( face.slot[key] == 0 )
      {
        face.slot[key] = static_cast<std::uint32_t>( face.rods.size() );
        face.rods.push_back( pos( f.new_var() ) );
      }
    }
  }
  return faces;
}

} // namespace detail

inline void add_gp_amk( CnfFormula& f, LitSpan x, std::size_t k, GpOptions const& opt = {} )
{
  auto const n = x.size();
  if ( n <= k )
  {
    return;
  }
  auto const dims = k + 1;
  auto const threshold = opt.base_threshold ? opt.base_threshold : detail::ipow( dims, dims );
  auto base = [&]() {
    if ( opt.base == GpOptions::Base::direct )
    {
      add_direct_amk( f, x, k );
    }
    else
    {
      add_sequential_amk( f, x, k );
    }
  };
  if ( n <= threshold )
  {
    base();
    return;
  }
  auto const p = detail::ceil_root( n, dims );
  /* a face as large as the input would not shrink the problem */
  for ( std::size_t d = 0; d < dims; ++d )
  {
    std::vector<bool> used( detail::ipow( p, k ), false );
    std::size_t count = 0;
    for ( std::uint64_t t = 0; t < n; ++t )
    {
      auto const key = detail::drop_coordinate( t, p, d );
      count += !used[key];
      used[key] = true;
    }
    if ( count >= n )
    {
      base();
      return;
    }
  }
  auto const faces = detail::make_faces( f, n, p, dims );
  for ( std::uint64_t t = 0; t < n; ++t )
  {
    for ( std::size_t d = 0; d < dims; ++d )
    {
      auto const& face = faces[d];
      f.add_clause( { ~x[t], face.rods[face.slot[detail::drop_coordinate( t, p, d )]] } );
    }
  }
  for ( auto const& face : faces )
  {
    add_gp_amk( f, face.rods, k, opt );
  }
}

/* ---------------------------------------------------------------- */
/* disjunctive generalized product                                  */
/* ---------------------------------------------------------------- */

inline void add_dgp_amk( CnfFormula& f, LitSpan x, std::size_t k )
{
  auto const n = x.size();
  if ( n <= k )
  {
    return;
  }
  if ( n <= detail::ipow( k + 1, k ) )
  {
    add_sequential_amk( f, x, k );
    return;
  }
  auto const dims = k + 1;
  auto const p = detail::ceil_root( n, dims );
  auto const faces = detail::make_faces( f, n, p, dims );
  std::vector<Lit> w( dims );
  for ( std::size_t d = 1; d < dims; ++d )
  {
    w[d] = pos( f.new_var() );
  }

  std::vector<Lit> clause;
  for ( std::uint64_t t = 0; t < n; ++t )
  {
    auto const& f0 = faces[0];
    f.add_clause( { ~x[t], f0.rods[f0.slot[detail::drop_coordinate( t, p, 0 )]] } );
  }
  for ( std::uint64_t t = 0; t < n; ++t )
  {
    clause = { ~x[t] };
    for ( std::size_t d = 1; d < dims; ++d )
    {
      auto const& face = faces[d];
      clause.push_back( face.rods[face.slot[detail::drop_coordinate( t, p, d )]] );
    }
    f.add_clause( clause );
  }
  for ( std::size_t d = 1; d < dims; ++d )
  {
    add_sequential_amk( f, faces[d].rods, k );
  }
  /* face-0 rods agreeing off original coordinate d (rod coordinate d-1) */
  auto const& f0 = faces[0];
  for ( std::size_t d = 1; d < dims; ++d )
  {
    std::vector<std::vector<Lit>> groups( detail::ipow( p, k - 1 ) );
    for ( std::uint64_t key = 0; key < f0.slot.size(); ++key )
    {
      if ( f0.slot[key] != std::numeric_limits<std::uint32_t>::max() )
      {
        groups[detail::drop_coordinate( key, p, d - 1 )].push_back( f0.rods[f0.slot[key]] );
      }
    }
    for ( auto const& g : groups )
    {
      add_product_amo( f, g, ~w[d] );
    }
  }
  add_product_amo( f, std::span<const Lit>( w ).subspan( 1 ) );
  for ( std::size_t d = 1; d < dims; ++d )
  {
    for ( auto a : faces[d].rods )
    {
      f.add_clause( { ~a, w[d] } );
    }
  }
}

/* ---------------------------------------------------------------- */
/* grid compression                                                 */
/* ---------------------------------------------------------------- */

/*! \brief Shape of the grids M (rows x m) and L (rows x ell) plus the column hash family. */
struct GridCompressionParams
{
  std::size_t m = 0;
  std::uint32_t ell = 0;
  SetFamily family;

  std::size_t rows( std::size_t n ) const { return ( n + m - 1 ) / m; }
};

inline void validate( GridCompressionParams const& params, std::size_t n, std::size_t k )
{
  auto fail = []( std::string const& why ) { throw std::invalid_argument( "invalid grid parameters: " + why ); };
  if ( !( k < params.ell && params.ell < params.m && params.m < n ) )
  {
    fail( "need k < ell < m < n, got k=" + std::to_string( k ) + " ell=" + std::to_string( params.ell ) +
          " m=" + std::to_string( params.m ) + " n=" + std::to_string( n ) );
  }
  if ( params.family.size() != params.m )
  {
    fail( "family has " + std::to_string( params.family.size() ) + " sets, expected m" );
  }
  if ( params.family.ground_size > params.ell || !params.family.valid() )
  {
    fail( "family sets must be nonempty subsets of [ell]" );
  }
}

/*! \brief Per-element degree and first occurrence of a family; index 0 unused. */
struct FamilyProfile
{
  static constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> degree;
  std::vector<std::size_t> first;
};

inline FamilyProfile profile_of( SetFamily const& family, std::uint32_t ell )
{
  FamilyProfile pr{ std::vector<std::size_t>( ell + 1, 0 ), std::vector<std::size_t>( ell + 1, FamilyProfile::absent ) };
  for ( std::size_t j = 0; j < family.size(); ++j )
  {
    for ( auto e : family.sets[j] )
    {
      ++pr.degree[e];
      pr.first[e] = std::min( pr.first[e], j );
    }
  }
  return pr;
}

/* profile of build_sperner_pairs(m, ell) without building it */
inline FamilyProfile sperner_pairs_profile( std::size_t m, std::uint32_t ell )
{
  FamilyProfile pr{ std::vector<std::size_t>( ell + 1, 0 ), std::vector<std::size_t>( ell + 1, FamilyProfile::absent ) };
  std::vector<std::ptrdiff_t> diff( ell + 2, 0 );
  std::size_t left = m;
  for ( std::uint32_t a = 1; a < ell && left > 0; ++a )
  {
    auto const r = std::min<std::size_t>( left, ell - a );
    pr.degree[a] += r;
    diff[a + 1] += 1;
    diff[a + 1 + r] -= 1;
    left -= r;
  }
  std::ptrdiff_t run = 0;
  for ( std::uint32_t e = 1; e <= ell; ++e )
  {
    run += diff[e];
    pr.degree[e] += static_cast<std::size_t>( run );
  }
  if ( m > 0 )
  {
    pr.first[1] = 0;
  }
  for ( std::uint32_t e = 2; e <= ell; ++e )
  {
    if ( e - 2 < m )
    {
      pr.first[e] = e - 2;
    }
  }
  return pr;
}

/* profile of build_reed_solomon(q, k, m) without building it */
inline FamilyProfile reed_solomon_profile( std::uint32_t q, std::size_t k, std::size_t m )
{
  std::uint32_t const ell = q * q;
  FamilyProfile pr{ std::vector<std::size_t>( ell + 1, 0 ), std::vector<std::size_t>( ell + 1, FamilyProfile::absent ) };
  auto const degree = ( q + k - 2 ) / ( k - 1 );
  auto const blocks = m / q;
  auto const rem = m % q;
  /* coefficients of the polynomial with index blocks*q; its constant term is 0 */
  std::vector<std::uint32_t> coeffs( degree, 0 );
  for ( std::size_t i = 1, b = blocks; i < degree && b > 0; ++i, b /= q )
  {
    coeffs[i] = static_cast<std::uint32_t>( b % q );
  }
  PrimeField field( q );
  for ( std::uint32_t x = 0; x < q; ++x )
  {
    auto const g = field.eval( coeffs, x );
    for ( std::uint32_t y = 0; y < q; ++y )
    {
      auto const e = x * q + y + 1;
      pr.degree[e] = blocks + ( ( y + q - g ) % q < rem ? 1 : 0 );
      if ( y < m )
      {
        pr.first[e] = y;
      }
    }
  }
  return pr;
}

struct GridCount
{
  std::size_t clauses = 0;
  std::size_t aux = 0;
};

namespace detail
{

inline std::size_t rows_of_element( FamilyProfile const& pr, std::uint32_t e, std::size_t n, std::size_t m )
{
  if ( pr.first[e] == FamilyProfile::absent )
  {
    return 0;
  }
  auto const rows = ( n + m - 1 ) / m;
  auto const full_cols = n - ( rows - 1 ) * m;
  return pr.first[e] < full_cols ? rows : rows - 1;
}

} // namespace detail

/*! \brief Exact clause and auxiliary counts of add_dgc_amk for the given shape. */
inline GridCount predict_dgc( std::size_t n, std::size_t k, std::size_t m, std::uint32_t ell, FamilyProfile const& pr )
{
  std::size_t cells = 0, overloaded = 0;
  GridCount c;
  for ( std::uint32_t e = 1; e <= ell; ++e )
  {
    auto const r = detail::rows_of_element( pr, e, n, m );
    cells += r;
    if ( pr.degree[e] >= 2 )
    {
      ++overloaded;
      c.clauses += product_amo_clauses( pr.degree[e] ) + r;
      c.aux += product_amo_aux( pr.degree[e] );
    }
  }
  c.clauses += sequential_clauses( cells, k ) + 2 * n;
  c.aux += cells + m + overloaded + sequential_aux( cells, k );
  return c;
}

namespace detail
{

/* L cells in row-major order; index[e] is the base of element e's column */
struct LGrid
{
  std::size_t rows = 0;
  std::vector<std::size_t> height;
  std::vector<std::vector<Lit>> cell; /* cell[e][i] */
  std::vector<Lit> all;
};

inline LGrid make_l_grid( CnfFormula& f, std::size_t n, GridCompressionParams const& params )
{
  LGrid g;
  g.rows = params.rows( n );
  auto const pr = profile_of( params.family, params.ell );
  g.height.assign( params.ell + 1, 0 );
  g.cell.assign( params.ell + 1, {} );
  for ( std::uint32_t e = 1; e <= params.ell; ++e )
  {
    g.height[e] = rows_of_element( pr, e, n, params.m );
  }
  for ( std::size_t i = 0; i < g.rows; ++i )
  {
    for ( std::uint32_t e = 1; e <= params.ell; ++e )
    {
      if ( i < g.height[e] )
      {
        g.cell[e].push_back( pos( f.new_var() ) );
        g.all.push_back( g.cell[e].back() );
      }
    }
  }
  return g;
}

} // namespace detail

/*! \brief Grid compression with disjunctive copying and overload indicators. */
inline void add_dgc_amk( CnfFormula& f, LitSpan x, std::size_t k, GridCompressionParams const& params )
{
  auto const n = x.size();
  validate( params, n, k );
  auto const m = params.m;
  auto const L = detail::make_l_grid( f, n, params );
  auto const c = positive_literals( f.new_vars( m ) );

  std::vector<std::vector<Lit>> columns_of( params.ell + 1 );
  for ( std::size_t j = 0; j < m; ++j )
  {
    for ( auto e : params.family.sets[j] )
    {
      columns_of[e].push_back( c[j] );
    }
  }
  std::vector<std::optional<Lit>> ov( params.ell + 1 );
  for ( std::uint32_t e = 1; e <= params.ell; ++e )
  {
    if ( columns_of[e].size() >= 2 )
    {
      ov[e] = pos( f.new_var() );
    }
  }

  add_sequential_amk( f, L.all, k );
  for ( std::size_t t = 0; t < n; ++t )
  {
    f.add_clause( { ~x[t], c[t % m] } );
  }
  std::vector<Lit> clause;
  for ( std::size_t t = 0; t < n; ++t )
  {
    auto const i = t / m;
    clause = { ~x[t] };
    for ( auto e : params.family.sets[t % m] )
    {
      clause.push_back( L.cell[e][i] );
    }
    f.add_clause( clause );
  }
  for ( std::uint32_t e = 1; e <= params.ell; ++e )
  {
    if ( ov[e] )
    {
      add_product_amo( f, columns_of[e], *ov[e] );
    }
  }
  for ( std::uint32_t e = 1; e <= params.ell; ++e )
  {
    if ( ov[e] )
    {
      for ( auto l : L.cell[e] )
      {
        f.add_clause( { ~l, ~*ov[e] } );
      }
    }
  }
}

/*! \brief Grid compression with explicit copy variables and a column matching. */
inline void add_gc_amk( CnfFormula& f, LitSpan x, std::size_t k, GridCompressionParams const& params )
{
  auto const n = x.size();
  validate( params, n, k );
  auto const m = params.m;
  auto const L = detail::make_l_grid( f, n, params );
  auto const c = positive_literals( f.new_vars( m ) );
  std::vector<std::vector<Lit>> copy( m );
  std::vector<std::vector<Lit>> copies_into( params.ell + 1 );
  for ( std::size_t j = 0; j < m; ++j )
  {
    for ( auto e : params.family.sets[j] )
    {
      copy[j].push_back( pos( f.new_var() ) );
      copies_into[e].push_back( copy[j].back() );
    }
  }

  add_sequential_amk( f, L.all, k );
  for ( std::size_t t = 0; t < n; ++t )
  {
    f.add_clause( { ~x[t], c[t % m] } );
  }
  for ( std::size_t t = 0; t < n; ++t )
  {
    auto const i = t / m, j = t % m;
    auto const& h = params.family.sets[j];
    for ( std::size_t s = 0; s < h.size(); ++s )
    {
      f.add_clause( { ~x[t], ~copy[j][s], L.cell[h[s]][i] } );
    }
  }
  std::vector<Lit> clause;
  for ( std::size_t j = 0; j < m; ++j )
  {
    clause = { ~c[j] };
    clause.insert( clause.end(), copy[j].begin(), copy[j].end() );
    f.add_clause( clause );
  }
  for ( std::uint32_t e = 1; e <= params.ell; ++e )
  {
    add_product_amo( f, copies_into[e] );
  }
}

/* ---------------------------------------------------------------- */
/* parameter selection                                              */
/* ---------------------------------------------------------------- */

struct HallParams
{
  std::optional<GridCompressionParams> params;
  std::size_t attempts = 0;
  std::uint64_t seed = 0;
};

/*! \brief m = floor((k n^2)^(1/3)), ell = factor * ceil((k^2 n)^(1/3)), Hall family by seeded sampling.

  Each ell gets 32 samples; after that ell doubles. Empty when no ell < m works.
*/
inline HallParams gc_params( std::size_t n, std::size_t k, std::uint64_t seed, std::size_t ell_factor = 1 )
{
  HallParams out;
  auto const m = detail::floor_root( static_cast<std::uint64_t>( k ) * n * n, 3 );
  auto ell = std::max<std::uint64_t>( 3, ell_factor * detail::ceil_root( static_cast<std::uint64_t>( k ) * k * n, 3 ) );
  for ( ; k < ell && ell < m && m < n; ell *= 2 )
  {
    for ( std::size_t attempt = 0; attempt < 32; ++attempt )
    {
      ++out.attempts;
      auto const s = seed + 0x9e3779b97f4a7c15ull * out.attempts;
      if ( auto fam = sample_hall_family( m, static_cast<std::uint32_t>( ell ), k, s ) )
      {
        out.params = GridCompressionParams{ m, static_cast<std::uint32_t>( ell ), std::move( *fam ) };
        out.seed = s;
        return out;
      }
    }
  }
  return out;
}

struct GridSearchResult
{
  std::optional<GridCompressionParams> params;
  GridCount predicted;
  std::size_t evaluated = 0;
};

namespace detail
{

inline std::vector<std::size_t> m_candidates( std::size_t lo, std::size_t hi )
{
  std::vector<std::size_t> out;
  if ( lo > hi )
  {
    return out;
  }
  if ( hi - lo <= 3000 )
  {
    for ( auto m = lo; m <= hi; ++m )
    {
      out.push_back( m );
    }
    return out;
  }
  for ( double m = static_cast<double>( lo ); m <= static_cast<double>( hi ); m *= 1.015 )
  {
    auto const v = static_cast<std::size_t>( m );
    if ( out.empty() || out.back() != v )
    {
      out.push_back( v );
    }
  }
  if ( out.back() != hi )
  {
    out.push_back( hi );
  }
  return out;
}

} // namespace detail

/*! \brief Searches (m, ell) for the smallest disjunctive grid compression.

  For k <= 2 the family is the first m pairs of [ell]; for k >= 3 it is a
  Reed-Solomon family over a prime q <= 64 with ell = q^2. Ties go to the
  smaller m, then the smaller ell.
*/
inline GridSearchResult grid_search_params( std::size_t n, std::size_t k )
{
  GridSearchResult best;
  std::size_t best_m = 0;
  std::uint32_t best_ell = 0, best_q = 0;
  auto consider = [&]( std::size_t m, std::uint32_t ell, std::uint32_t q, GridCount const& c ) {
    ++best.evaluated;
    if ( best_m == 0 || std::tie( c.clauses, m, ell ) < std::tie( best.predicted.clauses, best_m, best_ell ) )
    {
      best.predicted = c;
      best_m = m;
      best_ell = ell;
      best_q = q;
    }
  };

  if ( k <= 2 )
  {
    auto const kk = static_cast<double>( std::max<std::size_t>( k, 2 ) );
    auto const target = std::sqrt( n * kk * std::log( static_cast<double>( n ) ) / std::log( kk ) );
    auto const lo = std::max<std::size_t>( k + 2, static_cast<std::size_t>( target / 8 ) );
    auto const hi = std::min<std::size_t>( n - 1, static_cast<std::size_t>( target * 8 ) + 1 );
    for ( auto m : detail::m_candidates( lo, hi ) )
    {
      std::uint32_t ell_min = static_cast<std::uint32_t>( k + 1 );
      while ( choose2( ell_min ) < m )
      {
        ++ell_min;
      }
      auto const ell_max = std::min<std::size_t>( m - 1, ell_min + std::max<std::uint32_t>( 6, ell_min / 6 ) );
      for ( std::uint32_t ell = ell_min; ell <= ell_max; ++ell )
      {
        consider( m, ell, 0, predict_dgc( n, k, m, ell, sperner_pairs_profile( m, ell ) ) );
      }
    }
  }
  else
  {
    for ( std::uint32_t q = 2; q <= 64; q = static_cast<std::uint32_t>( next_prime( q + 1 ) ) )
    {
      std::uint32_t const ell = q * q;
      if ( ell <= k )
      {
        continue;
      }
      auto const hi = std::min<std::size_t>( n - 1, reed_solomon_capacity( q, k, n ) );
      for ( auto m : detail::m_candidates( ell + 1, hi ) )
      {
        consider( m, ell, q, predict_dgc( n, k, m, ell, reed_solomon_profile( q, k, m ) ) );
      }
    }
  }

  if ( best_m != 0 )
  {
    auto fam = k <= 2 ? build_sperner_pairs( best_m, best_ell ) : build_reed_solomon( best_q, k, best_m );
    best.params = GridCompressionParams{ best_m, best_ell, std::move( fam ) };
  }
  return best;
}

/* ---------------------------------------------------------------- */
/* Encoding wrappers                                                */
/* ---------------------------------------------------------------- */

inline Encoding encode_sequential( std::span<const Var> xs, std::size_t k )
{
  detail::check_distinct( xs );
  detail::check_bound( xs.size(), k );
  auto e = make_encoding( xs, "seqcounter", Constraint::amk( static_cast<std::uint32_t>( k ) ) );
  add_sequential_amk( e.formula, positive_literals( xs ), k );
  return e;
}

inline Encoding encode_generalized_product( std::span<const Var> xs, std::size_t k, GpOptions const& opt = {} )
{
  detail::check_distinct( xs );
  detail::check_bound( xs.size(), k );
  auto e = make_encoding( xs, "gp", Constraint::amk( static_cast<std::uint32_t>( k ) ) );
  add_gp_amk( e.formula, positive_literals( xs ), k, opt );
  e.params["p"] = std::to_string( detail::ceil_root( xs.size(), k + 1 ) );
  if ( opt.base_threshold )
  {
    e.params["base_threshold"] = std::to_string( opt.base_threshold );
  }
  if ( opt.base == GpOptions::Base::direct )
  {
    e.params["base"] = "direct";
  }
  return e;
}

inline Encoding encode_disjunctive_generalized_product( std::span<const Var> xs, std::size_t k )
{
  detail::check_distinct( xs );
  detail::check_bound( xs.size(), k );
  auto e = make_encoding( xs, "dgp", Constraint::amk( static_cast<std::uint32_t>( k ) ) );
  add_dgp_amk( e.formula, positive_literals( xs ), k );
  if ( xs.size() <= detail::ipow( k + 1, k ) )
  {
    e.params["fallback"] = "seqcounter";
  }
  else
  {
    e.params["p"] = std::to_string( detail::ceil_root( xs.size(), k + 1 ) );
  }
  return e;
}

namespace detail
{

inline void record_grid( Params& params, GridCompressionParams const& g, std::size_t n )
{
  params["m"] = std::to_string( g.m );
  params["ell"] = std::to_string( g.ell );
  params["rows"] = std::to_string( g.rows( n ) );
}

} // namespace detail

/* `given` overrides the computed shape, e.g. for small test grids */
inline Encoding encode_grid_compression( std::span<const Var> xs, std::size_t k, std::uint64_t seed = 1,
                                         std::size_t ell_factor = 1,
                                         std::optional<GridCompressionParams> const& given = std::nullopt )
{
  detail::check_distinct( xs );
  detail::check_bound( xs.size(), k );
  auto e = make_encoding( xs, "gc", Constraint::amk( static_cast<std::uint32_t>( k ) ) );
  auto const lits = positive_literals( xs );
  std::optional<GridCompressionParams> params = given;
  e.params["seed"] = std::to_string( seed );
  if ( !params )
  {
    auto hall = gc_params( xs.size(), k, seed, ell_factor );
    params = std::move( hall.params );
    e.params["hall_attempts"] = std::to_string( hall.attempts );
  }
  if ( !params )
  {
    e.params["fallback"] = "seqcounter";
    add_sequential_amk( e.formula, lits, k );
    return e;
  }
  detail::record_grid( e.params, *params, xs.size() );
  add_gc_amk( e.formula, lits, k, *params );
  return e;
}

inline Encoding encode_disjunctive_grid_compression( std::span<const Var> xs, std::size_t k,
                                                     std::optional<GridCompressionParams> const& given = std::nullopt )
{
  detail::check_distinct( xs );
  detail::check_bound( xs.size(), k );
  auto e = make_encoding( xs, "dgc", Constraint::amk( static_cast<std::uint32_t>( k ) ) );
  auto const lits = positive_literals( xs );
  auto params = given;
  if ( !params )
  {
    params = grid_search_params( xs.size(), k ).params;
  }
  if ( !params )
  {
    e.params["fallback"] = "seqcounter";
    add_sequential_amk( e.formula, lits, k );
    return e;
  }
  detail::record_grid( e.params, *params, xs.size() );
  e.params["family"] = k <= 2 ? "pairs" : "reed-solomon";
  add_dgc_amk( e.formula, lits, k, *params );
  return e;
}

/* AMK through DGC with searched parameters, sequential counter when no shape fits */
inline void add_dgc_amk_searched( CnfFormula& f, LitSpan x, std::size_t k, Params* record = nullptr )
{
  if ( x.size() <= k )
  {
    return;
  }
  auto const search = grid_search_params( x.size(), k );
  if ( !search.params )
  {
    add_sequential_amk( f, x, k );
    if ( record )
    {
      ( *record )["amk_fallback"] = "seqcounter";
    }
    return;
  }
  if ( record )
  {
    ( *record )["amk_m"] = std::to_string( search.params->m );
    ( *record )["amk_ell"] = std::to_string( search.params->ell );
  }
  add_dgc_amk( f, x, k, *search.params );
}

} // namespace cardcnf
