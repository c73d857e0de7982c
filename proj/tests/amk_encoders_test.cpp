#include "oracle.hpp"

#include <cardcnf/amk.hpp>
#include <cardcnf/amo.hpp>
#include <cardcnf/dimacs.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

using namespace cardcnf;

namespace
{

void expect_amk( Encoding const& e, std::size_t k )
{
  EXPECT_EQ( oracle::first_disagreement( e.formula, e.formula.input_vars(), oracle::at_most( k ) ), -1 )
      << e.encoder_name << " n=" << e.num_inputs() << " k=" << k;
}

/* clauses that mention an input variable, bucketed by clause size */
std::map<std::size_t, std::size_t> input_clause_sizes( Encoding const& e )
{
  std::set<std::uint32_t> inputs;
  for ( auto v : e.formula.input_vars() )
  {
    inputs.insert( v.index );
  }
  std::map<std::size_t, std::size_t> out;
  for ( std::size_t i = 0; i < e.num_clauses(); ++i )
  {
    auto const c = e.formula.clause( i );
    if ( std::any_of( c.begin(), c.end(), [&]( Lit l ) { return inputs.count( l.var().index ); } ) )
    {
      ++out[c.size()];
    }
  }
  return out;
}

std::size_t input_clauses( Encoding const& e )
{
  std::size_t total = 0;
  for ( auto [size, count] : input_clause_sizes( e ) )
  {
    total += count;
  }
  return total;
}

/* the twelve lines of the affine plane over F_3; two lines share at most one point */
SetFamily affine_plane_lines( std::size_t m )
{
  SetFamily fam{ 9, {} };
  auto point = []( std::uint32_t x, std::uint32_t y ) { return x * 3 + y + 1; };
  for ( std::uint32_t a = 0; a < 3; ++a )
  {
    for ( std::uint32_t b = 0; b < 3; ++b )
    {
      std::vector<std::uint32_t> s;
      for ( std::uint32_t x = 0; x < 3; ++x )
      {
        s.push_back( point( x, ( a * x + b ) % 3 ) );
      }
      std::sort( s.begin(), s.end() );
      fam.sets.push_back( s );
    }
  }
  for ( std::uint32_t x = 0; x < 3; ++x )
  {
    fam.sets.push_back( { point( x, 0 ), point( x, 1 ), point( x, 2 ) } );
  }
  fam.sets.resize( m );
  return fam;
}

GridCompressionParams pairs_params( std::size_t m, std::uint32_t ell )
{
  return { m, ell, build_sperner_pairs( m, ell ) };
}

GridCompressionParams hall_params( std::size_t m, std::uint32_t ell, std::size_t k )
{
  for ( std::uint64_t seed = 1;; ++seed )
  {
    if ( auto fam = sample_hall_family( m, ell, k, seed ) )
    {
      return { m, ell, *fam };
    }
  }
}

double within( double got, double expected ) { return std::abs( got - expected ) / expected; }

} // namespace

TEST( Sequential, ClosedFormsAcrossSweep )
{
  for ( std::size_t n : { 10u, 1000u, 100000u } )
  {
    for ( std::size_t k : { 1u, 2u, 3u } )
    {
      auto const e = encode_sequential( first_vars( n ), k );
      EXPECT_EQ( e.num_clauses(), 2 * n * k + n - 3 * k - 1 ) << n << " " << k;
      EXPECT_EQ( e.num_aux(), k * ( n - 1 ) ) << n << " " << k;
    }
  }
}

TEST( Sequential, CountsAtTwoHundredThousand )
{
  auto const e = encode_sequential( first_vars( 200000 ), 2 );
  EXPECT_EQ( e.num_clauses(), 999993u );
  EXPECT_EQ( e.num_aux(), 399998u );
}

TEST( Sequential, FiveInputsBoundTwo )
{
  auto const e = encode_sequential( first_vars( 5 ), 2 );
  EXPECT_EQ( e.num_clauses(), 18u );
  expect_amk( e, 2 );
}

TEST( Sequential, NotAllTrue ) { expect_amk( encode_sequential( first_vars( 4 ), 3 ), 3 ); }

TEST( Sequential, RejectsBoundOutOfRange )
{
  EXPECT_THROW( encode_sequential( first_vars( 4 ), 4 ), std::invalid_argument );
  EXPECT_THROW( encode_sequential( first_vars( 4 ), 0 ), std::invalid_argument );
  EXPECT_THROW( encode_generalized_product( first_vars( 3 ), 5 ), std::invalid_argument );
  EXPECT_THROW( encode_disjunctive_grid_compression( first_vars( 3 ), 3 ), std::invalid_argument );
}

TEST( AllEncoders, ExhaustiveUpToTwelve )
{
  for ( std::size_t k = 1; k <= 3; ++k )
  {
    for ( std::size_t n = k + 1; n <= 12; ++n )
    {
      auto const xs = first_vars( n );
      expect_amk( encode_sequential( xs, k ), k );
      expect_amk( encode_generalized_product( xs, k ), k );
      expect_amk( encode_generalized_product( xs, k, { 1, GpOptions::Base::direct } ), k );
      expect_amk( encode_disjunctive_generalized_product( xs, k ), k );
      expect_amk( encode_grid_compression( xs, k ), k );
      expect_amk( encode_disjunctive_grid_compression( xs, k ), k );
    }
  }
}

TEST( AllEncoders, BoundOneAgreesWithAmo )
{
  for ( std::size_t n = 2; n <= 10; ++n )
  {
    auto const xs = first_vars( n );
    expect_amk( encode_generalized_product( xs, 1, { 1, GpOptions::Base::direct } ), 1 );
    expect_amk( encode_disjunctive_generalized_product( xs, 1 ), 1 );
    if ( n >= 6 )
    {
      expect_amk( encode_grid_compression( xs, 1, 1, 1, hall_params( 5, 4, 1 ) ), 1 );
      expect_amk( encode_disjunctive_grid_compression( xs, 1, pairs_params( 5, 4 ) ), 1 );
    }
  }
}

TEST( GeneralizedProduct, ExactCubeProjections )
{
  /* base threshold 26 keeps the faces (9 rods) in the base case */
  auto const e = encode_generalized_product( first_vars( 27 ), 2, { 26, GpOptions::Base::sequential } );
  EXPECT_EQ( input_clauses( e ), 81u );
  EXPECT_EQ( input_clause_sizes( e ).at( 2 ), 81u );
  expect_amk( encode_generalized_product( first_vars( 10 ), 2, { 9, GpOptions::Base::sequential } ), 2 );
}

TEST( GeneralizedProduct, ForcedRecursionStillCorrect )
{
  for ( std::size_t k = 1; k <= 3; ++k )
  {
    for ( std::size_t n = k + 1; n <= 12; ++n )
    {
      expect_amk( encode_generalized_product( first_vars( n ), k, { k + 1, GpOptions::Base::sequential } ), k );
    }
  }
}

TEST( DisjunctiveProduct, ExactCubeProjections )
{
  for ( std::size_t p : { 3u, 5u, 8u } )
  {
    auto const n = p * p * p;
    auto const e = encode_disjunctive_generalized_product( first_vars( n ), 2 );
    EXPECT_EQ( input_clauses( e ), 2 * n ) << p;
  }
}

TEST( DisjunctiveProduct, SmallInputsDelegateToCounter )
{
  auto const e = encode_disjunctive_generalized_product( first_vars( 9 ), 2 );
  EXPECT_EQ( e.num_clauses(), sequential_clauses( 9, 2 ) );
  EXPECT_EQ( e.params.at( "fallback" ), "seqcounter" );
}

TEST( GridCompression, TestScaleParamsExhaustive )
{
  expect_amk( encode_grid_compression( first_vars( 10 ), 2, 1, 1, hall_params( 8, 6, 2 ) ), 2 );
  expect_amk( encode_grid_compression( first_vars( 12 ), 2, 1, 1, hall_params( 8, 6, 2 ) ), 2 );
  expect_amk( encode_grid_compression( first_vars( 12 ), 1, 1, 1, hall_params( 8, 4, 1 ) ), 1 );
  expect_amk( encode_grid_compression( first_vars( 12 ), 3, 1, 1, hall_params( 10, 7, 3 ) ), 3 );
}

TEST( GridCompression, OccupancyAndCopyGroupSizes )
{
  for ( std::size_t n : { 12u, 100u, 1000u, 10000u } )
  {
    auto const e = encode_grid_compression( first_vars( n ), 2 );
    ASSERT_FALSE( e.params.count( "fallback" ) ) << n;
    auto const sizes = input_clause_sizes( e );
    EXPECT_EQ( sizes.at( 2 ), n );
    EXPECT_EQ( sizes.at( 3 ), 3 * n );
    EXPECT_EQ( sizes.size(), 2u );
  }
}

TEST( GridCompression, TotalWithinLinearShape )
{
  for ( std::size_t n : { 10000u, 100000u } )
  {
    for ( std::size_t k : { 1u, 2u, 3u } )
    {
      auto const c = encode_grid_compression( first_vars( n ), k ).num_clauses();
      EXPECT_LE( static_cast<double>( c ), 4.0 * n + 20 * std::cbrt( static_cast<double>( k * n * n ) ) )
          << n << " " << k;
    }
  }
}

TEST( GridCompression, RejectsInvalidParams )
{
  EXPECT_THROW( encode_grid_compression( first_vars( 12 ), 2, 1, 1, pairs_params( 3, 3 ) ), std::invalid_argument );
  EXPECT_THROW( encode_disjunctive_grid_compression( first_vars( 12 ), 2, pairs_params( 12, 6 ) ),
                std::invalid_argument );
}

TEST( DisjunctiveGridCompression, TestScaleParamsExhaustive )
{
  expect_amk( encode_disjunctive_grid_compression( first_vars( 12 ), 2, pairs_params( 10, 5 ) ), 2 );
  expect_amk( encode_disjunctive_grid_compression( first_vars( 12 ), 1, pairs_params( 6, 4 ) ), 1 );
  expect_amk( encode_disjunctive_grid_compression( first_vars( 12 ), 3, GridCompressionParams{ 10, 9, affine_plane_lines( 10 ) } ), 3 );
  expect_amk( encode_disjunctive_grid_compression( first_vars( 12 ), 3, GridCompressionParams{ 11, 9, affine_plane_lines( 11 ) } ), 3 );
  expect_amk( encode_disjunctive_grid_compression( first_vars( 11 ), 2, pairs_params( 7, 5 ) ), 2 );
}

TEST( DisjunctiveGridCompression, CopyClausesPerInput )
{
  auto const n = 5000u;
  auto const e = encode_disjunctive_grid_compression( first_vars( n ), 2 );
  auto const sizes = input_clause_sizes( e );
  EXPECT_EQ( sizes.at( 2 ), n );
  EXPECT_EQ( sizes.at( 3 ), n );
}

TEST( DisjunctiveGridCompression, OverheadShrinksRelativeToInputs )
{
  for ( std::size_t k : { 1u, 2u, 3u } )
  {
    double previous = 1e9;
    for ( std::size_t n : { 10000u, 100000u, 1000000u } )
    {
      auto const c = static_cast<double>( encode_disjunctive_grid_compression( first_vars( n ), k ).num_clauses() );
      auto const overhead = ( c - 2.0 * n ) / n;
      EXPECT_LT( overhead, previous ) << n << " " << k;
      previous = overhead;
    }
  }
}

TEST( ReferenceCounts, BoundTwoAtTwoHundredThousand )
{
  auto const xs = first_vars( 200000 );
  auto const gp = encode_generalized_product( xs, 2 );
  auto const dgp = encode_disjunctive_generalized_product( xs, 2 );
  auto const dgc = encode_disjunctive_grid_compression( xs, 2 );
  EXPECT_LT( within( gp.num_clauses(), 654117 ), 0.10 );
  EXPECT_LT( within( dgp.num_clauses(), 462163 ), 0.10 );
  EXPECT_LT( within( dgc.num_clauses(), 448996 ), 0.10 );
  EXPECT_LE( dgc.num_clauses(), 460000u );
  EXPECT_LT( dgc.num_clauses(), dgp.num_clauses() );
  EXPECT_LT( dgp.num_clauses(), gp.num_clauses() );
  EXPECT_LT( gp.num_clauses(), sequential_clauses( 200000, 2 ) );
}

TEST( GridSearch, SmallInstanceInvariant )
{
  auto const r = grid_search_params( 100, 2 );
  ASSERT_TRUE( r.params );
  EXPECT_LT( 2u, r.params->ell );
  EXPECT_LT( r.params->ell, r.params->m );
  EXPECT_LT( r.params->m, 100u );
  EXPECT_EQ( r.params->family.size(), r.params->m );
}

TEST( GridSearch, PredictionMatchesEmittedCount )
{
  for ( std::size_t n : { 500u, 20000u } )
  {
    for ( std::size_t k : { 1u, 2u, 3u } )
    {
      auto const r = grid_search_params( n, k );
      ASSERT_TRUE( r.params ) << n << " " << k;
      auto const e = encode_disjunctive_grid_compression( first_vars( n ), k, r.params );
      EXPECT_EQ( e.num_clauses(), r.predicted.clauses ) << n << " " << k;
      EXPECT_EQ( e.num_aux(), r.predicted.aux ) << n << " " << k;
    }
  }
}

TEST( GridSearch, NoLatticePointBeatsChoice )
{
  auto const n = 3000u, k = 2u;
  auto const r = grid_search_params( n, k );
  ASSERT_TRUE( r.params );
  for ( std::size_t m = 20; m < 400; m += 7 )
  {
    std::uint32_t ell = 3;
    while ( choose2( ell ) < m )
    {
      ++ell;
    }
    for ( auto l = ell; l < ell + 3; ++l )
    {
      auto const c = encode_disjunctive_grid_compression( first_vars( n ), k, pairs_params( m, l ) ).num_clauses();
      EXPECT_LE( static_cast<double>( r.predicted.clauses ), 1.02 * c ) << m << " " << l;
    }
  }
}

TEST( Determinism, RepeatedCallsAgree )
{
  auto const xs = first_vars( 3000 );
  for ( std::size_t k : { 1u, 2u, 3u } )
  {
    EXPECT_EQ( to_dimacs( encode_grid_compression( xs, k, 5 ) ), to_dimacs( encode_grid_compression( xs, k, 5 ) ) );
    EXPECT_EQ( encode_disjunctive_grid_compression( xs, k ).num_clauses(),
               encode_disjunctive_grid_compression( xs, k ).num_clauses() );
    EXPECT_EQ( encode_generalized_product( xs, k ).num_clauses(), encode_generalized_product( xs, k ).num_clauses() );
  }
}
