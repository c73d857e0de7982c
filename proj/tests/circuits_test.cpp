#include <cardcnf/circuits.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace cardcnf;

namespace
{

std::vector<bool> bits_of( std::uint64_t mask, std::size_t n )
{
  std::vector<bool> b( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    b[i] = ( mask >> i ) & 1;
  }
  return b;
}

std::size_t weight( std::vector<bool> const& b ) { return static_cast<std::size_t>( std::count( b.begin(), b.end(), true ) ); }

/* inputs of a chosen weight at random positions, or fully random */
std::vector<bool> random_input( std::mt19937_64& rng, std::size_t n )
{
  std::vector<bool> b( n, false );
  auto const mode = rng() % 5;
  if ( mode == 4 )
  {
    for ( std::size_t i = 0; i < n; ++i )
    {
      b[i] = rng() & 1;
    }
    return b;
  }
  for ( std::size_t placed = 0; placed < mode; )
  {
    auto const i = rng() % n;
    if ( !b[i] )
    {
      b[i] = true;
      ++placed;
    }
  }
  return b;
}

void expect_threshold( Circuit const& c, std::size_t n, std::size_t output, std::size_t t )
{
  for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << n ); ++mask )
  {
    auto const in = bits_of( mask, n );
    ASSERT_EQ( evaluate( c, in )[output], weight( in ) >= t ) << "n=" << n << " mask=" << mask;
  }
}

} // namespace

TEST( Evaluate, LengthMismatchThrows )
{
  EXPECT_THROW( evaluate( build_s2( 3 ), { true } ), std::invalid_argument );
}

TEST( Audit, OrTreeHasNoAnd )
{
  Circuit c;
  c.inputs = 4;
  auto const a = c.add( GateOp::OR, 1, 2 );
  auto const b = c.add( GateOp::OR, 3, 4 );
  c.outputs = { c.add( GateOp::OR, a, b ) };
  auto const r = audit( c );
  EXPECT_EQ( r.gate_count, 3u );
  EXPECT_TRUE( r.is_monotone_structure );
  EXPECT_EQ( r.max_and_depth, 0u );
}

TEST( Audit, ChainedAndsCounted )
{
  Circuit c;
  c.inputs = 3;
  auto const a = c.add( GateOp::AND, 1, 2 );
  auto const o = c.add( GateOp::OR, a, 3 );
  c.outputs = { c.add( GateOp::AND, o, 1 ) };
  EXPECT_EQ( audit( c ).max_and_depth, 2u );
}

TEST( Audit, ForwardReferenceIsNotMonotoneStructure )
{
  Circuit c;
  c.inputs = 2;
  c.gates.push_back( { GateOp::AND, 1, 9 } );
  c.outputs = { 3 };
  EXPECT_FALSE( audit( c ).is_monotone_structure );
}

TEST( Dump, OneGatePerLine )
{
  Circuit c;
  c.inputs = 2;
  c.outputs = { c.add( GateOp::AND, 1, 2 ) };
  std::ostringstream os;
  dump( c, os );
  EXPECT_EQ( os.str(), "g3 = AND w1 w2\nout w3\n" );
}

TEST( S2, SingleInput )
{
  auto const c = build_s2( 1 );
  ASSERT_EQ( c.outputs.size(), 2u );
  EXPECT_EQ( c.outputs[0], c.input( 0 ) );
  EXPECT_EQ( c.outputs[1], Circuit::false_wire );
  EXPECT_EQ( evaluate( c, { true } ), ( std::vector<bool>{ true, false } ) );
}

TEST( S2, ExhaustiveUpToFourteen )
{
  for ( std::size_t n = 1; n <= 14; ++n )
  {
    auto const c = build_s2( n );
    expect_threshold( c, n, 0, 1 );
    expect_threshold( c, n, 1, 2 );
    EXPECT_EQ( audit( c ).gate_count, c.gates.size() );
  }
}

TEST( S2, LinearGateCount )
{
  EXPECT_LE( build_s2( 100 ).gates.size(), 2u * 100 + 12 * 10 );
  for ( std::size_t n : { 1000u, 10000u, 100000u } )
  {
    EXPECT_LE( static_cast<double>( build_s2( n ).gates.size() ), 2.0 * n + 12 * std::sqrt( n ) ) << n;
  }
}

TEST( T3, SmallInputsAreConstantFalseBelowThree )
{
  auto const c = build_t3( 2 );
  for ( std::uint64_t mask = 0; mask < 4; ++mask )
  {
    EXPECT_FALSE( evaluate( c, bits_of( mask, 2 ) )[0] );
  }
  auto const three = build_t3( 3 );
  expect_threshold( three, 3, 0, 3 );
}

TEST( T3, ExhaustiveUpToFourteen )
{
  for ( std::size_t n = 1; n <= 14; ++n )
  {
    expect_threshold( build_t3( n ), n, 0, 3 );
  }
}

TEST( T3, GateCountShape )
{
  for ( std::size_t n : { 1000u, 10000u } )
  {
    EXPECT_LE( static_cast<double>( build_t3( n ).gates.size() ), 3.0 * n + 20 * std::pow( n, 2.0 / 3 ) ) << n;
  }
}

TEST( T3, RandomAtScale )
{
  std::mt19937_64 rng( 7 );
  auto const n = 3000u;
  auto const c = build_t3( n );
  for ( int i = 0; i < 3000; ++i )
  {
    auto in = random_input( rng, n );
    if ( rng() % 3 == 0 )
    {
      in[rng() % n] = true;
    }
    ASSERT_EQ( evaluate( c, in )[0], weight( in ) >= 3 );
  }
}

TEST( T2Product, ExhaustiveUpToFourteen )
{
  for ( std::size_t n = 1; n <= 14; ++n )
  {
    expect_threshold( build_t2_product( n ), n, 0, 2 );
  }
}

TEST( T2Multipartite, ExhaustiveUpToFourteen )
{
  for ( std::size_t n = 1; n <= 14; ++n )
  {
    expect_threshold( build_t2_multipartite( n ), n, 0, 2 );
    expect_threshold( build_t2_multipartite( n, EdgeFill::lexicographic ), n, 0, 2 );
  }
}

TEST( T2Multipartite, RandomAssignmentsAtScale )
{
  std::mt19937_64 rng( 11 );
  for ( std::size_t n : { 100u, 1000u, 10000u } )
  {
    auto const c = build_t2_multipartite( n );
    for ( int i = 0; i < 10000; ++i )
    {
      auto const in = random_input( rng, n );
      ASSERT_EQ( evaluate( c, in )[0], weight( in ) >= 2 ) << n;
    }
  }
}

TEST( T2Multipartite, GateBoundAndBeatsProduct )
{
  for ( std::size_t n : { 1000u, 10000u } )
  {
    auto const gates = build_t2_multipartite( n ).gates.size();
    EXPECT_LE( static_cast<double>( gates ), 2.0 * n + std::sqrt( 2.0 * n ) + 40 * std::cbrt( static_cast<double>( n ) ) ) << n;
    EXPECT_LT( gates, build_t2_product( n ).gates.size() ) << n;
  }
}

TEST( T2Multipartite, NotSingleLevel )
{
  auto const a = audit( build_t2_multipartite( 1000 ) );
  EXPECT_TRUE( a.is_monotone_structure );
  EXPECT_GE( a.max_and_depth, 2u );
}

TEST( T2Multipartite, EdgeCases )
{
  EXPECT_EQ( evaluate( build_t2_multipartite( 1 ), { true } ), std::vector<bool>{ false } );
  EXPECT_EQ( evaluate( build_t2_multipartite( 2 ), { true, true } ), std::vector<bool>{ true } );
}

TEST( PartSizes, CoverAllEdges )
{
  for ( std::size_t n : { 5u, 50u, 1000u, 10000u } )
  {
    auto const p = detail::ceil_root( n, 6 ) + 1;
    auto const q = detail::ceil_root( 8 * n * n, 6 );
    auto const sizes = detail::part_sizes( n, p, q );
    std::size_t edges = 0;
    for ( std::size_t a = 0; a < sizes.size(); ++a )
    {
      EXPECT_LE( sizes[a], q );
      for ( std::size_t b = a + 1; b < sizes.size(); ++b )
      {
        edges += sizes[a] * sizes[b];
      }
    }
    EXPECT_GE( edges, n ) << n;
    EXPECT_TRUE( std::is_sorted( sizes.rbegin(), sizes.rend() ) );
  }
}

TEST( Properties, MonotoneUnderSingleFlips )
{
  std::mt19937_64 rng( 13 );
  std::vector<Circuit> circuits{ build_s2( 300 ), build_t3( 300 ), build_t2_product( 300 ), build_t2_multipartite( 300 ) };
  for ( auto const& c : circuits )
  {
    for ( int i = 0; i < 500; ++i )
    {
      auto in = random_input( rng, 300 );
      auto const before = evaluate( c, in );
      auto const j = rng() % 300;
      if ( in[j] )
      {
        continue;
      }
      in[j] = true;
      auto const after = evaluate( c, in );
      for ( std::size_t o = 0; o < before.size(); ++o )
      {
        ASSERT_TRUE( !before[o] || after[o] );
      }
    }
  }
}

TEST( Properties, DeterministicGateCounts )
{
  for ( std::size_t n : { 17u, 500u, 4096u } )
  {
    EXPECT_EQ( build_t2_multipartite( n ).gates, build_t2_multipartite( n ).gates );
    EXPECT_EQ( build_s2( n ).gates.size(), build_s2( n ).gates.size() );
  }
}
