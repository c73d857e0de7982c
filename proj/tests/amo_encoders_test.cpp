#include "oracle.hpp"

#include <cardcnf/amo_graph.hpp>
#include <cardcnf/verify.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace cardcnf;

namespace
{

void expect_amo( Encoding const& e )
{
  EXPECT_EQ( oracle::first_disagreement( e.formula, e.formula.input_vars(), oracle::at_most( 1 ) ), -1 )
      << e.encoder_name << " n=" << e.num_inputs();
}

} // namespace

TEST( Direct, SingleInputHasNoClauses )
{
  EXPECT_EQ( encode_direct( first_vars( 1 ) ).num_clauses(), 0u );
}

TEST( Direct, FourInputsSixClauses )
{
  auto const e = encode_direct( first_vars( 4 ) );
  EXPECT_EQ( e.num_clauses(), 6u );
  EXPECT_EQ( e.num_aux(), 0u );
}

TEST( Direct, TenInputsMatchesOracle ) { expect_amo( encode_direct( first_vars( 10 ) ) ); }

TEST( Direct, RejectsRepeatedInputs )
{
  std::vector<Var> xs = { Var{ 1 }, Var{ 1 } };
  EXPECT_THROW( encode_direct( xs ), std::invalid_argument );
}

TEST( Product, SmallInputsUseDirectBase )
{
  auto const e = encode_product( first_vars( 4 ) );
  EXPECT_EQ( e.num_clauses(), 6u );
  EXPECT_EQ( e.num_aux(), 0u );
}

TEST( Product, NineInputsCount )
{
  auto const e = encode_product( first_vars( 9 ) );
  EXPECT_EQ( e.num_clauses(), 24u );
  EXPECT_EQ( e.num_aux(), 6u );
}

TEST( Product, ClosedRecursionMatchesEmitted )
{
  for ( std::size_t n = 1; n <= 300; ++n )
  {
    auto const e = encode_product( first_vars( n ) );
    ASSERT_EQ( e.num_clauses(), product_amo_clauses( n ) ) << n;
    ASSERT_EQ( e.num_aux(), product_amo_aux( n ) ) << n;
  }
}

TEST( Product, MatchesOracleUpToTwelve )
{
  for ( std::size_t n = 1; n <= 12; ++n )
  {
    expect_amo( encode_product( first_vars( n ) ) );
  }
}

TEST( Product, SevenEquivalentToDirect )
{
  auto const direct = encode_direct( first_vars( 7 ) );
  auto const product = encode_product( first_vars( 7 ) );
  for ( std::uint32_t mask = 0; mask < 128; ++mask )
  {
    std::vector<std::pair<std::uint32_t, bool>> fixed;
    for ( std::uint32_t i = 0; i < 7; ++i )
    {
      fixed.emplace_back( i + 1, ( mask >> i ) & 1 );
    }
    ASSERT_EQ( oracle::satisfiable_with( direct.formula, fixed ), oracle::satisfiable_with( product.formula, fixed ) );
  }
}

TEST( AmoPrime, IndicatorFreeWhenAllInputsFalse )
{
  auto const xs = first_vars( 9 );
  auto const e = encode_amo_prime( xs, Var{ 10 } );
  std::vector<std::pair<std::uint32_t, bool>> fixed;
  for ( std::uint32_t i = 1; i <= 9; ++i )
  {
    fixed.emplace_back( i, false );
  }
  auto with_z = fixed, without_z = fixed;
  with_z.emplace_back( 10, true );
  without_z.emplace_back( 10, false );
  EXPECT_TRUE( oracle::satisfiable_with( e.formula, with_z ) );
  EXPECT_TRUE( oracle::satisfiable_with( e.formula, without_z ) );
}

TEST( AmoPrime, InputPropagatesIndicator )
{
  auto const e = encode_amo_prime( first_vars( 9 ), Var{ 10 } );
  auto const r = unit_propagate( e.formula, PartialAssignment{ { Var{ 3 }, true } } );
  EXPECT_FALSE( r.conflict );
  EXPECT_TRUE( r.derived.satisfies( pos( Var{ 10 } ) ) );
}

TEST( AmoPrime, SixteenInputsTruthTable )
{
  auto const e = encode_amo_prime( first_vars( 16 ), Var{ 17 } );
  auto const pred = []( std::vector<bool> const& bits ) {
    auto const w = std::count( bits.begin(), bits.end() - 1, true );
    return w == 0 || ( w == 1 && bits.back() );
  };
  EXPECT_EQ( oracle::first_disagreement( e.formula, e.formula.input_vars(), pred ), -1 );
}

TEST( AmoPrime, IndicatorMustNotBeAnInput )
{
  EXPECT_THROW( encode_amo_prime( first_vars( 4 ), Var{ 2 } ), std::invalid_argument );
}

TEST( Multipartite, FiveInputsMatchOracle ) { expect_amo( encode_multipartite( first_vars( 5 ) ) ); }

TEST( Multipartite, MatchesOracleUpToTwelve )
{
  for ( std::size_t n = 1; n <= 12; ++n )
  {
    expect_amo( encode_multipartite( first_vars( n ) ) );
  }
}

TEST( Multipartite, ParametersFollowRoots )
{
  auto const mp = multipartite_params( 10000 );
  EXPECT_EQ( mp.p, static_cast<std::size_t>( std::ceil( std::pow( 10000.0, 1.0 / 6 ) ) ) + 1 );
  EXPECT_EQ( mp.q, static_cast<std::size_t>( std::ceil( std::sqrt( 2.0 ) * std::cbrt( 10000.0 ) ) ) );
}

TEST( Multipartite, TwoHundredIsPropagationComplete )
{
  auto const r = check_propagation_complete( encode_multipartite( first_vars( 200 ) ) );
  EXPECT_TRUE( r.pass );
  EXPECT_TRUE( r.single_literal_complete );
}

TEST( Multipartite, CountWithinShape )
{
  for ( std::size_t n : { 1000u, 10000u, 100000u } )
  {
    auto const c = encode_multipartite( first_vars( n ) ).num_clauses();
    auto const bound = 2.0 * n + 2 * std::sqrt( 2.0 * n ) + 30 * std::cbrt( static_cast<double>( n ) );
    EXPECT_LE( static_cast<double>( c ), bound ) << n;
  }
}

TEST( Clique, SixInputsMatchOracle ) { expect_amo( encode_clique( first_vars( 6 ) ) ); }

TEST( Clique, MatchesOracleUpToTwelve )
{
  for ( std::size_t n = 1; n <= 12; ++n )
  {
    expect_amo( encode_clique( first_vars( n ) ) );
  }
}

TEST( Clique, VertexCountRecorded )
{
  EXPECT_EQ( encode_clique( first_vars( 50 ) ).params.at( "p" ), "11" );
}

TEST( Clique, EndpointClausesThenAmtOnVertices )
{
  auto const n = 10000u;
  auto const e = encode_clique( first_vars( n ) );
  auto const p = clique_vertices( n );
  CnfFormula amt;
  auto const vs = amt.new_vars( p, Role::input );
  add_dgc_amk_searched( amt, positive_literals( vs ), 2 );
  EXPECT_EQ( e.num_clauses(), 2 * n + amt.num_clauses() );
}

/* measured: the disjunctive grid compression on ~sqrt(2n) vertices costs more than the multipartite lower-order terms */
TEST( Clique, CountsAgainstMultipartiteAtTenThousand )
{
  auto const n = 10000u;
  EXPECT_EQ( encode_clique( first_vars( n ) ).num_clauses(), 20685u );
  EXPECT_EQ( encode_multipartite( first_vars( n ) ).num_clauses(), 20620u );
}
