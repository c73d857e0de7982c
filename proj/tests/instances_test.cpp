#include "oracle.hpp"

#include <cardcnf/dimacs.hpp>
#include <cardcnf/instances.hpp>
#include <cardcnf/registry.hpp>
#include <cardcnf/verify.hpp>

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace cardcnf;

namespace
{

InstanceSpec family_l( std::size_t n, std::size_t k, bool sat, std::uint64_t seed = 1, std::string enc = "seqcounter" )
{
  InstanceSpec s;
  s.family = Family::L;
  s.n = n;
  s.k = k;
  s.satisfiable = sat;
  s.seed = seed;
  s.encoder = std::move( enc );
  return s;
}

InstanceSpec family_m( std::size_t machines, std::size_t k, std::size_t c, std::size_t jobs, std::string enc = "seqcounter" )
{
  InstanceSpec s;
  s.family = Family::M;
  s.machines = machines;
  s.k = k;
  s.capacity = c;
  s.jobs = jobs;
  s.encoder = std::move( enc );
  return s;
}

InstanceSpec family_d( std::size_t n, std::size_t k, std::string enc = "seqcounter" )
{
  InstanceSpec s;
  s.family = Family::D;
  s.n = n;
  s.k = k;
  s.encoder = std::move( enc );
  return s;
}

std::vector<std::string> amk_encoders()
{
  std::vector<std::string> out;
  for ( auto const& info : encoders() )
  {
    if ( !info.amo_only )
    {
      out.emplace_back( info.name );
    }
  }
  return out;
}

/* the instance with one of its trailing positive clauses left out */
CnfFormula without_positive_clause( Instance const& inst, std::size_t which )
{
  auto const& f = inst.encoding.formula;
  CnfFormula out;
  out.new_vars( f.max_var().index );
  auto const first_positive = f.num_clauses() - inst.subsets.size();
  for ( std::size_t i = 0; i < f.num_clauses(); ++i )
  {
    if ( i != first_positive + which )
    {
      out.add_clause( f.clause( i ) );
    }
  }
  return out;
}

} // namespace

TEST( FamilyL, SubsetsDisjointAndSizedTen )
{
  for ( std::uint64_t seed = 1; seed <= 50; ++seed )
  {
    for ( bool sat : { false, true } )
    {
      auto const inst = gen_family_l( family_l( 200, 3, sat, seed ) );
      ASSERT_EQ( inst.subsets.size(), sat ? 3u : 4u );
      std::set<std::uint32_t> seen;
      for ( auto const& s : inst.subsets )
      {
        ASSERT_EQ( s.size(), 10u );
        for ( auto v : s )
        {
          ASSERT_TRUE( seen.insert( v.index ).second ) << seed;
          ASSERT_LE( v.index, 200u );
        }
      }
    }
  }
}

TEST( FamilyL, PositiveClausesMatchSubsets )
{
  auto const inst = gen_family_l( family_l( 100000, 2, false, 9 ) );
  auto const& f = inst.encoding.formula;
  ASSERT_EQ( inst.subsets.size(), 3u );
  for ( std::size_t i = 0; i < 3; ++i )
  {
    auto const c = f.clause( f.num_clauses() - 3 + i );
    ASSERT_EQ( c.size(), 10u );
    std::vector<Var> vars;
    for ( auto l : c )
    {
      EXPECT_TRUE( l.positive() );
      vars.push_back( l.var() );
    }
    EXPECT_EQ( vars, inst.subsets[i] );
  }
  EXPECT_EQ( f.num_clauses(), inst.encoder_clauses + 3 );
  EXPECT_EQ( inst.encoder_clauses, sequential_clauses( 100000, 2 ) );
}

TEST( FamilyL, SmallSatisfiable )
{
  auto const inst = gen_family_l( family_l( 50, 2, true ) );
  EXPECT_TRUE( inst.expected_sat );
  EXPECT_TRUE( solve( inst.encoding.formula ).sat );
}

/* gc is left to the external solver: refuting it needs a matching argument that plain DPLL cannot find quickly */
TEST( FamilyL, StatusesAcrossEncoders )
{
  for ( auto const& enc : amk_encoders() )
  {
    if ( enc == "gc" )
    {
      continue;
    }
    for ( bool sat : { false, true } )
    {
      auto const inst = gen_family_l( family_l( 40, 2, sat, 3, enc ) );
      EXPECT_EQ( solve( inst.encoding.formula ).sat, sat ) << enc;
    }
  }
}

TEST( FamilyL, DroppingAnyPositiveClauseMakesSat )
{
  for ( std::uint64_t seed = 1; seed <= 5; ++seed )
  {
    auto const inst = gen_family_l( family_l( 40, 3, false, seed ) );
    ASSERT_FALSE( solve( inst.encoding.formula ).sat );
    for ( std::size_t i = 0; i < inst.subsets.size(); ++i )
    {
      EXPECT_TRUE( solve( without_positive_clause( inst, i ) ).sat ) << seed << " " << i;
    }
  }
}

TEST( FamilyL, RejectsTooFewVariables )
{
  EXPECT_THROW( gen_family_l( family_l( 29, 2, false ) ), std::invalid_argument );
  EXPECT_NO_THROW( gen_family_l( family_l( 30, 2, false ) ) );
}

TEST( FamilyM, CanonicalPair )
{
  auto const unsat = gen_family_m( family_m( 4, 2, 3, 7 ) );
  auto const sat = gen_family_m( family_m( 4, 2, 3, 6 ) );
  EXPECT_FALSE( unsat.expected_sat );
  EXPECT_TRUE( sat.expected_sat );
  EXPECT_FALSE( solve( unsat.encoding.formula ).sat );
  EXPECT_TRUE( solve( sat.encoding.formula ).sat );
}

TEST( FamilyM, CanonicalPairAcrossEncoders )
{
  for ( auto const& enc : amk_encoders() )
  {
    for ( std::size_t k : { 1u, 2u, 3u } )
    {
      auto const c = 2u;
      EXPECT_TRUE( solve( gen_family_m( family_m( 5, k, c, k * c, enc ) ).encoding.formula ).sat ) << enc << k;
      EXPECT_FALSE( solve( gen_family_m( family_m( 5, k, c, k * c + 1, enc ) ).encoding.formula ).sat ) << enc << k;
    }
  }
}

TEST( FamilyM, VariableCount )
{
  auto const inst = gen_family_m( family_m( 4, 2, 3, 7 ) );
  auto const& f = inst.encoding.formula;
  auto const capacity_aux = 4 * sequential_aux( 7, 3 );
  EXPECT_EQ( f.max_var().index, 4u * 7 + 4 + inst.encoder_aux + capacity_aux );
  EXPECT_EQ( inst.constraint_size, 4u );
}

TEST( FamilyM, OracleAgreesAtTinyScale )
{
  for ( std::size_t T : { 2u, 3u } )
  {
    auto const inst = gen_family_m( family_m( 3, 1, 2, T ) );
    EXPECT_EQ( oracle::satisfiable_with( inst.encoding.formula, {} ), inst.expected_sat ) << T;
  }
}

TEST( FamilyM, RejectsTooFewMachines )
{
  EXPECT_THROW( gen_family_m( family_m( 1, 2, 3, 6 ) ), std::invalid_argument );
}

TEST( FamilyD, SmallIsUnsat )
{
  auto const inst = gen_family_d( family_d( 3, 2 ) );
  EXPECT_FALSE( inst.expected_sat );
  EXPECT_FALSE( solve( inst.encoding.formula ).sat );
  EXPECT_FALSE( oracle::satisfiable_with( inst.encoding.formula, {} ) );
}

TEST( FamilyD, LayeredOutDegrees )
{
  auto const n = 4u, k = 3u;
  auto const inst = gen_family_d( family_d( n, k ) );
  auto const& f = inst.encoding.formula;
  /* 1 + (k-1) n + 1 vertices, all of them inputs to the AMK */
  EXPECT_EQ( inst.constraint_size, 2 + ( k - 1 ) * n );
  std::map<std::size_t, std::size_t> widths;
  for ( std::size_t i = 0; i < 1 + ( k - 1 ) * n; ++i )
  {
    auto const c = f.clause( i );
    ASSERT_FALSE( c[0].positive() );
    widths[c.size() - 1]++;
  }
  /* the sink has no out-clause; the last middle layer points only at it */
  EXPECT_EQ( widths[n], 1u + ( k - 2 ) * n );
  EXPECT_EQ( widths[1], n );
}

TEST( FamilyD, UnsatAcrossEncoders )
{
  for ( auto const& enc : amk_encoders() )
  {
    for ( std::size_t k : { 2u, 3u } )
    {
      EXPECT_FALSE( solve( gen_family_d( family_d( 6, k, enc ) ).encoding.formula ).sat ) << enc << k;
    }
  }
}

TEST( FamilyD, RejectsBoundOne )
{
  EXPECT_THROW( gen_family_d( family_d( 3, 1 ) ), std::invalid_argument );
}

TEST( Instances, DeterministicGivenSeed )
{
  for ( auto const& spec : { family_l( 500, 2, false, 42, "dgc" ), family_m( 6, 2, 3, 7, "gp" ), family_d( 20, 3, "dgp" ) } )
  {
    EXPECT_EQ( to_dimacs( generate( spec ).encoding ), to_dimacs( generate( spec ).encoding ) );
  }
  EXPECT_NE( to_dimacs( generate( family_l( 500, 2, false, 1 ) ).encoding ),
             to_dimacs( generate( family_l( 500, 2, false, 2 ) ).encoding ) );
}

TEST( Instances, DimacsCarriesMetadata )
{
  auto const text = to_dimacs( generate( family_l( 100, 2, false, 7 ) ).encoding );
  EXPECT_NE( text.find( "c family L\n" ), std::string::npos );
  EXPECT_NE( text.find( "c expected UNSAT\n" ), std::string::npos );
  EXPECT_NE( text.find( "c seed 7\n" ), std::string::npos );
  auto const back = read_dimacs( text );
  EXPECT_EQ( back.annotations.at( "expected" ), "UNSAT" );
}

TEST( Instances, FamilyNamesRoundTrip )
{
  for ( auto f : { Family::L, Family::M, Family::D } )
  {
    EXPECT_EQ( parse_family( to_string( f ) ), f );
  }
  EXPECT_THROW( parse_family( "Q" ), std::invalid_argument );
}
