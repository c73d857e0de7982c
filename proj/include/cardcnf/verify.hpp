#pragma once

#include "cnf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace cardcnf
{

struct PropagationResult
{
  PartialAssignment derived;
  bool conflict = false;
};

struct SolveResult
{
  bool sat = false;
  PartialAssignment model;
};

/*! \brief DPLL with two watched literals.

  Branches on the lowest-index unassigned variable, false first, and
  backtracks chronologically. The clause database is built once; every
  query starts again from the root level.
*/
class Solver
{
public:
  explicit Solver( CnfFormula const& f ) : num_vars_( f.max_var().index ), value_( num_vars_ + 1, -1 )
  {
    watches_.resize( 2 * ( num_vars_ + 1 ) );
    for ( std::size_t i = 0; i < f.num_clauses(); ++i )
    {
      auto const c = f.clause( i );
      if ( c.empty() )
      {
        ok_ = false;
        continue;
      }
      if ( c.size() == 1 )
      {
        units_.push_back( c[0] );
        continue;
      }
      auto const start = static_cast<std::uint32_t>( lits_.size() );
      lits_.insert( lits_.end(), c.begin(), c.end() );
      clauses_.push_back( { start, static_cast<std::uint32_t>( c.size() ) } );
      auto const id = static_cast<std::uint32_t>( clauses_.size() - 1 );
      watches_[c[0].slot()].push_back( id );
      watches_[c[1].slot()].push_back( id );
    }
    for ( auto u : units_ )
    {
      if ( !enqueue( u ) )
      {
        ok_ = false;
      }
    }
    if ( ok_ && !propagate() )
    {
      ok_ = false;
    }
    root_size_ = trail_.size();
  }

  /* unit propagation from the root level plus `assumptions` */
  PropagationResult propagate( PartialAssignment const& assumptions )
  {
    PropagationResult r;
    r.conflict = !start( assumptions );
    for ( auto l : trail_ )
    {
      r.derived.set( l );
    }
    reset();
    return r;
  }

  SolveResult solve( PartialAssignment const& assumptions = {} )
  {
    SolveResult r;
    bool conflict = !start( assumptions );
    std::size_t const base = levels_.size();
    while ( true )
    {
      if ( conflict )
      {
        while ( levels_.size() > base && flipped_.back() )
        {
          pop_level();
        }
        if ( levels_.size() == base )
        {
          break;
        }
        auto const decision = trail_[levels_.back()];
        pop_level();
        push_level( true );
        enqueue( ~decision );
        conflict = !propagate();
        continue;
      }
      while ( next_var_ <= num_vars_ && value_[next_var_] >= 0 )
      {
        ++next_var_;
      }
      if ( next_var_ > num_vars_ )
      {
        r.sat = true;
        for ( std::uint32_t v = 1; v <= num_vars_; ++v )
        {
          r.model.set( Var{ v }, value_[v] == 1 );
        }
        break;
      }
      push_level( false );
      enqueue( neg( Var{ next_var_ } ) );
      conflict = !propagate();
    }
    reset();
    return r;
  }

  std::uint64_t decisions() const { return decisions_; }

private:
  struct ClauseRef
  {
    std::uint32_t start;
    std::uint32_t size;
  };

  std::int8_t value( Lit l ) const
  {
    auto const v = value_[l.var().index];
    return v < 0 ? -1 : static_cast<std::int8_t>( v == ( l.positive() ? 1 : 0 ) );
  }

  bool enqueue( Lit l )
  {
    auto const v = value( l );
    if ( v >= 0 )
    {
      return v == 1;
    }
    value_[l.var().index] = l.positive() ? 1 : 0;
    trail_.push_back( l );
    return true;
  }

  bool propagate()
  {
    while ( head_ < trail_.size() )
    {
      auto const p = trail_[head_++];
      auto const false_lit = ~p;
      auto& ws = watches_[false_lit.slot()];
      std::size_t i = 0, j = 0;
      bool conflict = false;
      while ( i < ws.size() )
      {
        auto const id = ws[i++];
        auto const& cr = clauses_[id];
        Lit* c = lits_.data() + cr.start;
        if ( c[0] == false_lit )
        {
          std::swap( c[0], c[1] );
        }
        if ( value( c[0] ) == 1 )
        {
          ws[j++] = id;
          continue;
        }
        bool moved = false;
        for ( std::uint32_t t = 2; t < cr.size; ++t )
        {
          if ( value( c[t] ) != 0 )
          {
            std::swap( c[1], c[t] );
            watches_[c[1].slot()].push_back( id );
            moved = true;
            break;
          }
        }
        if ( moved )
        {
          continue;
        }
        ws[j++] = id;
        if ( !enqueue( c[0] ) )
        {
          conflict = true;
          while ( i < ws.size() )
          {
            ws[j++] = ws[i++];
          }
        }
      }
      ws.resize( j );
      if ( conflict )
      {
        return false;
      }
    }
    return true;
  }

  void push_level( bool flipped )
  {
    levels_.push_back( trail_.size() );
    flipped_.push_back( flipped );
    ++decisions_;
  }

  void pop_level()
  {
    auto const mark = levels_.back();
    while ( trail_.size() > mark )
    {
      auto const v = trail_.back().var().index;
      value_[v] = -1;
      next_var_ = std::min( next_var_, v );
      trail_.pop_back();
    }
    head_ = std::min( head_, trail_.size() );
    levels_.pop_back();
    flipped_.pop_back();
  }

  /* assumption level on top of the root; false on conflict */
  bool start( PartialAssignment const& assumptions )
  {
    if ( !ok_ )
    {
      return false;
    }
    levels_.push_back( trail_.size() );
    flipped_.push_back( true );
    for ( auto l : assumptions.literals() )
    {
      if ( l.var().index > num_vars_ )
      {
        continue;
      }
      if ( !enqueue( l ) )
      {
        return false;
      }
    }
    return propagate();
  }

  void reset()
  {
    while ( !levels_.empty() )
    {
      pop_level();
    }
    head_ = root_size_;
    next_var_ = 1;
  }

  std::uint32_t num_vars_;
  std::vector<std::int8_t> value_;
  std::vector<Lit> lits_;
  std::vector<ClauseRef> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Lit> units_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> levels_;
  std::vector<bool> flipped_;
  std::size_t head_ = 0;
  std::size_t root_size_ = 0;
  std::uint32_t next_var_ = 1;
  std::uint64_t decisions_ = 0;
  bool ok_ = true;
};

inline PropagationResult unit_propagate( CnfFormula const& f, PartialAssignment const& assumptions )
{
  return Solver( f ).propagate( assumptions );
}

inline SolveResult solve( CnfFormula const& f, PartialAssignment const& assumptions = {} )
{
  return Solver( f ).solve( assumptions );
}

/* ---------------------------------------------------------------- */
/* semantic equivalence                                             */
/* ---------------------------------------------------------------- */

enum class Strategy
{
  exhaustive,
  weight_window
};

class strategy_infeasible : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct Mismatch
{
  std::vector<bool> assignment;
  bool expected = false;
  bool got = false;
};

struct EquivalenceReport
{
  std::size_t checked_assignments = 0;
  std::optional<Mismatch> first_mismatch;

  bool pass() const { return !first_mismatch.has_value(); }
};

struct CheckOptions
{
  std::uint64_t seed = 1;
  std::size_t random_samples = 1000;
  std::size_t max_assignments = 2'000'000;
};

namespace detail
{

inline void for_each_subset_up_to( std::size_t n, std::size_t w, std::function<bool( std::vector<bool> const& )> const& fn )
{
  std::vector<bool> tau( n, false );
  std::vector<std::size_t> idx;
  if ( !fn( tau ) )
  {
    return;
  }
  for ( std::size_t size = 1; size <= std::min( w, n ); ++size )
  {
    idx.resize( size );
    std::iota( idx.begin(), idx.end(), 0 );
    while ( true )
    {
      std::fill( tau.begin(), tau.end(), false );
      for ( auto i : idx )
      {
        tau[i] = true;
      }
      if ( !fn( tau ) )
      {
        return;
      }
      std::size_t i = size;
      while ( i > 0 && idx[i - 1] == n - size + ( i - 1 ) )
      {
        --i;
      }
      if ( i == 0 )
      {
        break;
      }
      ++idx[i - 1];
      for ( auto j = i; j < size; ++j )
      {
        idx[j] = idx[j - 1] + 1;
      }
    }
  }
}

inline std::size_t binomial_sum( std::size_t n, std::size_t w, std::size_t cap )
{
  std::size_t total = 0;
  double term = 1;
  for ( std::size_t i = 0; i <= std::min( w, n ); ++i )
  {
    if ( i > 0 )
    {
      term = term * static_cast<double>( n - i + 1 ) / static_cast<double>( i );
    }
    if ( term + static_cast<double>( total ) > static_cast<double>( cap ) )
    {
      return cap + 1;
    }
    total += static_cast<std::size_t>( term + 0.5 );
  }
  return total;
}

} // namespace detail

/*! \brief Compares SAT(phi|tau) with the constraint for input assignments tau. */
inline EquivalenceReport check_encoding_correct( Encoding const& e, Strategy strategy, CheckOptions const& opt = {} )
{
  if ( e.constraint.kind == Constraint::Kind::unknown )
  {
    throw std::invalid_argument( "encoding does not declare its constraint" );
  }
  auto const& inputs = e.formula.input_vars();
  auto const n = inputs.size();
  Solver solver( e.formula );
  EquivalenceReport report;
  PartialAssignment tau;

  auto check = [&]( std::vector<bool> const& t ) {
    for ( std::size_t i = 0; i < n; ++i )
    {
      tau.set( inputs[i], t[i] );
    }
    bool const expected = constraint_holds( e.constraint, t );
    bool const got = solver.solve( tau ).sat;
    ++report.checked_assignments;
    if ( expected != got )
    {
      report.first_mismatch = Mismatch{ t, expected, got };
      return false;
    }
    return true;
  };

  if ( strategy == Strategy::exhaustive )
  {
    if ( n > 20 )
    {
      throw strategy_infeasible( "exhaustive check needs n <= 20, got n = " + std::to_string( n ) );
    }
    std::vector<bool> t( n );
    for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << n ); ++code )
    {
      for ( std::size_t i = 0; i < n; ++i )
      {
        t[i] = ( code >> ( n - 1 - i ) ) & 1;
      }
      if ( !check( t ) )
      {
        break;
      }
    }
    return report;
  }

  auto const window = e.constraint.bound() + ( e.constraint.kind == Constraint::Kind::amo_indicator ? 3 : 2 );
  if ( detail::binomial_sum( n, window, opt.max_assignments ) + opt.random_samples + 1 > opt.max_assignments )
  {
    throw strategy_infeasible( "weight window needs more than " + std::to_string( opt.max_assignments ) +
                               " assignments at n = " + std::to_string( n ) );
  }
  detail::for_each_subset_up_to( n, window, check );
  if ( report.first_mismatch )
  {
    return report;
  }
  if ( !check( std::vector<bool>( n, true ) ) )
  {
    return report;
  }
  if ( n > window )
  {
    std::mt19937_64 rng( opt.seed );
    std::uniform_int_distribution<std::size_t> weight( window + 1, n );
    std::vector<std::size_t> perm( n );
    std::iota( perm.begin(), perm.end(), 0 );
    for ( std::size_t s = 0; s < opt.random_samples; ++s )
    {
      auto const w = weight( rng );
      std::shuffle( perm.begin(), perm.end(), rng );
      std::vector<bool> t( n, false );
      for ( std::size_t i = 0; i < w; ++i )
      {
        t[perm[i]] = true;
      }
      if ( !check( t ) )
      {
        break;
      }
    }
  }
  return report;
}

/* ---------------------------------------------------------------- */
/* propagation completeness                                         */
/* ---------------------------------------------------------------- */

struct PcReport
{
  bool pass = true;
  /* true when every query was exhaustive for the AMO single-literal pattern */
  bool single_literal_complete = false;
  std::size_t queries = 0;
  std::vector<Lit> prefix;
  /* entailed literal that unit propagation missed; empty means a conflict was expected */
  std::optional<Lit> missing;
};

struct PcOptions
{
  std::uint64_t seed = 1;
  std::size_t random_prefixes = 500;
};

/*! \brief Looks for input literals entailed by phi and a partial input assignment but not derived by unit propagation. */
inline PcReport check_propagation_complete( Encoding const& e, PcOptions const& opt = {} )
{
  auto const kind = e.constraint.kind;
  if ( kind != Constraint::Kind::amo && kind != Constraint::Kind::amk )
  {
    throw std::invalid_argument( "propagation check supports AMO and AMK constraints" );
  }
  auto const k = e.constraint.bound();
  auto const& inputs = e.formula.input_vars();
  auto const n = inputs.size();
  Solver solver( e.formula );
  PcReport report;

  /* entailment of a prefix with `positives` true inputs follows from the constraint alone */
  auto query = [&]( std::vector<Lit> const& prefix ) {
    ++report.queries;
    PartialAssignment tau;
    std::size_t positives = 0;
    for ( auto l : prefix )
    {
      tau.set( l );
      positives += l.positive();
    }
    auto const r = solver.propagate( tau );
    if ( r.conflict || positives < k )
    {
      return true;
    }
    if ( positives > k )
    {
      report = { false, false, report.queries, prefix, std::nullopt };
      return false;
    }
    for ( auto v : inputs )
    {
      if ( !tau.get( v ) && !r.derived.falsifies( pos( v ) ) )
      {
        report = { false, false, report.queries, prefix, neg( v ) };
        return false;
      }
    }
    return true;
  };

  if ( k == 1 )
  {
    for ( auto v : inputs )
    {
      if ( !query( { pos( v ) } ) )
      {
        return report;
      }
    }
    report.single_literal_complete = true;
  }

  std::mt19937_64 rng( opt.seed );
  std::vector<std::size_t> perm( n );
  std::iota( perm.begin(), perm.end(), 0 );
  for ( std::size_t s = 0; s < opt.random_prefixes && n > 0; ++s )
  {
    auto const positives = std::uniform_int_distribution<std::size_t>( 1, std::min<std::size_t>( k + 1, n ) )( rng );
    auto const negatives =
        std::uniform_int_distribution<std::size_t>( 0, std::min<std::size_t>( n - positives, 2 * k + 2 ) )( rng );
    std::shuffle( perm.begin(), perm.end(), rng );
    std::vector<Lit> prefix;
    for ( std::size_t i = 0; i < positives + negatives; ++i )
    {
      prefix.push_back( Lit( inputs[perm[i]], i < positives ) );
    }
    if ( !query( prefix ) )
    {
      report.single_literal_complete = false;
      return report;
    }
  }
  return report;
}

/* ---------------------------------------------------------------- */
/* distinguishing coordinate                                        */
/* ---------------------------------------------------------------- */

/*! \brief A 1-based coordinate whose removal keeps the given distinct points distinct. */
inline std::size_t distinguishing_coordinate( std::vector<std::vector<std::uint64_t>> const& points )
{
  if ( points.empty() )
  {
    return 1;
  }
  auto const dims = points.front().size();
  for ( std::size_t d = 0; d < dims; ++d )
  {
    std::vector<std::vector<std::uint64_t>> projected;
    for ( auto const& pt : points )
    {
      auto copy = pt;
      copy.erase( copy.begin() + static_cast<std::ptrdiff_t>( d ) );
      projected.push_back( std::move( copy ) );
    }
    std::sort( projected.begin(), projected.end() );
    if ( std::adjacent_find( projected.begin(), projected.end() ) == projected.end() )
    {
      return d + 1;
    }
  }
  throw std::invalid_argument( "points do not meet the distinguishing-coordinate preconditions" );
}

} // namespace cardcnf
