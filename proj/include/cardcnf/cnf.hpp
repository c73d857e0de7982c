#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cardcnf
{

/*! \brief A propositional variable, numbered from 1 as in DIMACS. */
struct Var
{
  std::uint32_t index = 0;

  friend constexpr bool operator==( Var, Var ) = default;
  friend constexpr auto operator<=>( Var, Var ) = default;
};

/*! \brief A literal, stored as its signed DIMACS value. */
class Lit
{
public:
  constexpr Lit() = default;
  constexpr explicit Lit( Var v, bool positive = true )
      : code_( positive ? static_cast<std::int32_t>( v.index ) : -static_cast<std::int32_t>( v.index ) )
  {
  }

  static Lit from_dimacs( std::int32_t value )
  {
    if ( value == 0 )
    {
      throw std::invalid_argument( "literal 0 is not a literal" );
    }
    Lit l;
    l.code_ = value;
    return l;
  }

  constexpr Var var() const { return Var{ static_cast<std::uint32_t>( code_ < 0 ? -code_ : code_ ) }; }
  constexpr bool positive() const { return code_ > 0; }
  constexpr std::int32_t dimacs() const { return code_; }

  /* index into per-literal tables: 2*var + sign */
  constexpr std::size_t slot() const { return 2u * var().index + ( code_ < 0 ? 1u : 0u ); }

  constexpr Lit operator~() const
  {
    Lit l;
    l.code_ = -code_;
    return l;
  }

  friend constexpr bool operator==( Lit, Lit ) = default;

  /* orders by variable, positive before negative */
  friend constexpr bool operator<( Lit a, Lit b )
  {
    auto const va = a.var().index, vb = b.var().index;
    return va != vb ? va < vb : a.code_ > b.code_;
  }

private:
  std::int32_t code_ = 0;
};

inline Lit pos( Var v ) { return Lit( v, true ); }
inline Lit neg( Var v ) { return Lit( v, false ); }

enum class Role : std::uint8_t
{
  none,
  input,
  aux
};

/*! \brief A clause in canonical form: sorted, duplicate-free, never tautological. */
class Clause
{
public:
  Clause() = default;
  explicit Clause( std::span<const Lit> lits ) : lits_( lits.begin(), lits.end() ) { normalize( lits_ ); }
  Clause( std::initializer_list<Lit> lits ) : lits_( lits ) { normalize( lits_ ); }

  std::span<const Lit> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  friend bool operator==( Clause const&, Clause const& ) = default;
  friend bool operator<( Clause const& a, Clause const& b )
  {
    return std::lexicographical_compare( a.lits_.begin(), a.lits_.end(), b.lits_.begin(), b.lits_.end(),
                                         []( Lit x, Lit y ) { return x.dimacs() < y.dimacs(); } );
  }

  /* sorts and deduplicates in place; throws on a clause containing l and ~l */
  static void normalize( std::vector<Lit>& lits )
  {
    std::sort( lits.begin(), lits.end() );
    lits.erase( std::unique( lits.begin(), lits.end() ), lits.end() );
    for ( std::size_t i = 1; i < lits.size(); ++i )
    {
      if ( lits[i].var() == lits[i - 1].var() )
      {
        throw std::logic_error( "tautological clause on variable " + std::to_string( lits[i].var().index ) );
      }
    }
  }

private:
  std::vector<Lit> lits_;
};

/*! \brief Hands out fresh variable ids and remembers each id's role. */
class VariablePool
{
public:
  Var max_var() const { return Var{ static_cast<std::uint32_t>( roles_.size() - 1 ) }; }

  Role role( Var v ) const { return v.index < roles_.size() ? roles_[v.index] : Role::none; }
  bool declared( Var v ) const { return v.index != 0 && role( v ) != Role::none; }

  std::vector<Var> allocate( std::size_t count, Role role )
  {
    std::vector<Var> out;
    out.reserve( count );
    for ( std::size_t i = 0; i < count; ++i )
    {
      out.push_back( allocate( role ) );
    }
    return out;
  }

  Var allocate( Role role )
  {
    assert( role != Role::none );
    Var v{ static_cast<std::uint32_t>( roles_.size() ) };
    roles_.push_back( role );
    ( role == Role::input ? inputs_ : aux_ ).push_back( v );
    return v;
  }

  /* registers a caller-chosen id; ids may leave gaps below them */
  void declare( Var v, Role role )
  {
    if ( v.index == 0 )
    {
      throw std::invalid_argument( "variable ids start at 1" );
    }
    if ( declared( v ) )
    {
      throw std::invalid_argument( "variable " + std::to_string( v.index ) + " declared twice" );
    }
    if ( v.index >= roles_.size() )
    {
      roles_.resize( v.index + 1, Role::none );
    }
    roles_[v.index] = role;
    ( role == Role::input ? inputs_ : aux_ ).push_back( v );
  }

  std::vector<Var> const& input_vars() const { return inputs_; }
  std::vector<Var> const& aux_vars() const { return aux_; }

private:
  std::vector<Role> roles_ = { Role::none };
  std::vector<Var> inputs_;
  std::vector<Var> aux_;
};

inline std::vector<Var> allocate_vars( VariablePool& pool, std::size_t count, Role role )
{
  return pool.allocate( count, role );
}

/*! \brief CNF formula with flat clause storage.

  Clauses are kept in one literal buffer with an offset table so that
  formulas with tens of millions of clauses stay cheap to build.
*/
class CnfFormula
{
public:
  class ClauseRange;

  VariablePool& pool() { return pool_; }
  VariablePool const& pool() const { return pool_; }

  Var new_var( Role role = Role::aux ) { return pool_.allocate( role ); }
  std::vector<Var> new_vars( std::size_t count, Role role = Role::aux ) { return pool_.allocate( count, role ); }

  Var max_var() const { return pool_.max_var(); }
  std::vector<Var> const& input_vars() const { return pool_.input_vars(); }
  std::vector<Var> const& aux_vars() const { return pool_.aux_vars(); }

  std::size_t num_clauses() const { return offsets_.size() - 1 + counted_; }
  std::size_t num_literals() const { return lits_.size() + counted_literals_; }

  /* when set, clauses are counted but not stored */
  void set_count_only( bool value ) { count_only_ = value; }
  bool count_only() const { return count_only_; }

  std::span<const Lit> clause( std::size_t i ) const
  {
    return { lits_.data() + offsets_[i], lits_.data() + offsets_[i + 1] };
  }

  void add_clause( std::span<const Lit> lits )
  {
    if ( count_only_ )
    {
      ++counted_;
      counted_literals_ += lits.size();
      return;
    }
    scratch_.assign( lits.begin(), lits.end() );
    Clause::normalize( scratch_ );
    for ( auto l : scratch_ )
    {
      if ( !pool_.declared( l.var() ) )
      {
        throw std::logic_error( "clause uses undeclared variable " + std::to_string( l.var().index ) );
      }
    }
    lits_.insert( lits_.end(), scratch_.begin(), scratch_.end() );
    offsets_.push_back( static_cast<std::uint64_t>( lits_.size() ) );
  }
  void add_clause( std::initializer_list<Lit> lits ) { add_clause( std::span<const Lit>( lits.begin(), lits.size() ) ); }
  void add_clause( Clause const& c ) { add_clause( c.literals() ); }

  std::vector<Clause> clauses() const
  {
    std::vector<Clause> out;
    out.reserve( num_clauses() );
    for ( std::size_t i = 0; i < num_clauses(); ++i )
    {
      out.emplace_back( clause( i ) );
    }
    return out;
  }

  /* formula with the same variables and no clauses */
  CnfFormula empty_copy() const
  {
    CnfFormula f;
    f.pool_ = pool_;
    return f;
  }

private:
  VariablePool pool_;
  std::vector<Lit> lits_;
  std::vector<std::uint64_t> offsets_ = { 0 };
  std::vector<Lit> scratch_;
  bool count_only_ = false;
  std::size_t counted_ = 0;
  std::size_t counted_literals_ = 0;
};

/*! \brief Partial map from variables to truth values. */
class PartialAssignment
{
public:
  PartialAssignment() = default;
  PartialAssignment( std::initializer_list<std::pair<Var, bool>> values )
  {
    for ( auto [v, b] : values )
    {
      set( v, b );
    }
  }

  void set( Var v, bool value )
  {
    if ( v.index >= values_.size() )
    {
      values_.resize( v.index + 1, -1 );
    }
    if ( values_[v.index] < 0 )
    {
      ++count_;
    }
    values_[v.index] = value ? 1 : 0;
  }
  void set( Lit l ) { set( l.var(), l.positive() ); }

  void unset( Var v )
  {
    if ( v.index < values_.size() && values_[v.index] >= 0 )
    {
      values_[v.index] = -1;
      --count_;
    }
  }

  std::optional<bool> get( Var v ) const
  {
    if ( v.index >= values_.size() || values_[v.index] < 0 )
    {
      return std::nullopt;
    }
    return values_[v.index] == 1;
  }

  /* true if l is assigned and satisfied */
  bool satisfies( Lit l ) const
  {
    auto const v = get( l.var() );
    return v && *v == l.positive();
  }
  bool falsifies( Lit l ) const
  {
    auto const v = get( l.var() );
    return v && *v != l.positive();
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  std::vector<Lit> literals() const
  {
    std::vector<Lit> out;
    for ( std::uint32_t i = 1; i < values_.size(); ++i )
    {
      if ( values_[i] >= 0 )
      {
        out.emplace_back( Var{ i }, values_[i] == 1 );
      }
    }
    return out;
  }

  friend bool operator==( PartialAssignment const& a, PartialAssignment const& b )
  {
    return a.literals() == b.literals();
  }

private:
  std::vector<std::int8_t> values_;
  std::size_t count_ = 0;
};

/*! \brief phi restricted by tau: satisfied clauses dropped, falsified literals removed. */
inline CnfFormula restrict( CnfFormula const& formula, PartialAssignment const& tau )
{
  auto out = formula.empty_copy();
  std::vector<Lit> kept;
  for ( std::size_t i = 0; i < formula.num_clauses(); ++i )
  {
    auto const c = formula.clause( i );
    if ( std::any_of( c.begin(), c.end(), [&]( Lit l ) { return tau.satisfies( l ); } ) )
    {
      continue;
    }
    kept.clear();
    std::copy_if( c.begin(), c.end(), std::back_inserter( kept ), [&]( Lit l ) { return !tau.falsifies( l ); } );
    out.add_clause( kept );
  }
  return out;
}

struct Constraint
{
  enum class Kind
  {
    unknown,
    amo,
    amk,
    /* at most one input true, and every true input forces the indicator (the last input) */
    amo_indicator
  };

  Kind kind = Kind::unknown;
  std::uint32_t k = 0;

  static Constraint amo() { return { Kind::amo, 1 }; }
  static Constraint amk( std::uint32_t k ) { return { Kind::amk, k }; }
  static Constraint amo_indicator() { return { Kind::amo_indicator, 1 }; }

  std::uint32_t bound() const { return kind == Kind::amk ? k : 1u; }

  friend bool operator==( Constraint const&, Constraint const& ) = default;
};

inline std::string to_string( Constraint const& c )
{
  switch ( c.kind )
  {
  case Constraint::Kind::amo:
    return "AMO";
  case Constraint::Kind::amk:
    return "AMK " + std::to_string( c.k );
  case Constraint::Kind::amo_indicator:
    return "AMO'";
  default:
    return "unknown";
  }
}

using Params = std::map<std::string, std::string>;

/*! \brief A formula together with the cardinality constraint it claims to encode. */
struct Encoding
{
  CnfFormula formula;
  Constraint constraint;
  std::string encoder_name;
  Params params;
  /* extra "c <key> <value>" metadata, e.g. instance family or expected status */
  Params annotations;

  std::size_t num_clauses() const { return formula.num_clauses(); }
  std::size_t num_aux() const { return formula.aux_vars().size(); }
  std::size_t num_inputs() const { return formula.input_vars().size(); }
};

/* does the constraint accept this assignment of the inputs (in input_vars order)? */
inline bool constraint_holds( Constraint const& c, std::vector<bool> const& inputs )
{
  switch ( c.kind )
  {
  case Constraint::Kind::amo:
  case Constraint::Kind::amk:
    return static_cast<std::uint32_t>( std::count( inputs.begin(), inputs.end(), true ) ) <= c.bound();
  case Constraint::Kind::amo_indicator:
  {
    if ( inputs.empty() )
    {
      return true;
    }
    auto const weight = std::count( inputs.begin(), inputs.end() - 1, true );
    return weight <= 1 && ( weight == 0 || inputs.back() );
  }
  default:
    throw std::invalid_argument( "constraint is unknown" );
  }
}

inline std::vector<Lit> positive_literals( std::span<const Var> vars )
{
  std::vector<Lit> out;
  out.reserve( vars.size() );
  for ( auto v : vars )
  {
    out.push_back( pos( v ) );
  }
  return out;
}

/* starts an encoding whose input variables are exactly xs, in order */
inline Encoding make_encoding( std::span<const Var> xs, std::string name, Constraint constraint )
{
  Encoding e;
  e.encoder_name = std::move( name );
  e.constraint = constraint;
  for ( auto v : xs )
  {
    e.formula.pool().declare( v, Role::input );
  }
  return e;
}

inline std::vector<Var> first_vars( std::size_t n )
{
  std::vector<Var> out( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    out[i] = Var{ static_cast<std::uint32_t>( i + 1 ) };
  }
  return out;
}

} // namespace cardcnf
