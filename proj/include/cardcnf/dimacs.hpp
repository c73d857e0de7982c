#pragma once

#include "cnf.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace cardcnf
{

class dimacs_error : public std::runtime_error
{
public:
  dimacs_error( std::size_t line, std::string const& what )
      : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), line_( line )
  {
  }
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail
{

inline void append_int( std::string& out, long long value )
{
  char buf[24];
  auto [end, ec] = std::to_chars( buf, buf + sizeof( buf ), value );
  out.append( buf, end );
}

inline std::string join_params( Params const& params )
{
  std::string out;
  for ( auto const& [k, v] : params )
  {
    if ( !out.empty() )
    {
      out += ' ';
    }
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

} // namespace detail

inline void write_dimacs( Encoding const& e, std::ostream& os )
{
  auto const& f = e.formula;
  std::string buf;
  buf.reserve( 1 << 16 );

  buf += "c encoder " + ( e.encoder_name.empty() ? std::string( "none" ) : e.encoder_name ) + "\n";
  buf += "c constraint " + to_string( e.constraint ) + "\n";
  buf += "c input-vars";
  for ( auto v : f.input_vars() )
  {
    buf += ' ';
    detail::append_int( buf, v.index );
  }
  buf += "\nc params " + detail::join_params( e.params ) + "\n";
  for ( auto const& [k, v] : e.annotations )
  {
    buf += "c " + k + " " + v + "\n";
  }
  buf += "p cnf ";
  detail::append_int( buf, f.max_var().index );
  buf += ' ';
  detail::append_int( buf, static_cast<long long>( f.num_clauses() ) );
  buf += '\n';

  for ( std::size_t i = 0; i < f.num_clauses(); ++i )
  {
    for ( auto l : f.clause( i ) )
    {
      detail::append_int( buf, l.dimacs() );
      buf += ' ';
    }
    buf += "0\n";
    if ( buf.size() > ( 1 << 16 ) )
    {
      os.write( buf.data(), static_cast<std::streamsize>( buf.size() ) );
      buf.clear();
    }
  }
  os.write( buf.data(), static_cast<std::streamsize>( buf.size() ) );
  if ( !os )
  {
    throw std::runtime_error( "failed to write DIMACS output" );
  }
}

inline std::string to_dimacs( Encoding const& e )
{
  std::ostringstream os;
  write_dimacs( e, os );
  return os.str();
}

inline void write_dimacs_file( Encoding const& e, std::string const& path )
{
  std::ofstream os( path, std::ios::binary );
  if ( !os )
  {
    throw std::runtime_error( "cannot open " + path + " for writing" );
  }
  write_dimacs( e, os );
}

namespace detail
{

inline Constraint parse_constraint( std::string_view text, std::size_t line )
{
  if ( text == "AMO" )
  {
    return Constraint::amo();
  }
  if ( text == "AMO'" )
  {
    return Constraint::amo_indicator();
  }
  if ( text.starts_with( "AMK " ) )
  {
    std::uint32_t k = 0;
    auto const rest = text.substr( 4 );
    auto [p, ec] = std::from_chars( rest.data(), rest.data() + rest.size(), k );
    if ( ec != std::errc() || p != rest.data() + rest.size() || k == 0 )
    {
      throw dimacs_error( line, "bad constraint bound" );
    }
    return Constraint::amk( k );
  }
  if ( text == "unknown" )
  {
    return {};
  }
  throw dimacs_error( line, "unknown constraint '" + std::string( text ) + "'" );
}

inline std::vector<long long> parse_ints( std::string_view text, std::size_t line )
{
  std::vector<long long> out;
  auto const* p = text.data();
  auto const* end = text.data() + text.size();
  while ( true )
  {
    while ( p != end && ( *p == ' ' || *p == '\t' || *p == '\r' ) )
    {
      ++p;
    }
    if ( p == end )
    {
      break;
    }
    long long value = 0;
    auto [next, ec] = std::from_chars( p, end, value );
    if ( ec != std::errc() )
    {
      throw dimacs_error( line, "expected an integer" );
    }
    out.push_back( value );
    p = next;
  }
  return out;
}

} // namespace detail

/*! \brief Parses DIMACS CNF, including the metadata comments written by write_dimacs. */
inline Encoding read_dimacs( std::istream& is )
{
  Encoding e;
  std::optional<std::vector<long long>> inputs;
  long long num_vars = -1, num_clauses = -1;
  std::vector<std::pair<Lit, std::size_t>> pending;
  std::vector<Lit> clause;
  std::vector<std::vector<Lit>> clauses;
  std::size_t clause_line = 0;

  std::string line;
  std::size_t lineno = 0;
  while ( std::getline( is, line ) )
  {
    ++lineno;
    if ( !line.empty() && line.back() == '\r' )
    {
      line.pop_back();
    }
    std::string_view sv( line );
    if ( sv.empty() )
    {
      continue;
    }
    if ( sv[0] == 'c' )
    {
      if ( num_vars >= 0 || !( sv.size() == 1 || sv[1] == ' ' ) )
      {
        continue;
      }
      auto body = sv.size() > 2 ? sv.substr( 2 ) : std::string_view{};
      auto const sp = body.find( ' ' );
      auto const key = body.substr( 0, sp );
      auto const value = sp == std::string_view::npos ? std::string_view{} : body.substr( sp + 1 );
      if ( key == "encoder" )
      {
        e.encoder_name = std::string( value );
      }
      else if ( key == "constraint" )
      {
        e.constraint = detail::parse_constraint( value, lineno );
      }
      else if ( key == "input-vars" )
      {
        inputs = detail::parse_ints( value, lineno );
      }
      else if ( key == "params" )
      {
        std::istringstream ps{ std::string( value ) };
        std::string kv;
        while ( ps >> kv )
        {
          auto const eq = kv.find( '=' );
          if ( eq == std::string::npos )
          {
            throw dimacs_error( lineno, "params entry without '='" );
          }
          e.params[kv.substr( 0, eq )] = kv.substr( eq + 1 );
        }
      }
      else if ( !key.empty() )
      {
        e.annotations[std::string( key )] = std::string( value );
      }
      continue;
    }
    if ( sv[0] == 'p' )
    {
      if ( num_vars >= 0 )
      {
        throw dimacs_error( lineno, "duplicate header" );
      }
      std::istringstream hs{ std::string( sv ) };
      std::string p, cnf, extra;
      if ( !( hs >> p >> cnf >> num_vars >> num_clauses ) || p != "p" || cnf != "cnf" || num_vars < 0 ||
           num_clauses < 0 || ( hs >> extra ) )
      {
        throw dimacs_error( lineno, "malformed header" );
      }
      continue;
    }
    if ( num_vars < 0 )
    {
      throw dimacs_error( lineno, "clause before header" );
    }
    for ( auto value : detail::parse_ints( sv, lineno ) )
    {
      if ( value == 0 )
      {
        clauses.push_back( std::move( clause ) );
        clause.clear();
        continue;
      }
      if ( value > num_vars || -value > num_vars )
      {
        throw dimacs_error( lineno, "literal " + std::to_string( value ) + " out of range" );
      }
      if ( clause.empty() )
      {
        clause_line = lineno;
      }
      clause.push_back( Lit::from_dimacs( static_cast<std::int32_t>( value ) ) );
    }
  }
  if ( num_vars < 0 )
  {
    throw dimacs_error( lineno, "missing header" );
  }
  if ( !clause.empty() )
  {
    throw dimacs_error( clause_line, "missing 0 terminator" );
  }
  if ( static_cast<long long>( clauses.size() ) != num_clauses )
  {
    throw dimacs_error( lineno, "clause count mismatch: header says " + std::to_string( num_clauses ) + ", found " +
                                    std::to_string( clauses.size() ) );
  }

  auto& pool = e.formula.pool();
  std::vector<bool> is_input( static_cast<std::size_t>( num_vars ) + 1, !inputs.has_value() );
  if ( inputs )
  {
    for ( auto v : *inputs )
    {
      if ( v < 1 || v > num_vars )
      {
        throw dimacs_error( 0, "input variable " + std::to_string( v ) + " out of range" );
      }
      pool.declare( Var{ static_cast<std::uint32_t>( v ) }, Role::input );
      is_input[static_cast<std::size_t>( v )] = true;
    }
  }
  for ( long long v = 1; v <= num_vars; ++v )
  {
    if ( !inputs )
    {
      pool.declare( Var{ static_cast<std::uint32_t>( v ) }, Role::input );
    }
    else if ( !is_input[static_cast<std::size_t>( v )] )
    {
      pool.declare( Var{ static_cast<std::uint32_t>( v ) }, Role::aux );
    }
  }
  for ( auto const& c : clauses )
  {
    try
    {
      e.formula.add_clause( c );
    }
    catch ( std::logic_error const& ex )
    {
      throw dimacs_error( 0, ex.what() );
    }
  }
  return e;
}

inline Encoding read_dimacs( std::string const& text )
{
  std::istringstream is( text );
  return read_dimacs( is );
}

inline Encoding read_dimacs_file( std::string const& path )
{
  std::ifstream is( path, std::ios::binary );
  if ( !is )
  {
    throw std::runtime_error( "cannot open " + path );
  }
  return read_dimacs( is );
}

} // namespace cardcnf
