#pragma once

#include "amo_graph.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>

namespace cardcnf
{

class unknown_encoder : public std::invalid_argument
{
public:
  explicit unknown_encoder( std::string_view name ) : std::invalid_argument( "unknown encoder: " + std::string( name ) ) {}
};

struct EncoderInfo
{
  std::string_view name;
  bool amo_only;
  std::vector<std::string_view> options;
};

inline std::vector<EncoderInfo> const& encoders()
{
  static std::vector<EncoderInfo> const table = {
      { "direct", true, {} },
      { "product", true, {} },
      { "multipartite", true, {} },
      { "clique", true, {} },
      { "seqcounter", false, {} },
      { "gp", false, { "base_threshold", "base" } },
      { "dgp", false, {} },
      { "gc", false, { "seed", "ell_factor" } },
      { "dgc", false, {} },
  };
  return table;
}

inline EncoderInfo const& find_encoder( std::string_view name )
{
  for ( auto const& e : encoders() )
  {
    if ( e.name == name )
    {
      return e;
    }
  }
  throw unknown_encoder( name );
}

/*! \brief Parses `k=v,k=v`; empty input gives no params. */
inline Params parse_params( std::string_view text )
{
  Params out;
  while ( !text.empty() )
  {
    auto const comma = text.find( ',' );
    auto const item = text.substr( 0, comma );
    auto const eq = item.find( '=' );
    if ( eq == std::string_view::npos || eq == 0 )
    {
      throw std::invalid_argument( "malformed parameter '" + std::string( item ) + "', expected key=value" );
    }
    out[std::string( item.substr( 0, eq ) )] = std::string( item.substr( eq + 1 ) );
    text = comma == std::string_view::npos ? std::string_view{} : text.substr( comma + 1 );
  }
  return out;
}

namespace detail
{

inline std::uint64_t param_uint( Params const& options, std::string const& key, std::uint64_t fallback )
{
  auto it = options.find( key );
  if ( it == options.end() )
  {
    return fallback;
  }
  std::uint64_t v = 0;
  auto const& s = it->second;
  auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( ec != std::errc{} || ptr != s.data() + s.size() )
  {
    throw std::invalid_argument( "parameter " + key + " must be a non-negative integer, got '" + s + "'" );
  }
  return v;
}

inline void check_options( EncoderInfo const& info, Params const& options )
{
  for ( auto const& [key, value] : options )
  {
    if ( std::find( info.options.begin(), info.options.end(), key ) == info.options.end() )
    {
      throw std::invalid_argument( "encoder " + std::string( info.name ) + " takes no parameter '" + key + "'" );
    }
  }
}

inline GpOptions gp_options( Params const& options )
{
  GpOptions opt;
  opt.base_threshold = param_uint( options, "base_threshold", 0 );
  if ( auto it = options.find( "base" ); it != options.end() )
  {
    if ( it->second == "direct" )
    {
      opt.base = GpOptions::Base::direct;
    }
    else if ( it->second != "sequential" )
    {
      throw std::invalid_argument( "gp base must be sequential or direct, got '" + it->second + "'" );
    }
  }
  return opt;
}

inline void check_constraint( EncoderInfo const& info, Constraint const& c )
{
  if ( c.kind != Constraint::Kind::amo && c.kind != Constraint::Kind::amk )
  {
    throw std::invalid_argument( "encoders take AMO or AMK constraints" );
  }
  if ( info.amo_only && c.bound() != 1 )
  {
    throw std::invalid_argument( "encoder " + std::string( info.name ) + " only encodes AMO" );
  }
}

} // namespace detail

/*! \brief Encodes `c` over x_1..x_n with the named encoder. AMO encoders answer AMO, the rest AMK. */
inline Encoding encode( std::string_view name, std::size_t n, Constraint c, Params const& options = {} )
{
  auto const& info = find_encoder( name );
  detail::check_options( info, options );
  detail::check_constraint( info, c );
  auto const xs = first_vars( n );
  auto const k = c.bound();
  if ( name == "direct" )
  {
    return encode_direct( xs );
  }
  if ( name == "product" )
  {
    return encode_product( xs );
  }
  if ( name == "multipartite" )
  {
    return encode_multipartite( xs );
  }
  if ( name == "clique" )
  {
    return encode_clique( xs );
  }
  if ( name == "seqcounter" )
  {
    return encode_sequential( xs, k );
  }
  if ( name == "gp" )
  {
    return encode_generalized_product( xs, k, detail::gp_options( options ) );
  }
  if ( name == "dgp" )
  {
    return encode_disjunctive_generalized_product( xs, k );
  }
  if ( name == "gc" )
  {
    return encode_grid_compression( xs, k, detail::param_uint( options, "seed", 1 ),
                                    detail::param_uint( options, "ell_factor", 1 ) );
  }
  return encode_disjunctive_grid_compression( xs, k );
}

/*! \brief Adds AMK(k) over `x` to an existing formula with the named encoder; returns recorded parameters. */
inline Params add_cardinality( std::string_view name, CnfFormula& f, LitSpan x, std::size_t k,
                               Params const& options = {} )
{
  auto const& info = find_encoder( name );
  detail::check_options( info, options );
  Params record;
  if ( info.amo_only && k != 1 )
  {
    throw std::invalid_argument( "encoder " + std::string( info.name ) + " only encodes AMO" );
  }
  if ( x.size() <= k )
  {
    return record;
  }
  if ( name == "direct" )
  {
    add_direct_amo( f, x );
  }
  else if ( name == "product" )
  {
    add_product_amo( f, x );
  }
  else if ( name == "multipartite" )
  {
    x.size() <= 2 ? add_direct_amo( f, x ) : void( add_multipartite_amo( f, x ) );
  }
  else if ( name == "clique" )
  {
    x.size() <= 2 ? add_direct_amo( f, x ) : void( add_clique_amo( f, x, &record ) );
  }
  else if ( name == "seqcounter" )
  {
    add_sequential_amk( f, x, k );
  }
  else if ( name == "gp" )
  {
    add_gp_amk( f, x, k, detail::gp_options( options ) );
  }
  else if ( name == "dgp" )
  {
    add_dgp_amk( f, x, k );
  }
  else if ( name == "gc" )
  {
    auto hall = gc_params( x.size(), k, detail::param_uint( options, "seed", 1 ),
                           detail::param_uint( options, "ell_factor", 1 ) );
    if ( hall.params )
    {
      detail::record_grid( record, *hall.params, x.size() );
      add_gc_amk( f, x, k, *hall.params );
    }
    else
    {
      record["fallback"] = "seqcounter";
      add_sequential_amk( f, x, k );
    }
  }
  else
  {
    add_dgc_amk_searched( f, x, k, &record );
  }
  return record;
}

} // namespace cardcnf
