#pragma once

#include "amk.hpp"

namespace cardcnf
{

struct MultipartiteParams
{
  std::size_t p = 0;
  std::size_t q = 0;
};

/* p = ceil(n^(1/6)) + 1 parts of q = ceil(sqrt(2) n^(1/3)) vertices */
inline MultipartiteParams multipartite_params( std::size_t n )
{
  MultipartiteParams mp;
  mp.p = detail::ceil_root( n, 6 ) + 1;
  mp.q = detail::ceil_root( 8 * static_cast<std::uint64_t>( n ) * n, 6 );
  return mp;
}

inline std::size_t clique_vertices( std::size_t n ) { return detail::ceil_sqrt( 2 * n ) + 1; }

namespace detail
{

/* vertex variables for the endpoints of the first n edges; returns (edge endpoints, vertex literal table) */
struct EdgeLayout
{
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::optional<Lit>> vertex;
};

inline void connect_edges( CnfFormula& f, LitSpan x, EdgeLayout& g )
{
  for ( auto const& [a, b] : g.edges )
  {
    for ( auto v : { a, b } )
    {
      if ( !g.vertex[v] )
      {
        g.vertex[v] = Lit();
      }
    }
  }
  for ( auto& v : g.vertex )
  {
    if ( v )
    {
      v = pos( f.new_var() );
    }
  }
  for ( std::size_t t = 0; t < x.size(); ++t )
  {
    f.add_clause( { ~x[t], *g.vertex[g.edges[t].first] } );
    f.add_clause( { ~x[t], *g.vertex[g.edges[t].second] } );
  }
}

} // namespace detail

/*! \brief Inputs on edges of a complete p-partite graph; AMO' per part, AMT over the part indicators. */
inline MultipartiteParams add_multipartite_amo( CnfFormula& f, LitSpan x )
{
  auto const n = x.size();
  auto const mp = multipartite_params( n );
  auto const p = mp.p, q = mp.q;
  detail::EdgeLayout g;
  g.vertex.assign( p * q, std::nullopt );
  for ( std::size_t a = 0; a < p && g.edges.size() < n; ++a )
  {
    for ( std::size_t b = a + 1; b < p && g.edges.size() < n; ++b )
    {
      for ( std::size_t u = 0; u < q && g.edges.size() < n; ++u )
      {
        for ( std::size_t v = 0; v < q && g.edges.size() < n; ++v )
        {
          g.edges.emplace_back( a * q + u, b * q + v );
        }
      }
    }
  }
  detail::connect_edges( f, x, g );

  std::vector<std::vector<Lit>> parts( p );
  for ( std::size_t i = 0; i < p * q; ++i )
  {
    if ( g.vertex[i] )
    {
      parts[i / q].push_back( *g.vertex[i] );
    }
  }
  std::vector<Lit> z;
  for ( auto const& part : parts )
  {
    if ( !part.empty() )
    {
      z.push_back( pos( f.new_var() ) );
    }
  }
  for ( std::size_t a = 0, i = 0; a < p; ++a )
  {
    if ( !parts[a].empty() )
    {
      add_amo_indicator( f, parts[a], z[i++] );
    }
  }
  add_gp_amk( f, z, 2, GpOptions{ 9, GpOptions::Base::direct } );
  return mp;
}

/*! \brief Inputs on edges of K_p; AMT over the vertices by disjunctive grid compression. */
inline std::size_t add_clique_amo( CnfFormula& f, LitSpan x, Params* record = nullptr )
{
  auto const n = x.size();
  auto const p = clique_vertices( n );
  detail::EdgeLayout g;
  g.vertex.assign( p, std::nullopt );
  for ( std::size_t a = 0; a < p && g.edges.size() < n; ++a )
  {
    for ( std::size_t b = a + 1; b < p && g.edges.size() < n; ++b )
    {
      g.edges.emplace_back( a, b );
    }
  }
  detail::connect_edges( f, x, g );
  std::vector<Lit> v;
  for ( auto const& l : g.vertex )
  {
    if ( l )
    {
      v.push_back( *l );
    }
  }
  add_dgc_amk_searched( f, v, 2, record );
  return p;
}

inline Encoding encode_multipartite( std::span<const Var> xs )
{
  detail::check_distinct( xs );
  auto e = make_encoding( xs, "multipartite", Constraint::amo() );
  auto const lits = positive_literals( xs );
  if ( xs.size() <= 2 )
  {
    e.params["fallback"] = "direct";
    add_direct_amo( e.formula, lits );
    return e;
  }
  auto const mp = add_multipartite_amo( e.formula, lits );
  e.params["p"] = std::to_string( mp.p );
  e.params["q"] = std::to_string( mp.q );
  return e;
}

inline Encoding encode_clique( std::span<const Var> xs )
{
  detail::check_distinct( xs );
  auto e = make_encoding( xs, "clique", Constraint::amo() );
  auto const lits = positive_literals( xs );
  if ( xs.size() <= 2 )
  {
    e.params["fallback"] = "direct";
    add_direct_amo( e.formula, lits );
    return e;
  }
  e.params["p"] = std::to_string( add_clique_amo( e.formula, lits, &e.params ) );
  return e;
}

} // namespace cardcnf
