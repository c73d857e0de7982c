#pragma once

#include "amo_graph.hpp"

#include <limits>
#include <map>
#include <ostream>

namespace cardcnf
{

enum class GateOp : std::uint8_t
{
  AND,
  OR
};

struct Gate
{
  GateOp op;
  std::uint32_t a;
  std::uint32_t b;

  friend bool operator==( Gate const&, Gate const& ) = default;
};

/*! \brief Fan-in-2 AND/OR circuit. Wire 0 is constant false, wires 1..n are inputs, gate i drives wire n+1+i. */
struct Circuit
{
  std::uint32_t inputs = 0;
  std::vector<Gate> gates;
  std::vector<std::uint32_t> outputs;

  static constexpr std::uint32_t false_wire = 0;

  std::uint32_t input( std::size_t i ) const { return static_cast<std::uint32_t>( i + 1 ); }
  std::size_t num_wires() const { return 1 + inputs + gates.size(); }

  std::uint32_t add( GateOp op, std::uint32_t a, std::uint32_t b )
  {
    gates.push_back( { op, a, b } );
    return static_cast<std::uint32_t>( num_wires() - 1 );
  }
};

inline std::vector<bool> evaluate( Circuit const& c, std::vector<bool> const& assignment )
{
  if ( assignment.size() != c.inputs )
  {
    throw std::invalid_argument( "assignment has " + std::to_string( assignment.size() ) + " values for " +
                                 std::to_string( c.inputs ) + " inputs" );
  }
  std::vector<bool> w( c.num_wires(), false );
  for ( std::size_t i = 0; i < c.inputs; ++i )
  {
    w[i + 1] = assignment[i];
  }
  auto wire = c.inputs + 1;
  for ( auto const& g : c.gates )
  {
    w[wire++] = g.op == GateOp::AND ? ( w[g.a] && w[g.b] ) : ( w[g.a] || w[g.b] );
  }
  std::vector<bool> out;
  for ( auto o : c.outputs )
  {
    out.push_back( w[o] );
  }
  return out;
}

struct CircuitAudit
{
  std::size_t gate_count = 0;
  bool is_monotone_structure = true;
  std::size_t max_and_depth = 0;
};

inline CircuitAudit audit( Circuit const& c )
{
  CircuitAudit a;
  a.gate_count = c.gates.size();
  std::vector<std::size_t> depth( c.num_wires(), 0 );
  auto wire = c.inputs + 1;
  for ( auto const& g : c.gates )
  {
    if ( g.op != GateOp::AND && g.op != GateOp::OR )
    {
      a.is_monotone_structure = false;
    }
    if ( g.a >= wire || g.b >= wire )
    {
      a.is_monotone_structure = false;
    }
    depth[wire++] = std::max( depth[g.a], depth[g.b] ) + ( g.op == GateOp::AND ? 1 : 0 );
  }
  for ( auto o : c.outputs )
  {
    a.max_and_depth = std::max( a.max_and_depth, depth[o] );
  }
  return a;
}

inline void dump( Circuit const& c, std::ostream& os )
{
  auto wire = c.inputs + 1;
  for ( auto const& g : c.gates )
  {
    os << 'g' << wire++ << " = " << ( g.op == GateOp::AND ? "AND" : "OR" ) << " w" << g.a << " w" << g.b << '\n';
  }
  for ( auto o : c.outputs )
  {
    os << "out w" << o << '\n';
  }
}

namespace detail
{

/* Builds threshold sub-circuits, choosing per size between a linear scan and a grid split by gate cost. */
class ThresholdBuilder
{
public:
  explicit ThresholdBuilder( Circuit& c ) : c_( c ) {}

  std::uint32_t op( GateOp o, std::uint32_t a, std::uint32_t b )
  {
    if ( a == Circuit::false_wire )
    {
      return o == GateOp::OR ? b : Circuit::false_wire;
    }
    if ( b == Circuit::false_wire )
    {
      return o == GateOp::OR ? a : Circuit::false_wire;
    }
    return c_.add( o, a, b );
  }
  std::uint32_t OR( std::uint32_t a, std::uint32_t b ) { return op( GateOp::OR, a, b ); }
  std::uint32_t AND( std::uint32_t a, std::uint32_t b ) { return op( GateOp::AND, a, b ); }

  std::uint32_t or_all( std::span<const std::uint32_t> ws )
  {
    std::uint32_t acc = Circuit::false_wire;
    for ( auto w : ws )
    {
      acc = OR( acc, w );
    }
    return acc;
  }

  /* (OR, T2) */
  std::pair<std::uint32_t, std::uint32_t> s2( std::span<const std::uint32_t> x )
  {
    auto const n = x.size();
    if ( n <= 1 )
    {
      return { n ? x[0] : Circuit::false_wire, Circuit::false_wire };
    }
    if ( auto const w = plan( n, kind::s2 ).width )
    {
      auto const [rows, cols] = grid2( x, w );
      auto const r = s2( rows );
      auto const t = t2( cols );
      return { r.first, OR( r.second, t ) };
    }
    std::uint32_t o = x[0], t = Circuit::false_wire;
    for ( std::size_t i = 1; i < n; ++i )
    {
      t = OR( t, AND( o, x[i] ) );
      o = OR( o, x[i] );
    }
    return { o, t };
  }

  std::uint32_t t2( std::span<const std::uint32_t> x )
  {
    auto const n = x.size();
    if ( n <= 1 )
    {
      return Circuit::false_wire;
    }
    if ( auto const w = plan( n, kind::t2 ).width )
    {
      return t2_grid( x, w );
    }
    std::uint32_t o = x[0], t = Circuit::false_wire;
    for ( std::size_t i = 1; i < n; ++i )
    {
      t = OR( t, AND( o, x[i] ) );
      if ( i + 1 < n )
      {
        o = OR( o, x[i] );
      }
    }
    return t;
  }

  /* T2 = T2(row ORs) v T2(column ORs) on a grid with `width` columns */
  std::uint32_t t2_grid( std::span<const std::uint32_t> x, std::size_t width )
  {
    auto const [rows, cols] = grid2( x, width );
    auto const r = t2( rows );
    return OR( r, t2( cols ) );
  }

  std::uint32_t t3( std::span<const std::uint32_t> x )
  {
    auto const n = x.size();
    if ( n <= 2 )
    {
      return Circuit::false_wire;
    }
    if ( plan( n, kind::t3 ).width )
    {
      auto const p = ceil_root( n, 3 );
      std::uint32_t out = Circuit::false_wire;
      for ( std::size_t d = 0; d < 3; ++d )
      {
        out = OR( out, t3( rods( x, p, d ) ) );
      }
      return out;
    }
    std::uint32_t o = x[0], t = Circuit::false_wire, u = Circuit::false_wire;
    for ( std::size_t i = 1; i < n; ++i )
    {
      u = OR( u, AND( t, x[i] ) );
      if ( i + 1 < n )
      {
        t = OR( t, AND( o, x[i] ) );
        o = OR( o, x[i] );
      }
    }
    return u;
  }

  /* gate counts of s2/t2/t3 on n inputs */
  static std::size_t cost_s2( std::size_t n ) { return plan( n, kind::s2 ).cost; }
  static std::size_t cost_t2( std::size_t n ) { return plan( n, kind::t2 ).cost; }
  static std::size_t cost_t3( std::size_t n ) { return plan( n, kind::t3 ).cost; }
  static std::size_t cost_t2_grid( std::size_t n, std::size_t width )
  {
    auto const rows = ( n + width - 1 ) / width;
    return ( n - rows ) + ( n - width ) + cost_t2( rows ) + cost_t2( width ) + 1;
  }

private:
  enum class kind
  {
    s2,
    t2,
    t3
  };

  /* width 0: linear scan; otherwise the grid column count (t3: any nonzero value means the cube split) */
  struct Plan
  {
    std::size_t cost = 0;
    std::size_t width = 0;
  };

  static std::size_t scan_cost( std::size_t n, kind k )
  {
    switch ( k )
    {
    case kind::s2:
      return n < 2 ? 0 : 3 * n - 4;
    case kind::t2:
      return n < 2 ? 0 : 3 * n - 5;
    default:
      return n < 3 ? 0 : 5 * n - 12;
    }
  }

  static std::vector<std::size_t> shape3( std::size_t n, std::size_t d )
  {
    auto const p = ceil_root( n, 3 );
    std::map<std::uint64_t, std::size_t> rods;
    for ( std::uint64_t t = 0; t < n; ++t )
    {
      ++rods[drop_coordinate( t, p, d )];
    }
    std::vector<std::size_t> out;
    for ( auto const& [key, size] : rods )
    {
      out.push_back( size );
    }
    return out;
  }

  static std::optional<std::size_t> cube_cost( std::size_t n )
  {
    std::size_t total = 2;
    for ( std::size_t d = 0; d < 3; ++d )
    {
      auto const sizes = shape3( n, d );
      if ( sizes.size() >= n )
      {
        return std::nullopt;
      }
      total += n - sizes.size() + plan( sizes.size(), kind::t3 ).cost;
    }
    return total;
  }

  /* cheapest construction; grid widths near sqrt(n) once n is large */
  static Plan plan( std::size_t n, kind k )
  {
    thread_local std::map<std::pair<std::size_t, int>, Plan> memo;
    auto const key = std::make_pair( n, static_cast<int>( k ) );
    if ( auto it = memo.find( key ); it != memo.end() )
    {
      return it->second;
    }
    Plan best{ scan_cost( n, k ), 0 };
    if ( k == kind::t3 )
    {
      if ( auto g = cube_cost( n ); g && *g < best.cost )
      {
        best = { *g, 1 };
      }
    }
    else if ( n >= 4 )
    {
      auto const root = ceil_sqrt( n );
      auto const lo = n <= 256 ? 2 : std::max<std::size_t>( 2, root / 4 );
      auto const hi = n <= 256 ? n - 1 : std::min( n - 1, 4 * root );
      for ( auto w = lo; w <= hi; ++w )
      {
        auto const rows = ( n + w - 1 ) / w;
        if ( rows >= n || rows < 2 )
        {
          continue;
        }
        auto const c = ( n - rows ) + ( n - w ) + plan( rows, k ).cost + plan( w, kind::t2 ).cost + 1;
        if ( c < best.cost )
        {
          best = { c, w };
        }
      }
    }
    memo[key] = best;
    return best;
  }

  std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> grid2( std::span<const std::uint32_t> x,
                                                                           std::size_t width )
  {
    auto const n = x.size();
    auto const rows = ( n + width - 1 ) / width;
    std::vector<std::uint32_t> r( rows ), c( width );
    for ( std::size_t i = 0; i < rows; ++i )
    {
      r[i] = or_all( x.subspan( i * width, std::min( width, n - i * width ) ) );
    }
    for ( std::size_t j = 0; j < width; ++j )
    {
      std::vector<std::uint32_t> col;
      for ( auto t = j; t < n; t += width )
      {
        col.push_back( x[t] );
      }
      c[j] = or_all( col );
    }
    return { r, c };
  }

  std::vector<std::uint32_t> rods( std::span<const std::uint32_t> x, std::uint64_t p, std::size_t d )
  {
    std::map<std::uint64_t, std::vector<std::uint32_t>> members;
    for ( std::uint64_t t = 0; t < x.size(); ++t )
    {
      members[drop_coordinate( t, p, d )].push_back( x[t] );
    }
    std::vector<std::uint32_t> out;
    for ( auto const& [key, ws] : members )
    {
      out.push_back( or_all( ws ) );
    }
    return out;
  }

  Circuit& c_;
};

inline std::vector<std::uint32_t> input_wires( Circuit const& c )
{
  std::vector<std::uint32_t> x( c.inputs );
  for ( std::size_t i = 0; i < c.inputs; ++i )
  {
    x[i] = c.input( i );
  }
  return x;
}

} // namespace detail

/*! \brief Outputs (x1 v ... v xn, T2). */
inline Circuit build_s2( std::size_t n )
{
  Circuit c;
  c.inputs = static_cast<std::uint32_t>( n );
  detail::ThresholdBuilder b( c );
  auto const [o, t] = b.s2( detail::input_wires( c ) );
  c.outputs = { o, t };
  return c;
}

inline Circuit build_t3( std::size_t n )
{
  Circuit c;
  c.inputs = static_cast<std::uint32_t>( n );
  detail::ThresholdBuilder b( c );
  c.outputs = { b.t3( detail::input_wires( c ) ) };
  return c;
}

/*! \brief Product-style T2: OR of T2 over row ORs and T2 over column ORs, recursively. */
inline Circuit build_t2_product( std::size_t n )
{
  Circuit c;
  c.inputs = static_cast<std::uint32_t>( n );
  detail::ThresholdBuilder b( c );
  auto const x = detail::input_wires( c );
  c.outputs = { n >= 4 ? b.t2_grid( x, detail::ceil_sqrt( n ) ) : b.t2( x ) };
  return c;
}

enum class EdgeFill
{
  /* part pairs in order, each filled completely before the next */
  lexicographic,
  /* part sizes chosen to minimize the gate count, assuming every vertex gets an edge */
  compact
};

namespace detail
{

/* nonincreasing sizes s_1..s_p <= q with sum_{a<b} s_a s_b >= n and the least predicted gates */
inline std::vector<std::size_t> part_sizes( std::size_t n, std::size_t p, std::size_t q )
{
  std::size_t balanced = 1;
  while ( choose2( p ) * balanced * balanced < n )
  {
    ++balanced;
  }
  /* exhaustive when the number of size vectors is small, else a window around the balanced size */
  std::size_t lo = 1, hi = q, count = 1;
  for ( std::size_t i = 1; i <= p && count <= 5'000'000; ++i )
  {
    count = count * ( q + i - 1 ) / i;
  }
  if ( count > 5'000'000 )
  {
    lo = balanced > 4 ? balanced - 4 : 1;
    hi = std::min( q, balanced + 4 );
  }
  auto const fixed = p - 1 + ThresholdBuilder::cost_t3( p ) + 1;
  std::vector<std::size_t> s( p ), best;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  auto rec = [&]( auto&& self, std::size_t i, std::size_t cap, std::size_t sum, std::size_t squares,
                  std::size_t gates ) -> void {
    if ( i == p )
    {
      auto const cost = 2 * n - sum + fixed + gates;
      if ( ( sum * sum - squares ) / 2 >= n && 2 * n >= sum && cost < best_cost )
      {
        best_cost = cost;
        best = s;
      }
      return;
    }
    for ( auto v = lo; v <= cap; ++v )
    {
      s[i] = v;
      self( self, i + 1, v, sum + v, squares + v * v, gates + ThresholdBuilder::cost_s2( v ) );
    }
  };
  rec( rec, 0, hi, 0, 0, 0 );
  if ( best.empty() )
  {
    return std::vector<std::size_t>( p, q );
  }
  return best;
}

} // namespace detail

/*! \brief T2 = OR_k w_k v T3(z_1..z_p) with (z_k, w_k) = S2 of part k's vertex ORs. */
inline Circuit build_t2_multipartite( std::size_t n, EdgeFill fill = EdgeFill::compact )
{
  Circuit c;
  c.inputs = static_cast<std::uint32_t>( n );
  detail::ThresholdBuilder b( c );
  auto const x = detail::input_wires( c );
  if ( n <= 2 )
  {
    c.outputs = { n == 2 ? b.AND( x[0], x[1] ) : Circuit::false_wire };
    return c;
  }
  auto const mp = multipartite_params( n );
  auto const p = mp.p;
  auto const q = mp.q;
  auto const size = fill == EdgeFill::compact ? detail::part_sizes( n, p, q ) : std::vector<std::size_t>( p, q );
  std::vector<std::vector<std::uint32_t>> incident( p * q );
  std::size_t t = 0;
  for ( std::size_t a = 0; a < p && t < n; ++a )
  {
    for ( std::size_t bb = a + 1; bb < p && t < n; ++bb )
    {
      for ( std::size_t u = 0; u < size[a] && t < n; ++u )
      {
        for ( std::size_t v = 0; v < size[bb] && t < n; ++v, ++t )
        {
          incident[a * q + u].push_back( x[t] );
          incident[bb * q + v].push_back( x[t] );
        }
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> parts( p );
  for ( std::size_t i = 0; i < p * q; ++i )
  {
    if ( !incident[i].empty() )
    {
      parts[i / q].push_back( b.or_all( incident[i] ) );
    }
  }
  std::vector<std::uint32_t> z, w;
  for ( auto const& part : parts )
  {
    if ( !part.empty() )
    {
      auto const [zk, wk] = b.s2( part );
      z.push_back( zk );
      w.push_back( wk );
    }
  }
  c.outputs = { b.OR( b.or_all( w ), b.t3( z ) ) };
  return c;
}

} // namespace cardcnf
