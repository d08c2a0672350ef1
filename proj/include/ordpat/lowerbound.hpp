#pragma once

// The 2-degenerate graphs G_l: a complete binary tree of depth h(l) whose nodes
// are replaced by 16-vertex gadgets, joined by tree edges and by ribs between
// out-ports and descendant in-ports at depths paired by the interval system N_l.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ordpat/constellation.hpp"
#include "ordpat/ordered_graph.hpp"

namespace ordpat {

inline constexpr int kMaxConstructionEll = 3;

inline std::int64_t h_fn(int ell) {
  if (ell < 1) throw invalid_input("h(l) requires l >= 1");
  if (ell > 60) throw invalid_input("h(l) overflows for l > 60");
  return 5 * (std::int64_t{1} << (ell - 1)) - 2;
}

struct Interval {
  std::int64_t i = 0, j = 0;
  int rank = 0;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

struct IntervalSystem {
  int ell = 0;
  std::vector<Interval> intervals;  // sorted by (i, j)
};

inline IntervalSystem build_intervals(int ell) {
  if (ell < 1) throw invalid_input("interval system requires l >= 1");
  if (ell > 24) throw invalid_input("interval system too large for l > 24");
  IntervalSystem sys{1, {{1, 3, 1}}};
  for (int a = 2; a <= ell; ++a) {
    const std::int64_t shift = h_fn(a - 1) + 1;
    std::vector<Interval> next{{1, h_fn(a), a}};
    for (const auto& x : sys.intervals) next.push_back({x.i + 1, x.j + 1, x.rank});
    for (const auto& x : sys.intervals) next.push_back({x.i + shift, x.j + shift, x.rank});
    sys = {a, std::move(next)};
  }
  std::sort(sys.intervals.begin(), sys.intervals.end());
  return sys;
}

/// The three nesting properties: endpoints in [1, h(l)] and pairwise distinct;
/// each interval is (i, i + h(rank) - 1) with rank in [1, l]; no two intervals cross.
inline bool check_nesting_properties(const IntervalSystem& sys) {
  const std::int64_t h = h_fn(sys.ell);
  std::vector<std::int64_t> ends;
  for (const auto& x : sys.intervals) {
    if (x.i < 1 || x.j > h || x.i >= x.j) return false;
    if (x.rank < 1 || x.rank > sys.ell || x.j != x.i + h_fn(x.rank) - 1) return false;
    ends.push_back(x.i);
    ends.push_back(x.j);
  }
  std::sort(ends.begin(), ends.end());
  if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) return false;
  for (const auto& a : sys.intervals)
    for (const auto& b : sys.intervals)
      if (a.i < b.i && b.i < a.j && a.j < b.j) return false;
  return true;
}

enum Role : int {
  LeftOut = 0,
  RightOut = 1,
  LeftTop = 2,
  RightTop = 3,
};

// Chains of three vertices (InA, InB, Conn). NWSW and SSW carry the left
// connectors, SSE and NESE the right ones.
enum Chain : int { NWSW = 0, SSW = 1, SSE = 2, NESE = 3 };
enum ChainPos : int { InA = 0, InB = 1, Conn = 2 };

inline constexpr int kGadgetSize = 16;

constexpr int chain_role(Chain c, ChainPos k) { return 4 + 3 * c + k; }

inline std::string role_name(int role) {
  static const std::array<const char*, 4> head{"LeftOut", "RightOut", "LeftTop", "RightTop"};
  static const std::array<const char*, 4> chain{"NW-SW", "S-SW", "S-SE", "NE-SE"};
  static const std::array<const char*, 3> pos{"InA", "InB", "Conn"};
  if (role < 4) return head[role];
  return std::string(pos[(role - 4) % 3]) + "(" + chain[(role - 4) / 3] + ")";
}

/// The 17 edges inside one gadget, as role pairs.
inline const std::vector<std::pair<int, int>>& gadget_edges() {
  static const std::vector<std::pair<int, int>> es = [] {
    std::vector<std::pair<int, int>> v{
        {LeftOut, LeftTop},   {LeftOut, RightTop}, {RightOut, RightTop}, {RightOut, LeftTop},
        {LeftTop, chain_role(NWSW, InA)},           {RightTop, chain_role(NESE, InA)},
        {chain_role(NWSW, Conn), chain_role(SSW, Conn)},
        {chain_role(SSE, Conn), chain_role(NESE, Conn)},
        {chain_role(SSW, InA), chain_role(SSE, InA)},
    };
    for (int c = 0; c < 4; ++c) {
      v.push_back({chain_role(Chain(c), InA), chain_role(Chain(c), InB)});
      v.push_back({chain_role(Chain(c), InB), chain_role(Chain(c), Conn)});
    }
    return v;
  }();
  return es;
}

/// Nodes of the binary tree are heap-indexed: root 1, children 2s and 2s+1.
struct ConstructionGraph {
  int ell = 0;
  int height = 0;            // h(l), the depth of the tree
  std::int32_t nodes = 0;    // 2^height - 1
  IntervalSystem intervals;
  OrderedGraph graph;        // vertices labelled (node - 1) * 16 + role + 1
  std::int64_t gadget_edge_count = 0, tree_edge_count = 0, rib_count = 0;

  static Vertex vertex(std::int32_t node, int role) { return (node - 1) * kGadgetSize + role + 1; }
  static std::int32_t node_of(Vertex v) { return (v - 1) / kGadgetSize + 1; }
  static int role_of(Vertex v) { return (v - 1) % kGadgetSize; }
  static int node_depth(std::int32_t node) { return std::bit_width(static_cast<std::uint32_t>(node)); }
  static int depth(Vertex v) { return node_depth(node_of(v)); }
  bool is_leaf(std::int32_t node) const { return node_depth(node) == height; }

  /// a is an ancestor of b, or a == b.
  static bool ancestor_or_self(std::int32_t a, std::int32_t b) {
    const int da = node_depth(a), db = node_depth(b);
    return da <= db && (b >> (db - da)) == a;
  }

  enum class EdgeKind { Gadget, Tree, Rib };
  static EdgeKind classify(Vertex u, Vertex v) {
    const auto a = node_of(u), b = node_of(v);
    if (a == b) return EdgeKind::Gadget;
    if (a == b / 2 || b == a / 2) return EdgeKind::Tree;
    return EdgeKind::Rib;
  }
};

/// Builds G_l for l in [1, 3].
inline ConstructionGraph build_construction(int ell) {
  if (ell < 1 || ell > kMaxConstructionEll)
    throw invalid_input("construction supports l in [1, " + std::to_string(kMaxConstructionEll) + "]");
  ConstructionGraph c;
  c.ell = ell;
  c.height = static_cast<int>(h_fn(ell));
  c.nodes = (std::int32_t{1} << c.height) - 1;
  c.intervals = build_intervals(ell);
  using C = ConstructionGraph;

  std::vector<Edge> es;
  for (std::int32_t s = 1; s <= c.nodes; ++s) {
    for (auto [a, b] : gadget_edges()) es.push_back({C::vertex(s, a), C::vertex(s, b)});
    c.gadget_edge_count += static_cast<std::int64_t>(gadget_edges().size());
    if (c.is_leaf(s)) continue;
    const std::int32_t s1 = 2 * s, s2 = 2 * s + 1;
    es.push_back({C::vertex(s, chain_role(SSW, Conn)), C::vertex(s1, RightOut)});
    es.push_back({C::vertex(s, chain_role(NWSW, Conn)), C::vertex(s1, LeftOut)});
    es.push_back({C::vertex(s, chain_role(SSE, Conn)), C::vertex(s2, LeftOut)});
    es.push_back({C::vertex(s, chain_role(NESE, Conn)), C::vertex(s2, RightOut)});
    c.tree_edge_count += 4;
  }
  for (const auto& iv : c.intervals.intervals) {
    const auto di = static_cast<int>(iv.i), dj = static_cast<int>(iv.j);
    for (std::int32_t s = std::int32_t{1} << (di - 1); s < (std::int32_t{1} << di); ++s) {
      const std::int32_t first = s << (dj - di), count = std::int32_t{1} << (dj - di);
      for (std::int32_t t = first; t < first + count; ++t)
        for (int ch = 0; ch < 4; ++ch) {
          es.push_back({C::vertex(s, RightOut), C::vertex(t, chain_role(Chain(ch), InB))});
          es.push_back({C::vertex(s, LeftOut), C::vertex(t, chain_role(Chain(ch), InA))});
          c.rib_count += 2;
        }
    }
  }
  c.graph = OrderedGraph(c.nodes * kGadgetSize, std::move(es));
  return c;
}

/// Every edge joins comparable nodes, and edges between distinct gadgets join
/// distinct depths.
inline bool check_edge_order(const ConstructionGraph& c) {
  using C = ConstructionGraph;
  for (const auto& e : c.graph.edges()) {
    const auto a = C::node_of(e.u), b = C::node_of(e.v);
    if (!C::ancestor_or_self(a, b) && !C::ancestor_or_self(b, a)) return false;
    if (a != b && C::node_depth(a) == C::node_depth(b)) return false;
  }
  return true;
}

namespace detail {

inline void ham_path_rec(const ConstructionGraph& c, std::int32_t s, std::vector<Vertex>& out) {
  using C = ConstructionGraph;
  auto put = [&](int role) { out.push_back(C::vertex(s, role)); };
  put(LeftOut);
  put(LeftTop);
  put(chain_role(NWSW, InA));
  put(chain_role(NWSW, InB));
  put(chain_role(NWSW, Conn));
  if (!c.is_leaf(s)) ham_path_rec(c, 2 * s, out);
  put(chain_role(SSW, Conn));
  put(chain_role(SSW, InB));
  put(chain_role(SSW, InA));
  put(chain_role(SSE, InA));
  put(chain_role(SSE, InB));
  put(chain_role(SSE, Conn));
  if (!c.is_leaf(s)) ham_path_rec(c, 2 * s + 1, out);
  put(chain_role(NESE, Conn));
  put(chain_role(NESE, InB));
  put(chain_role(NESE, InA));
  put(RightTop);
  put(RightOut);
}

}  // namespace detail

struct HamPathReport {
  bool visits_all_once = false;
  bool consecutive_adjacent = false;
  bool endpoints_ok = false;
  std::int64_t ribs_used = -1;
  bool ok() const { return visits_all_once && consecutive_adjacent && endpoints_ok && ribs_used == 0; }
};

inline HamPathReport validate_ham_path(const ConstructionGraph& c, const std::vector<Vertex>& path) {
  using C = ConstructionGraph;
  HamPathReport r;
  const Vertex n = c.graph.order();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  r.visits_all_once = static_cast<Vertex>(path.size()) == n;
  for (Vertex v : path) {
    if (v < 1 || v > n || seen[v]) {
      r.visits_all_once = false;
      break;
    }
    seen[v] = 1;
  }
  r.consecutive_adjacent = true;
  r.ribs_used = 0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (!c.graph.adjacent(path[k - 1], path[k])) r.consecutive_adjacent = false;
    else if (C::classify(path[k - 1], path[k]) == C::EdgeKind::Rib) ++r.ribs_used;
  }
  r.endpoints_ok = !path.empty() && path.front() == C::vertex(1, LeftOut) &&
                   path.back() == C::vertex(1, RightOut);
  return r;
}

/// The canonical rib-free Hamiltonian path from the root's left out-port to its
/// right out-port. Throws construction_error if it fails validation.
inline std::vector<Vertex> ham_path(const ConstructionGraph& c) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(c.graph.order()));
  detail::ham_path_rec(c, 1, out);
  if (!validate_ham_path(c, out).ok()) throw construction_error("canonical Hamiltonian path is invalid");
  return out;
}

/// pos[v] = position of construction vertex v along the path (1-based).
inline std::vector<Vertex> path_positions(const std::vector<Vertex>& path) {
  std::vector<Vertex> pos(path.size() + 1, 0);
  for (std::size_t k = 0; k < path.size(); ++k) pos[path[k]] = static_cast<Vertex>(k + 1);
  return pos;
}

/// Relabels G_l by position along `path`.
inline TracedGraph to_traced(const ConstructionGraph& c, const std::vector<Vertex>& path) {
  const auto pos = path_positions(path);
  std::vector<Edge> es;
  es.reserve(c.graph.size());
  for (const auto& e : c.graph.edges()) es.push_back({pos[e.u], pos[e.v]});
  return TracedGraph(OrderedGraph(c.graph.order(), std::move(es)));
}

struct DegeneracyResult {
  std::vector<Vertex> order;  // removal order
  Vertex degeneracy = 0;      // largest degree at removal time
};

/// Smallest-last elimination (Batagelj-Zaversnik bucket queue). Each vertex is
/// removed with at most `degeneracy` neighbours still present.
inline DegeneracyResult degeneracy_order(const OrderedGraph& g) {
  const Vertex n = g.order();
  DegeneracyResult res;
  if (n == 0) return res;
  Vertex maxdeg = 0;
  std::vector<Vertex> deg(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) maxdeg = std::max(maxdeg, deg[v] = g.degree(v));
  std::vector<Vertex> bin(static_cast<std::size_t>(maxdeg) + 1, 0);
  std::vector<Vertex> vert(static_cast<std::size_t>(n)), pos(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) ++bin[deg[v]];
  for (Vertex d = 0, start = 0; d <= maxdeg; ++d) {
    const Vertex num = bin[d];
    bin[d] = start;
    start += num;
  }
  for (Vertex v = 1; v <= n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (Vertex d = maxdeg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  for (Vertex i = 0; i < n; ++i) {
    const Vertex v = vert[i];
    res.order.push_back(v);
    res.degeneracy = std::max(res.degeneracy, deg[v]);
    for (Vertex u : g.neighbors(v)) {
      if (deg[u] <= deg[v]) continue;
      const Vertex du = deg[u], pu = pos[u], pw = bin[du], w = vert[pw];
      if (u != w) {
        pos[u] = pw;
        vert[pu] = w;
        pos[w] = pu;
        vert[pw] = u;
      }
      ++bin[du];
      --deg[u];
    }
  }
  return res;
}

/// Independent check of an elimination order: every vertex has at most k
/// neighbours that come later.
inline bool verify_elimination_order(const OrderedGraph& g, const std::vector<Vertex>& order, Vertex k) {
  const Vertex n = g.order();
  if (static_cast<Vertex>(order.size()) != n) return false;
  std::vector<Vertex> rank(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    if (v < 1 || v > n || rank[v] != -1) return false;
    rank[v] = static_cast<Vertex>(i);
  }
  for (Vertex v = 1; v <= n; ++v) {
    Vertex later = 0;
    for (Vertex u : g.neighbors(v)) later += rank[u] > rank[v];
    if (later > k) return false;
  }
  return true;
}

inline std::optional<std::vector<Vertex>> check_two_degenerate(const OrderedGraph& g) {
  auto r = degeneracy_order(g);
  if (r.degeneracy > 2) return std::nullopt;
  return std::move(r.order);
}

/// Star decomposition of G_l - E(P) in path coordinates: each out-port with its
/// surviving gadget edge and its ribs, plus the two connector pairs of every
/// internal gadget. Stars are listed by depth of their centre, out-ports first.
inline StarForest lowerbound_star_forest(const ConstructionGraph& c, const std::vector<Vertex>& pos) {
  using C = ConstructionGraph;
  StarForest f{c.graph.order(), {}};
  auto make = [&](Vertex center, std::vector<Vertex> leaves) {
    OrientedStar s;
    s.center = pos[center];
    for (Vertex x : leaves) s.leaves.push_back(pos[x]);
    std::sort(s.leaves.begin(), s.leaves.end());
    if (s.leaves.front() < s.center && s.leaves.back() > s.center)
      throw construction_error("out-port star is not one-sided");
    s.orientation = s.leaves.front() > s.center ? Orientation::Right : Orientation::Left;
    f.stars.push_back(std::move(s));
  };
  // rib_target[d] = depth receiving ribs from depth d, or 0.
  std::vector<int> rib_target(static_cast<std::size_t>(c.height) + 1, 0);
  for (const auto& iv : c.intervals.intervals) rib_target[iv.i] = static_cast<int>(iv.j);

  for (int d = 1; d <= c.height; ++d) {
    const std::int32_t lo = std::int32_t{1} << (d - 1), hi = std::int32_t{1} << d;
    for (std::int32_t s = lo; s < hi; ++s) {
      std::vector<Vertex> left{C::vertex(s, RightTop)}, right{C::vertex(s, LeftTop)};
      if (const int j = rib_target[d]) {
        const std::int32_t first = s << (j - d), count = std::int32_t{1} << (j - d);
        for (std::int32_t t = first; t < first + count; ++t)
          for (int ch = 0; ch < 4; ++ch) {
            left.push_back(C::vertex(t, chain_role(Chain(ch), InA)));
            right.push_back(C::vertex(t, chain_role(Chain(ch), InB)));
          }
      }
      make(C::vertex(s, LeftOut), std::move(left));
      make(C::vertex(s, RightOut), std::move(right));
    }
    if (d == c.height) continue;
    for (std::int32_t s = lo; s < hi; ++s) {
      make(C::vertex(s, chain_role(NWSW, Conn)), {C::vertex(s, chain_role(SSW, Conn))});
      make(C::vertex(s, chain_role(SSE, Conn)), {C::vertex(s, chain_role(NESE, Conn))});
    }
  }
  return f;
}

/// Certifies that G_l - E(P) is a constellation: the explicit decomposition must
/// cover the pattern graph exactly, and ordering stars by centre depth must
/// satisfy the witness condition. Throws construction_error otherwise.
inline ConstellationWitness pattern_is_constellation(const ConstructionGraph& c,
                                                     const std::vector<Vertex>& path,
                                                     const TracedGraph& traced) {
  const auto pos = path_positions(path);
  ConstellationWitness w{lowerbound_star_forest(c, pos), {}};
  w.order.resize(w.forest.stars.size());
  for (std::size_t i = 0; i < w.order.size(); ++i) w.order[i] = i;
  if (!(forest_graph(w.forest) == traced.pattern_graph()))
    throw construction_error("star decomposition does not match the pattern graph");
  if (!check_witness_fast(w.forest, w.order))
    throw construction_error("depth order violates the witness condition");
  return w;
}

/// Depths that start an interval, with the interval's rank.
inline std::vector<std::pair<int, int>> source_depths(const IntervalSystem& sys) {
  std::vector<std::pair<int, int>> out;
  for (const auto& iv : sys.intervals) out.push_back({static_cast<int>(iv.i), iv.rank});
  std::sort(out.begin(), out.end());
  return out;
}

/// Rank of `node` if it is a source (its depth starts an interval).
inline std::optional<int> source_rank(const ConstructionGraph& c, std::int32_t node) {
  const int d = ConstructionGraph::node_depth(node);
  for (const auto& iv : c.intervals.intervals)
    if (iv.i == d) return iv.rank;
  return std::nullopt;
}

/// Gadget-by-gadget post-order (children first; out-ports last within a gadget),
/// in path coordinates. Eliminating G_l in this order gives narrow tree
/// decompositions.
inline std::vector<Vertex> construction_elimination_order(const ConstructionGraph& c,
                                                          const std::vector<Vertex>& pos) {
  using C = ConstructionGraph;
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(c.graph.order()));
  std::vector<std::pair<std::int32_t, bool>> st{{1, false}};
  while (!st.empty()) {
    auto [s, expanded] = st.back();
    st.pop_back();
    if (!expanded && !c.is_leaf(s)) {
      st.push_back({s, true});
      st.push_back({2 * s + 1, false});
      st.push_back({2 * s, false});
      continue;
    }
    for (int r = 4; r < kGadgetSize; ++r) order.push_back(pos[C::vertex(s, r)]);
    for (int r : {LeftTop, RightTop, LeftOut, RightOut}) order.push_back(pos[C::vertex(s, r)]);
  }
  return order;
}

}  // namespace ordpat
