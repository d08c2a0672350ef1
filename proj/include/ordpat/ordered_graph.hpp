#pragma once

// Ordered graphs, traced graphs (graphs whose vertex order is a Hamiltonian
// path) and the basic operations on them. Vertices are 1-indexed throughout.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordpat/error.hpp"

namespace ordpat {

using Vertex = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A graph on vertices 1..n whose order is the index order.
class OrderedGraph {
 public:
  OrderedGraph() = default;

  /// Edges may be given in either orientation; they are stored as u < v.
  /// Throws invalid_input on out-of-range endpoints, self-loops or duplicates.
  OrderedGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw invalid_input("negative vertex count");
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 1 || e.v > n_)
        throw invalid_input("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") out of range [1," + std::to_string(n_) + "]");
      if (e.u == e.v) throw invalid_input("self-loop at vertex " + std::to_string(e.u));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw invalid_input("duplicate edge (" + std::to_string(dup->u) + "," +
                          std::to_string(dup->v) + ")");
    build_adjacency();
  }

  Vertex order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  Vertex degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(Vertex u, Vertex v) const {
    if (u < 1 || v < 1 || u > n_ || v > n_) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(static_cast<std::size_t>(n_) + 2, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(2 * edges_.size());
    std::vector<Vertex> fill(offsets_.begin(), offsets_.end() - 1);
    // edges_ is sorted by (u, v): every list receives its entries in increasing order
    // except the "v side", which is sorted afterwards.
    for (const auto& e : edges_) {
      adj_[fill[e.u]++] = e.v;
      adj_[fill[e.v]++] = e.u;
    }
    for (Vertex v = 1; v <= n_; ++v)
      std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
  }

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Vertex> offsets_ = {0, 0};
  std::vector<Vertex> adj_;
};

/// A graph presented together with the Hamiltonian path 1, 2, ..., n.
/// Stores the full edge set; the pattern graph G - E(P) is derived on demand.
class TracedGraph {
 public:
  TracedGraph() = default;

  explicit TracedGraph(OrderedGraph g) : g_(std::move(g)) {
    for (Vertex i = 1; i < g_.order(); ++i)
      if (!g_.adjacent(i, i + 1))
        throw invalid_input("traced graph is missing path edge (" + std::to_string(i) + "," +
                            std::to_string(i + 1) + ")");
  }

  /// Builds a traced graph from pattern edges only; the path edges are added.
  static TracedGraph from_pattern_edges(Vertex n, std::vector<Edge> pattern_edges) {
    for (auto& e : pattern_edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v == e.u + 1)
        throw invalid_input("pattern edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") coincides with a path edge");
    }
    for (Vertex i = 1; i < n; ++i) pattern_edges.push_back({i, i + 1});
    return TracedGraph(OrderedGraph(n, std::move(pattern_edges)));
  }

  Vertex order() const { return g_.order(); }
  const OrderedGraph& graph() const { return g_; }
  bool adjacent(Vertex u, Vertex v) const { return g_.adjacent(u, v); }
  std::span<const Vertex> neighbors(Vertex v) const { return g_.neighbors(v); }

  static bool is_path_edge(Vertex u, Vertex v) { return u - v == 1 || v - u == 1; }
  bool is_pattern_edge(Vertex u, Vertex v) const { return !is_path_edge(u, v) && adjacent(u, v); }

  std::size_t pattern_edge_count() const {
    return g_.size() - static_cast<std::size_t>(std::max<Vertex>(order() - 1, 0));
  }

  OrderedGraph pattern_graph() const {
    std::vector<Edge> es;
    es.reserve(pattern_edge_count());
    for (const auto& e : g_.edges())
      if (!is_path_edge(e.u, e.v)) es.push_back(e);
    return OrderedGraph(order(), std::move(es));
  }

  friend bool operator==(const TracedGraph& a, const TracedGraph& b) { return a.g_ == b.g_; }

 private:
  OrderedGraph g_;
};

/// A monotone injection of a k-vertex pattern into a host: positions[i] hosts
/// pattern vertex i+1.
struct Embedding {
  std::vector<Vertex> positions;

  /// Minimum distance between consecutive positions; host_order when k <= 1.
  Vertex gap(Vertex host_order) const {
    if (positions.size() <= 1) return host_order;
    Vertex g = positions[1] - positions[0];
    for (std::size_t i = 2; i < positions.size(); ++i)
      g = std::min(g, positions[i] - positions[i - 1]);
    return g;
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

inline OrderedGraph concatenate(const OrderedGraph& a, const OrderedGraph& b) {
  std::vector<Edge> es(a.edges().begin(), a.edges().end());
  es.reserve(a.size() + b.size());
  for (const auto& e : b.edges()) es.push_back({e.u + a.order(), e.v + a.order()});
  return OrderedGraph(a.order() + b.order(), std::move(es));
}

/// Order reversal: vertex i becomes n + 1 - i.
inline OrderedGraph reverse(const OrderedGraph& g) {
  std::vector<Edge> es;
  es.reserve(g.size());
  const Vertex n = g.order();
  for (const auto& e : g.edges()) es.push_back({n + 1 - e.v, n + 1 - e.u});
  return OrderedGraph(n, std::move(es));
}

/// True iff each vertex has all its neighbours before it or all after it.
inline bool is_one_sided(const OrderedGraph& h) {
  for (Vertex v = 1; v <= h.order(); ++v) {
    auto nb = h.neighbors(v);
    if (!nb.empty() && nb.front() < v && nb.back() > v) return false;
  }
  return true;
}

inline void check_slice_range(Vertex n, Vertex a, Vertex b) {
  if (a < 1 || b > n || a > b)
    throw invalid_input("slice [" + std::to_string(a) + "," + std::to_string(b) +
                        "] out of range for " + std::to_string(n) + " vertices");
}

/// Induced ordered subgraph on positions a..b, reindexed to 1..b-a+1.
inline OrderedGraph slice(const OrderedGraph& g, Vertex a, Vertex b) {
  check_slice_range(g.order(), a, b);
  std::vector<Edge> es;
  for (Vertex u = a; u <= b; ++u)
    for (Vertex v : g.neighbors(u))
      if (v > u && v <= b) es.push_back({u - a + 1, v - a + 1});
  return OrderedGraph(b - a + 1, std::move(es));
}

inline TracedGraph slice(const TracedGraph& g, Vertex a, Vertex b) {
  return TracedGraph(slice(g.graph(), a, b));
}

/// The half-graph fixture: path edges plus every (i, j) with i odd, j even, i < j.
inline TracedGraph gen_halfgraph(Vertex n) {
  if (n < 2) throw invalid_input("half-graph needs at least 2 vertices");
  std::vector<Edge> es;
  for (Vertex i = 1; i < n; ++i) es.push_back({i, i + 1});
  for (Vertex i = 1; i <= n; i += 2)
    for (Vertex j = i + 3; j <= n; j += 2) es.push_back({i, j});
  return TracedGraph(OrderedGraph(n, std::move(es)));
}

/// The path 1-2-...-n with no pattern edges.
inline TracedGraph gen_path(Vertex n) {
  if (n < 1) throw invalid_input("path needs at least 1 vertex");
  return TracedGraph::from_pattern_edges(n, {});
}

namespace detail {

struct PatternSearch {
  const OrderedGraph& host;
  const OrderedGraph& pattern;
  Vertex min_gap;
  std::vector<Vertex> pos;  // pos[i] hosts pattern vertex i (1-based; pos[0] unused)
  std::vector<std::vector<Vertex>> earlier;  // earlier[i]: pattern neighbours j < i

  bool extend(Vertex i) {
    const Vertex k = pattern.order();
    if (i > k) return true;
    const Vertex lo = i == 1 ? 1 : pos[i - 1] + min_gap;
    const Vertex hi = host.order() - (k - i) * min_gap;
    if (lo > hi) return false;
    if (earlier[i].empty()) {
      for (Vertex x = lo; x <= hi; ++x) {
        pos[i] = x;
        if (extend(i + 1)) return true;
      }
      return false;
    }
    // Enumerate candidates from the earlier neighbour with the smallest host degree.
    Vertex pivot = earlier[i].front();
    for (Vertex j : earlier[i])
      if (host.degree(pos[j]) < host.degree(pos[pivot])) pivot = j;
    auto nb = host.neighbors(pos[pivot]);
    for (auto it = std::lower_bound(nb.begin(), nb.end(), lo); it != nb.end() && *it <= hi; ++it) {
      const Vertex x = *it;
      bool ok = true;
      for (Vertex j : earlier[i])
        if (j != pivot && !host.adjacent(pos[j], x)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pos[i] = x;
      if (extend(i + 1)) return true;
    }
    return false;
  }
};

}  // namespace detail

/// Searches for an order-preserving embedding of `pattern` into `host` in which
/// consecutive pattern vertices are at least `min_gap` apart. Returns the
/// lexicographically least such embedding, or nullopt.
inline std::optional<Embedding> contains_pattern(const OrderedGraph& host,
                                                 const OrderedGraph& pattern, Vertex min_gap = 1) {
  if (pattern.order() < 1) throw invalid_input("pattern must have at least one vertex");
  if (min_gap < 1) throw invalid_input("min_gap must be positive");
  detail::PatternSearch s{host, pattern, min_gap, {}, {}};
  s.pos.assign(static_cast<std::size_t>(pattern.order()) + 1, 0);
  s.earlier.resize(static_cast<std::size_t>(pattern.order()) + 1);
  for (const auto& e : pattern.edges()) s.earlier[e.v].push_back(e.u);
  if (!s.extend(1)) return std::nullopt;
  return Embedding{{s.pos.begin() + 1, s.pos.end()}};
}

/// True iff `e` maps `pattern` monotonically into `host` preserving edges.
inline bool is_embedding(const OrderedGraph& host, const OrderedGraph& pattern, const Embedding& e) {
  if (e.positions.size() != static_cast<std::size_t>(pattern.order())) return false;
  for (std::size_t i = 0; i < e.positions.size(); ++i) {
    if (e.positions[i] < 1 || e.positions[i] > host.order()) return false;
    if (i > 0 && e.positions[i] <= e.positions[i - 1]) return false;
  }
  for (const auto& pe : pattern.edges())
    if (!host.adjacent(e.positions[pe.u - 1], e.positions[pe.v - 1])) return false;
  return true;
}

}  // namespace ordpat
