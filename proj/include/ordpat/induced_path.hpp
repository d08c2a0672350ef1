#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ordpat/ordered_graph.hpp"

namespace ordpat {

struct InducedPathResult {
  Vertex length = 0;             // number of vertices on the best path found
  std::vector<Vertex> witness;   // the lexicographically least path of that length
  bool reached_cap = false;      // true iff the search stopped at the cap (true max >= cap)
  std::uint64_t nodes = 0;       // DFS states visited
};

/// Exhaustive search for a longest induced path, truncated at `cap` vertices.
/// Paths are grown from one endpoint; starts and extensions are tried in
/// increasing order and only strictly longer paths replace the incumbent, so the
/// witness is the lexicographically least longest path.
inline InducedPathResult longest_induced_path_oracle(const OrderedGraph& g, Vertex cap) {
  if (cap < 1) throw invalid_input("cap must be at least 1");
  InducedPathResult best;
  const Vertex n = g.order();
  if (n == 0) return best;

  // cnt[x] = number of path vertices in the closed neighbourhood of x. A vertex w
  // adjacent to the current end extends the path inducedly iff cnt[w] == 1.
  std::vector<std::int32_t> cnt(static_cast<std::size_t>(n) + 1, 0);
  auto add = [&](Vertex w, int d) {
    cnt[w] += d;
    for (Vertex x : g.neighbors(w)) cnt[x] += d;
  };

  struct Frame {
    Vertex v;
    std::size_t next;  // index into neighbors(v) of the next extension to try
  };
  std::vector<Frame> stack;
  std::vector<Vertex> path;

  for (Vertex s = 1; s <= n && !best.reached_cap; ++s) {
    add(s, +1);
    path.assign(1, s);
    stack.assign(1, {s, 0});
    ++best.nodes;
    if (best.length < 1) {
      best.length = 1;
      best.witness = path;
    }
    while (!stack.empty()) {
      if (static_cast<Vertex>(path.size()) >= cap) {
        best.reached_cap = true;
        break;
      }
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      while (f.next < nb.size() && cnt[nb[f.next]] != 1) ++f.next;
      if (f.next == nb.size()) {
        add(f.v, -1);
        path.pop_back();
        stack.pop_back();
        continue;
      }
      const Vertex w = nb[f.next++];
      add(w, +1);
      path.push_back(w);
      stack.push_back({w, 0});
      ++best.nodes;
      if (static_cast<Vertex>(path.size()) > best.length) {
        best.length = static_cast<Vertex>(path.size());
        best.witness = path;
      }
    }
    // Unwind whatever is left after an early stop.
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) add(it->v, -1);
    stack.clear();
  }
  return best;
}

inline bool is_induced_path(const OrderedGraph& g, std::span<const Vertex> p) {
  if (p.empty()) return false;
  for (Vertex v : p)
    if (v < 1 || v > g.order()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return false;
      const bool adj = g.adjacent(p[i], p[j]);
      if (adj != (j == i + 1)) return false;
    }
  return true;
}

/// True iff p is strictly increasing and induces a path in G with edges
/// exactly between consecutive entries.
inline bool validate_increasing_induced_path(const TracedGraph& g, std::span<const Vertex> p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] <= p[i - 1]) return false;
  return is_induced_path(g.graph(), p);
}

}  // namespace ordpat
