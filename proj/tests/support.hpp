#pragma once

// Shared generators and helpers for the test binaries.

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ordpat/ordpat.hpp"

namespace ordpat::testing {

using Rng = std::mt19937_64;

inline std::string golden_path(const std::string& name) { return std::string(ORDPAT_GOLDEN_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline OrderedGraph random_graph(Rng& rng, Vertex n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> es;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (coin(rng)) es.push_back({u, v});
  return OrderedGraph(n, std::move(es));
}

/// Path edges plus each non-consecutive pair with probability `density`.
inline TracedGraph random_traced(Rng& rng, Vertex n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> es;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 2; v <= n; ++v)
      if (coin(rng)) es.push_back({u, v});
  return TracedGraph::from_pattern_edges(n, std::move(es));
}

/// Random constellation of t one-sided r-stars built from the inductive
/// definition: anchored star first or last, or a concatenation.
inline OrderedGraph random_constellation(Rng& rng, int t, int r) {
  if (t == 1) {
    std::vector<Edge> es;
    const bool right = std::bernoulli_distribution(0.5)(rng);
    for (int j = 1; j <= r; ++j) es.push_back(right ? Edge{1, j + 1} : Edge{j, r + 1});
    return OrderedGraph(r + 1, std::move(es));
  }
  const int choice = std::uniform_int_distribution<int>(0, 2)(rng);
  if (choice == 2) {
    const int a = std::uniform_int_distribution<int>(1, t - 1)(rng);
    return concatenate(random_constellation(rng, a, r), random_constellation(rng, t - a, r));
  }
  const OrderedGraph rest = random_constellation(rng, t - 1, r);
  const Vertex k = rest.order();
  // Insert the star's centre at the front and its leaves at random gaps of the rest.
  std::vector<int> slot(static_cast<std::size_t>(r));
  for (auto& s : slot) s = std::uniform_int_distribution<int>(0, k)(rng);
  std::sort(slot.begin(), slot.end());
  std::vector<Vertex> map_rest(static_cast<std::size_t>(k) + 1);
  std::vector<Vertex> leaves;
  Vertex pos = 1, next = 0;
  std::size_t si = 0;
  for (Vertex v = 0; v <= k; ++v) {
    while (si < slot.size() && slot[si] == v) leaves.push_back(++pos), ++si;
    if (v < k) map_rest[++next] = ++pos;
  }
  std::vector<Edge> es;
  for (Vertex leaf : leaves) es.push_back({1, leaf});
  for (const auto& e : rest.edges()) es.push_back({map_rest[e.u], map_rest[e.v]});
  OrderedGraph g(k + r + 1, std::move(es));
  return choice == 0 ? g : reverse(g);
}

// Every star forest on n vertices, from idempotent maps x -> centre(x).
inline std::vector<OrderedGraph> all_star_forests(Vertex n) {
  std::set<std::vector<Edge>> seen;
  std::vector<OrderedGraph> out;
  for (std::uint32_t centres = 0; centres < (1u << n); ++centres) {
    std::vector<Vertex> cs, others;
    for (Vertex v = 1; v <= n; ++v) (centres >> (v - 1) & 1 ? cs : others).push_back(v);
    if (cs.empty()) continue;
    // Each non-centre picks a centre or stays isolated (index cs.size()).
    std::vector<std::size_t> pick(others.size(), 0);
    while (true) {
      std::vector<Edge> es;
      for (std::size_t i = 0; i < others.size(); ++i)
        if (pick[i] < cs.size()) es.push_back({std::min(others[i], cs[pick[i]]), std::max(others[i], cs[pick[i]])});
      std::sort(es.begin(), es.end());
      if (seen.insert(es).second) out.emplace_back(n, es);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] > cs.size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return out;
}

// Star forest whose stars are usually one-sided, so both verdicts occur often.
inline OrderedGraph random_one_sided_forest(Rng& rng, Vertex n) {
  std::vector<Vertex> vs(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i) vs[i] = i + 1;
  std::shuffle(vs.begin(), vs.end(), rng);
  std::vector<Edge> es;
  std::size_t i = 0;
  while (i + 1 < vs.size()) {
    const std::size_t sz = std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(vs.size() - i, 4))(rng);
    std::vector<Vertex> block(vs.begin() + static_cast<long>(i), vs.begin() + static_cast<long>(i + sz));
    std::sort(block.begin(), block.end());
    const int mode = std::uniform_int_distribution<int>(0, 9)(rng);
    const std::size_t c = mode < 5 ? 0 : mode < 9 ? sz - 1 : std::uniform_int_distribution<std::size_t>(0, sz - 1)(rng);
    for (std::size_t k = 0; k < sz; ++k)
      if (k != c) es.push_back({std::min(block[k], block[c]), std::max(block[k], block[c])});
    i += sz;
  }
  return OrderedGraph(n, std::move(es));
}

}  // namespace ordpat::testing
