#pragma once

// Star forests, constellation recognition and the canonical constellations.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ordpat/ordered_graph.hpp"

namespace ordpat {

enum class Orientation { Left, Right };

struct OrientedStar {
  Vertex center = 0;
  std::vector<Vertex> leaves;  // sorted
  Orientation orientation = Orientation::Right;

  std::size_t arity() const { return leaves.size(); }
  Vertex first() const { return std::min(center, leaves.front()); }
  Vertex last() const { return std::max(center, leaves.back()); }
  bool outside(Vertex v) const { return v < first() || v > last(); }

  /// Moves the centre of a 1-star to its other endpoint.
  void flip() {
    std::swap(center, leaves.front());
    orientation = center < leaves.front() ? Orientation::Right : Orientation::Left;
  }

  friend bool operator==(const OrientedStar&, const OrientedStar&) = default;
};

struct StarForest {
  Vertex n = 0;
  std::vector<OrientedStar> stars;
};

/// stars[order[0]], stars[order[1]], ... satisfies: every earlier centre lies
/// outside the vertex span of every later star. `forest` records the centre
/// chosen for each 1-star.
struct ConstellationWitness {
  StarForest forest;
  std::vector<std::size_t> order;
};

/// Splits H into its star components. Isolated vertices belong to no star;
/// a single edge becomes a Right 1-star centred at its smaller endpoint.
inline std::optional<StarForest> decompose_star_forest(const OrderedGraph& h) {
  StarForest f{h.order(), {}};
  std::vector<char> seen(static_cast<std::size_t>(h.order()) + 1, 0);
  for (Vertex v = 1; v <= h.order(); ++v) {
    if (seen[v] || h.degree(v) == 0) continue;
    // Locate the centre: v itself if it has degree >= 2, else its unique neighbour
    // (unless the component is a single edge).
    Vertex c = v;
    if (h.degree(v) == 1) {
      const Vertex w = h.neighbors(v).front();
      if (h.degree(w) >= 2) c = w;
    }
    OrientedStar s;
    s.center = c;
    for (Vertex x : h.neighbors(c)) {
      if (h.degree(x) != 1) return std::nullopt;  // not a star component
      s.leaves.push_back(x);
    }
    if (s.leaves.front() < c && s.leaves.back() > c) return std::nullopt;
    s.orientation = s.leaves.front() > c ? Orientation::Right : Orientation::Left;
    seen[c] = 1;
    for (Vertex x : s.leaves) seen[x] = 1;
    f.stars.push_back(std::move(s));
  }
  return f;
}

inline OrderedGraph forest_graph(const StarForest& f) {
  std::vector<Edge> es;
  for (const auto& s : f.stars)
    for (Vertex x : s.leaves) es.push_back({s.center, x});
  return OrderedGraph(f.n, std::move(es));
}

/// Pairwise check of the witness condition, O(t^2).
inline bool check_witness(const ConstellationWitness& w) {
  const auto& st = w.forest.stars;
  if (w.order.size() != st.size()) return false;
  std::vector<char> used(st.size(), 0);
  for (std::size_t i : w.order) {
    if (i >= st.size() || used[i]) return false;
    used[i] = 1;
  }
  for (std::size_t a = 0; a < w.order.size(); ++a)
    for (std::size_t b = a + 1; b < w.order.size(); ++b)
      if (!st[w.order[b]].outside(st[w.order[a]].center)) return false;
  return true;
}

/// Same condition in O(t log n): walking the order, no earlier centre may fall
/// inside the current star's span.
inline bool check_witness_fast(const StarForest& f, const std::vector<std::size_t>& order) {
  if (order.size() != f.stars.size()) return false;
  std::vector<std::int32_t> tree(static_cast<std::size_t>(f.n) + 1, 0);
  auto prefix = [&](Vertex i) {
    std::int64_t s = 0;
    for (; i > 0; i -= i & -i) s += tree[i];
    return s;
  };
  std::vector<char> used(f.stars.size(), 0);
  for (std::size_t idx : order) {
    if (idx >= f.stars.size() || used[idx]) return false;
    used[idx] = 1;
    const auto& s = f.stars[idx];
    if (prefix(s.last()) - prefix(s.first() - 1) != 0) return false;
    for (Vertex i = s.center; i <= f.n; i += i & -i) ++tree[i];
  }
  return true;
}

/// With all centres fixed: A may precede B iff centre(A) is outside B. Pairs with
/// one allowed direction become forced arcs; the witness is the Kahn order
/// preferring the smallest star index.
inline std::optional<std::vector<std::size_t>> order_by_star_condition(const StarForest& f) {
  const std::size_t t = f.stars.size();
  std::vector<std::vector<std::size_t>> out(t);
  std::vector<std::size_t> indeg(t, 0);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = a + 1; b < t; ++b) {
      const bool ab = f.stars[b].outside(f.stars[a].center);
      const bool ba = f.stars[a].outside(f.stars[b].center);
      if (!ab && !ba) return std::nullopt;
      if (ab && !ba) out[a].push_back(b), ++indeg[b];
      if (ba && !ab) out[b].push_back(a), ++indeg[a];
    }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < t; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t a = ready.top();
    ready.pop();
    order.push_back(a);
    for (std::size_t b : out[a])
      if (--indeg[b] == 0) ready.push(b);
  }
  if (order.size() != t) return std::nullopt;
  return order;
}

namespace detail {

// Peels the forest following the inductive definition: remove a star centred at
// the first or last vertex, or split a concatenation. Each move is safe because
// every sub-forest of a constellation is a constellation. Fixes the centres of
// 1-stars on the way. Returns false if stuck.
inline bool peel_constellation(StarForest& f) {
  std::vector<std::size_t> idx(f.stars.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return f.stars[a].first() < f.stars[b].first(); });
  std::vector<std::vector<std::size_t>> work{idx};
  while (!work.empty()) {
    auto cur = std::move(work.back());
    work.pop_back();
    while (!cur.empty()) {
      auto& head = f.stars[cur.front()];
      if (head.arity() == 1 && head.center != head.first()) head.flip();
      if (head.center == head.first()) {
        cur.erase(cur.begin());
        continue;
      }
      auto tail_it = std::max_element(cur.begin(), cur.end(), [&](std::size_t a, std::size_t b) {
        return f.stars[a].last() < f.stars[b].last();
      });
      auto& tail = f.stars[*tail_it];
      if (tail.arity() == 1 && tail.center != tail.last()) tail.flip();
      if (tail.center == tail.last()) {
        cur.erase(tail_it);
        continue;
      }
      Vertex reach = 0;
      std::size_t cut = 0;
      for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
        reach = std::max(reach, f.stars[cur[k]].last());
        if (reach < f.stars[cur[k + 1]].first()) {
          cut = k + 1;
          break;
        }
      }
      if (cut == 0) return false;
      work.emplace_back(cur.begin() + static_cast<std::ptrdiff_t>(cut), cur.end());
      cur.resize(cut);
    }
  }
  return true;
}

}  // namespace detail

/// Returns a witness iff H is a star forest of left/right stars satisfying the
/// ordering condition for some choice of centres of its 1-stars.
inline std::optional<ConstellationWitness> is_constellation(const OrderedGraph& h) {
  auto f = decompose_star_forest(h);
  if (!f) return std::nullopt;
  if (!detail::peel_constellation(*f)) return std::nullopt;
  auto order = order_by_star_condition(*f);
  if (!order) return std::nullopt;
  return ConstellationWitness{std::move(*f), std::move(*order)};
}

/// Direct memoised recursion on the inductive definition, trying every option.
/// Exponential in the number of stars; intended as an oracle (at most 24 stars).
inline bool is_constellation_inductive(const OrderedGraph& h) {
  auto f = decompose_star_forest(h);
  if (!f) return false;
  const auto& st = f->stars;
  if (st.size() > 24) throw precondition_error("inductive recognizer limited to 24 stars");
  const std::uint32_t full = st.empty() ? 0u : (std::uint32_t{1} << st.size()) - 1;
  std::unordered_map<std::uint32_t, bool> memo;

  auto rec = [&](auto&& self, std::uint32_t mask) -> bool {
    if (mask == 0) return true;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    bool ok = false;
    Vertex lo = f->n + 1, hi = 0;
    for (std::size_t i = 0; i < st.size(); ++i)
      if (mask >> i & 1) lo = std::min(lo, st[i].first()), hi = std::max(hi, st[i].last());
    for (std::size_t i = 0; i < st.size() && !ok; ++i) {
      if (!(mask >> i & 1)) continue;
      const bool one = st[i].arity() == 1;
      const bool centred_first = st[i].first() == lo && (one || st[i].center == lo);
      const bool centred_last = st[i].last() == hi && (one || st[i].center == hi);
      if (centred_first || centred_last) ok = self(self, mask & ~(std::uint32_t{1} << i));
    }
    for (Vertex c = lo; c < hi && !ok; ++c) {
      std::uint32_t left = 0, right = 0;
      bool crosses = false;
      for (std::size_t i = 0; i < st.size() && !crosses; ++i) {
        if (!(mask >> i & 1)) continue;
        if (st[i].last() <= c) left |= std::uint32_t{1} << i;
        else if (st[i].first() > c) right |= std::uint32_t{1} << i;
        else crosses = true;
      }
      if (!crosses && left && right) ok = self(self, left) && self(self, right);
    }
    memo[mask] = ok;
    return ok;
  };
  return rec(rec, full);
}

enum class ConstellationShape { Nested, Sequential };

inline OrderedGraph build_tr_constellation(Vertex t, Vertex r, ConstellationShape shape) {
  if (t < 1 || r < 1) throw invalid_input("t and r must be positive");
  std::vector<Edge> es;
  if (shape == ConstellationShape::Sequential) {
    for (Vertex k = 0; k < t; ++k) {
      const Vertex c = k * (r + 1) + 1;
      for (Vertex j = 1; j <= r; ++j) es.push_back({c, c + j});
    }
  } else {
    for (Vertex i = 1; i <= t; ++i)
      for (Vertex j = 1; j <= r; ++j) es.push_back({i, t + (i - 1) * r + j});
  }
  return OrderedGraph(t * (r + 1), std::move(es));
}

/// Position of leaf l_{i,j} (i != j) in the topological-minor pattern on t centres.
inline Vertex topminor_leaf(Vertex t, Vertex i, Vertex j) {
  const Vertex a = std::min(i, j), b = std::max(i, j);
  // Pairs (a, b) with a < b in lexicographic order; index of (a, b) counted from 0.
  const Vertex before = (a - 1) * t - (a - 1) * a / 2;
  const Vertex idx = before + (b - a - 1);
  return t + 1 + 2 * idx + (i < j ? 0 : 1);
}

/// Centres c_1..c_t first, then for each pair i < j in lexicographic order the two
/// consecutive leaves l_{i,j}, l_{j,i}; c_i is joined to every l_{i,j}.
inline OrderedGraph build_topminor_pattern(Vertex t) {
  if (t < 2) throw invalid_input("topological-minor pattern needs t >= 2");
  std::vector<Edge> es;
  for (Vertex i = 1; i <= t; ++i)
    for (Vertex j = 1; j <= t; ++j)
      if (i != j) es.push_back({i, topminor_leaf(t, i, j)});
  return OrderedGraph(t * t, std::move(es));
}

/// Given an embedding of the pattern on t centres into the pattern graph of G,
/// returns the t(t-1)/2 paths c_i, l_{i,j}, (path P), l_{j,i}, c_j, which form a
/// subdivision of K_t with branch vertices at the embedded centres.
inline std::vector<std::vector<Vertex>> subdivision_certificate(const TracedGraph& g,
                                                                const Embedding& e, Vertex t) {
  const OrderedGraph pattern = build_topminor_pattern(t);
  if (!is_embedding(g.pattern_graph(), pattern, e))
    throw precondition_error("not an embedding of the topological-minor pattern");
  auto at = [&](Vertex x) { return e.positions[x - 1]; };

  std::vector<std::vector<Vertex>> paths;
  std::vector<char> used(static_cast<std::size_t>(g.order()) + 1, 0);
  for (Vertex i = 1; i <= t; ++i) used[at(i)] = 2;
  for (Vertex i = 1; i <= t; ++i)
    for (Vertex j = i + 1; j <= t; ++j) {
      std::vector<Vertex> p{at(i)};
      for (Vertex v = at(topminor_leaf(t, i, j)); v <= at(topminor_leaf(t, j, i)); ++v) {
        if (used[v]) throw construction_error("subdivision paths are not internally disjoint");
        used[v] = 1;
        p.push_back(v);
      }
      p.push_back(at(j));
      for (std::size_t k = 1; k < p.size(); ++k)
        if (!g.adjacent(p[k - 1], p[k])) throw construction_error("subdivision path is broken");
      paths.push_back(std::move(p));
    }
  return paths;
}

inline nlohmann::json witness_to_json(const ConstellationWitness& w) {
  nlohmann::json stars = nlohmann::json::array();
  for (const auto& s : w.forest.stars)
    stars.push_back({{"center", s.center},
                     {"leaves", s.leaves},
                     {"orientation", s.orientation == Orientation::Left ? "L" : "R"}});
  return {{"stars", stars}, {"order", w.order}};
}

inline ConstellationWitness witness_from_json(const nlohmann::json& j, Vertex n) {
  ConstellationWitness w;
  w.forest.n = n;
  for (const auto& s : j.at("stars")) {
    OrientedStar st;
    st.center = s.at("center").get<Vertex>();
    st.leaves = s.at("leaves").get<std::vector<Vertex>>();
    std::sort(st.leaves.begin(), st.leaves.end());
    const std::string o = s.at("orientation").get<std::string>();
    if (o != "L" && o != "R") throw invalid_input("orientation must be \"L\" or \"R\"");
    st.orientation = o == "L" ? Orientation::Left : Orientation::Right;
    if (st.leaves.empty()) throw invalid_input("star without leaves");
    w.forest.stars.push_back(std::move(st));
  }
  w.order = j.at("order").get<std::vector<std::size_t>>();
  return w;
}

}  // namespace ordpat
