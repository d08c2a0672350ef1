#pragma once

// Stretch, successor, and the peel recursion: given a traced graph G and a
// (t,r)-constellation H, produce either an embedding of H in G - E(P) or an
// increasing induced path of G, together with a checkable certificate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordpat/bigreal.hpp"
#include "ordpat/bounds.hpp"
#include "ordpat/constellation.hpp"
#include "ordpat/error.hpp"
#include "ordpat/induced_path.hpp"
#include "ordpat/ordered_graph.hpp"

namespace ordpat {

enum class OutcomeKind { P1, P2, P3 };
enum class Anchor { Start, End };

inline const char* kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::P1: return "P1";
    case OutcomeKind::P2: return "P2";
    case OutcomeKind::P3: return "P3";
  }
  return "?";
}

/// P1: increasing induced path anchored at the first (Start) or last (End)
/// vertex. P2: unanchored increasing induced path. P3: embedding of H in the
/// pattern graph with the reported gap.
struct PropOutcome {
  OutcomeKind kind = OutcomeKind::P2;
  Anchor anchor = Anchor::Start;
  std::vector<Vertex> path;
  Embedding embedding;
  Vertex gap = 0;
};

struct StretchInfo {
  Vertex value = 0;
  Vertex succ_lo = 0, succ_hi = 0;  // successor window, 1-based and inclusive
};

namespace detail {

// A window [lo, hi] of G read forwards or backwards; local indices run 1..len.
struct View {
  const TracedGraph* g = nullptr;
  Vertex lo = 1, hi = 1;
  bool rev = false;

  Vertex len() const { return hi - lo + 1; }
  Vertex global(Vertex i) const { return rev ? hi - i + 1 : lo + i - 1; }
  Vertex local(Vertex v) const { return rev ? hi - v + 1 : v - lo + 1; }
  View sub(Vertex a, Vertex b) const {
    const Vertex x = global(a), y = global(b);
    return {g, std::min(x, y), std::max(x, y), rev};
  }
  /// Local indices of the neighbours of local vertex 1 inside the window, sorted.
  std::vector<Vertex> first_neighbors() const {
    std::vector<Vertex> out;
    for (Vertex u : g->neighbors(global(1)))
      if (u >= lo && u <= hi) out.push_back(local(u));
    std::sort(out.begin(), out.end());
    return out;
  }
};

// a_0 = 1, a_1..a_d the neighbours of the first vertex, a_{d+1} = len.
inline StretchInfo view_stretch(const View& v, const std::vector<Vertex>& nb) {
  if (v.len() < 2) throw precondition_error("stretch needs at least two vertices");
  std::vector<Vertex> a;
  a.reserve(nb.size() + 2);
  a.push_back(1);
  a.insert(a.end(), nb.begin(), nb.end());
  a.push_back(v.len());
  StretchInfo s;
  Vertex best = -1;
  std::size_t bi = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const Vertex d = a[i + 1] - a[i];
    if (i >= 1) s.value = std::max(s.value, d);
    if (d > best) best = d, bi = i;
  }
  s.succ_lo = a[bi];
  s.succ_hi = std::max(a[bi], a[bi + 1] - 1);
  return s;
}

inline std::optional<Vertex> first_in(const std::vector<Vertex>& sorted, Vertex a, Vertex b) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), a);
  if (it == sorted.end() || *it > b) return std::nullopt;
  return *it;
}

}  // namespace detail

/// Stretch of G (max gap between consecutive neighbours of v_1, with
/// a_{d+1} = n) and its successor window [a_i, a_{i+1} - 1] for the least
/// maximizing i in [0, d], where a_0 = 1.
inline StretchInfo stretch(const TracedGraph& g) {
  if (g.order() < 2) throw precondition_error("stretch needs n >= 2");
  const detail::View v{&g, 1, g.order(), false};
  return detail::view_stretch(v, v.first_neighbors());
}

struct StretchPathResult {
  std::vector<Vertex> path;  // first vertices of G_0, G_1, ..., G_p
  bool stretch_held = true;  // every visited window of size >= n/m had stretch >= size/s
};

/// Iterates G_{i+1} = successor(G_i) while |G_i| >= n/m and returns the first
/// vertices. The iteration also stops if the successor is the one-vertex window
/// at the current first vertex, since it would repeat that vertex.
inline StretchPathResult stretch_path(const TracedGraph& g, double s, double m) {
  if (s < 1 || m < 1) throw precondition_error("stretch_path needs s, m >= 1");
  if (g.order() < 1) throw precondition_error("empty graph");
  StretchPathResult res;
  detail::View cur{&g, 1, g.order(), false};
  res.path.push_back(1);
  const double n = g.order();
  while (static_cast<double>(cur.len()) * m >= n && cur.len() >= 2) {
    const auto st = detail::view_stretch(cur, cur.first_neighbors());
    if (static_cast<double>(st.value) * s < static_cast<double>(cur.len())) res.stretch_held = false;
    if (st.succ_lo == 1) break;
    cur = cur.sub(st.succ_lo, st.succ_hi);
    res.path.push_back(cur.global(1));
  }
  return res;
}

/// Threshold functions of (n, t, p) that stand in for f, h, g in toy mode.
struct ToyThresholds {
  std::function<double(double, int, double)> f, h, g;
};

/// f = log2(n)/(t+1) - p/2, h = f, g = 1.
inline ToyThresholds default_toy() {
  auto f = [](double n, int t, double p) { return std::log2(n) / (t + 1) - p / 2; };
  return {f, f, [](double, int, double) { return 1.0; }};
}

struct PeelConfig {
  int r = 1;
  ParamFns params;
  bool quantitative = false;
  ToyThresholds toy = default_toy();

  static PeelConfig toy_mode(int r, ToyThresholds th = default_toy()) {
    PeelConfig c;
    c.r = r;
    c.toy = std::move(th);
    return c;
  }
  static PeelConfig compliant(int r) {
    PeelConfig c;
    c.r = r;
    c.params = default_params();
    c.quantitative = true;
    return c;
  }
};

struct PeelStats {
  std::size_t calls = 0;
  int max_depth = 0;
  std::size_t short_circuits = 0;
};

namespace detail {

struct PlanNode {
  bool concat = false;
  bool at_last = false;  // anchored star centred at the last vertex
  std::size_t star = 0;
  int rest = -1, left = -1, right = -1;
  int t = 0;
  std::vector<Vertex> vertices;  // H vertices covered, sorted
};

// Decomposes H along the inductive definition, preferring an anchored star.
struct Plan {
  StarForest forest;
  std::vector<PlanNode> nodes;

  int build(std::vector<std::size_t> cur) {
    PlanNode node;
    node.t = static_cast<int>(cur.size());
    for (auto i : cur) {
      const auto& s = forest.stars[i];
      node.vertices.push_back(s.center);
      node.vertices.insert(node.vertices.end(), s.leaves.begin(), s.leaves.end());
    }
    std::sort(node.vertices.begin(), node.vertices.end());

    auto& head = forest.stars[cur.front()];
    if (head.arity() == 1 && head.center != head.first()) head.flip();
    if (head.center == head.first()) {
      node.star = cur.front();
      if (cur.size() > 1) node.rest = build({cur.begin() + 1, cur.end()});
      return push(std::move(node));
    }
    auto tail_it = std::max_element(cur.begin(), cur.end(), [&](std::size_t a, std::size_t b) {
      return forest.stars[a].last() < forest.stars[b].last();
    });
    auto& tail = forest.stars[*tail_it];
    if (tail.arity() == 1 && tail.center != tail.last()) tail.flip();
    if (tail.center == tail.last()) {
      node.star = *tail_it;
      node.at_last = true;
      cur.erase(tail_it);
      if (!cur.empty()) node.rest = build(cur);
      return push(std::move(node));
    }
    Vertex reach = 0;
    for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
      reach = std::max(reach, forest.stars[cur[k]].last());
      if (reach < forest.stars[cur[k + 1]].first()) {
        node.concat = true;
        node.left = build({cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k) + 1});
        node.right = build({cur.begin() + static_cast<std::ptrdiff_t>(k) + 1, cur.end()});
        return push(std::move(node));
      }
    }
    throw construction_error("constellation plan: no inductive move applies");
  }

 private:
  int push(PlanNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

struct PeelResult {
  OutcomeKind kind = OutcomeKind::P2;
  Anchor anchor = Anchor::Start;
  std::vector<Vertex> path;  // increasing
  std::vector<Vertex> pos;   // P3: global positions aligned with node.vertices
};

inline Vertex positions_gap(const std::vector<Vertex>& pos, Vertex fallback) {
  if (pos.size() <= 1) return fallback;
  Vertex g = std::numeric_limits<Vertex>::max();
  for (std::size_t i = 1; i < pos.size(); ++i) g = std::min(g, pos[i] - pos[i - 1]);
  return g;
}

class Peeler {
 public:
  Peeler(const TracedGraph& g, Plan& plan, const PeelConfig& cfg, PeelStats& stats)
      : g_(g), plan_(plan), cfg_(cfg), stats_(stats) {}

  PeelResult run(int node, Vertex lo, Vertex hi, long p, int depth) {
    ++stats_.calls;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    const PlanNode& nd = plan_.nodes[node];
    const Vertex n = hi - lo + 1;
    if (n < 6) return trivial(nd, lo, hi);
    if (nd.concat) return concat(nd, lo, hi, p, depth);
    if (short_circuit(n, nd.t, p)) {
      ++stats_.short_circuits;
      return trivial(nd, lo, hi);
    }
    const View v{&g_, lo, hi, nd.at_last};
    if (nd.rest < 0) return base_case(nd, v, p);
    return anchored(node, v, p, depth);
  }

 private:
  PeelResult trivial(const PlanNode& nd, Vertex lo, Vertex hi) const {
    PeelResult r;
    r.kind = nd.concat ? OutcomeKind::P2 : OutcomeKind::P1;
    r.anchor = nd.at_last ? Anchor::End : Anchor::Start;
    if (lo == hi) r.path = {lo};
    else if (nd.at_last) r.path = {hi - 1, hi};
    else r.path = {lo, lo + 1};
    return r;
  }

  bool short_circuit(Vertex n, int t, long p) const {
    if (!cfg_.quantitative) return cfg_.toy.f(n, t, static_cast<double>(p)) <= 2;
    return with_precision_escalation([&] {
      const BoundContext ctx(cfg_.r, cfg_.params, log(BigReal(static_cast<long>(n))) / log(BigReal(cfg_.r + 1)));
      const BigReal pp(p);
      if (decide_le(BigReal(2) * f_val(ctx, t, BigReal(0)), pp)) return true;
      return decide_less(ctx.ell, bounds_threshold(cfg_.params, t, pp));
    });
  }

  double base_m(Vertex n, long p) const {
    double f;
    if (cfg_.quantitative) {
      f = with_precision_escalation([&] {
        const BoundContext ctx(cfg_.r, cfg_.params, log(BigReal(static_cast<long>(n))) / log(BigReal(cfg_.r + 1)));
        return f_val(ctx, 1, BigReal(p)).lo_d();
      });
    } else {
      f = cfg_.toy.f(n, 1, static_cast<double>(p));
    }
    return std::pow(2.0 * cfg_.r, std::min(f, 1000.0));
  }

  PeelResult concat(const PlanNode& nd, Vertex lo, Vertex hi, long p, int depth) {
    const Vertex n = hi - lo + 1;
    const Vertex a_hi = lo + (n + 2) / 3 - 1;  // ceil(n/3)
    const Vertex b_lo = lo + (2 * n) / 3 - 1;  // floor(2n/3)
    PeelResult a = run(nd.left, lo, a_hi, p, depth + 1);
    if (a.kind != OutcomeKind::P3) return lift(std::move(a));
    PeelResult b = run(nd.right, b_lo, hi, p, depth + 1);
    if (b.kind != OutcomeKind::P3) return lift(std::move(b));
    PeelResult r;
    r.kind = OutcomeKind::P3;
    r.pos = std::move(a.pos);
    r.pos.insert(r.pos.end(), b.pos.begin(), b.pos.end());
    return r;
  }

  static PeelResult lift(PeelResult r) {
    r.kind = OutcomeKind::P2;
    r.pos.clear();
    return r;
  }

  // Leaves of star S sorted by distance from its centre in H.
  std::vector<Vertex> leaves_from_center(const OrientedStar& s) const {
    std::vector<Vertex> l = s.leaves;
    std::sort(l.begin(), l.end(), [&](Vertex x, Vertex y) { return std::abs(x - s.center) < std::abs(y - s.center); });
    return l;
  }

  static PeelResult finish_star(const PlanNode& nd, std::vector<std::pair<Vertex, Vertex>> hv_pos) {
    std::sort(hv_pos.begin(), hv_pos.end());
    PeelResult r;
    r.kind = OutcomeKind::P3;
    for (std::size_t i = 0; i < nd.vertices.size(); ++i) {
      if (hv_pos[i].first != nd.vertices[i]) throw construction_error("peel: embedding misses a pattern vertex");
      r.pos.push_back(hv_pos[i].second);
    }
    return r;
  }

  PeelResult base_case(const PlanNode& nd, const View& whole, long p) const {
    const auto& star = plan_.forest.stars[nd.star];
    const Vertex r = cfg_.r;
    const double m = base_m(whole.len(), p);
    const double n = whole.len();
    std::vector<Vertex> path{whole.global(1)};
    View cur = whole;
    while (static_cast<double>(cur.len()) * m >= n && cur.len() >= 2) {
      const auto nb = cur.first_neighbors();
      const auto st = view_stretch(cur, nb);
      const Vertex b = st.value;
      if (b >= 1 && 2 + 2 * static_cast<long>(r) * b <= cur.len()) {
        // Blocks [2 + (q-1)b, 1 + qb]; each holds a neighbour. Leaves go in the
        // even blocks, so every gap exceeds b.
        std::vector<std::pair<Vertex, Vertex>> hv{{star.center, cur.global(1)}};
        const auto leaves = leaves_from_center(star);
        for (std::size_t j = 0; j < leaves.size(); ++j) {
          const Vertex q = 2 * static_cast<Vertex>(j + 1);
          auto x = first_in(nb, 2 + (q - 1) * b, 1 + q * b);
          if (!x) throw construction_error("peel base case: empty block under small stretch");
          hv.emplace_back(leaves[j], cur.global(*x));
        }
        return finish_star(nd, std::move(hv));
      }
      if (st.succ_lo == 1) break;
      cur = cur.sub(st.succ_lo, st.succ_hi);
      path.push_back(cur.global(1));
    }
    PeelResult res;
    res.kind = OutcomeKind::P1;
    res.anchor = whole.rev ? Anchor::End : Anchor::Start;
    if (whole.rev) std::reverse(path.begin(), path.end());
    res.path = std::move(path);
    return res;
  }

  PeelResult anchored(int node, const View& v, long p, int depth) {
    const PlanNode& nd = plan_.nodes[node];
    const PlanNode& rest = plan_.nodes[nd.rest];
    const auto& star = plan_.forest.stars[nd.star];
    const Vertex n = v.len();
    const View mid = v.sub(n / 3, (2 * n + 2) / 3);
    PeelResult c = run(nd.rest, mid.lo, mid.hi, p, depth + 1);
    if (c.kind != OutcomeKind::P3) return lift(std::move(c));

    const Vertex k = std::min(positions_gap(c.pos, n), n / 3 - 1);
    const auto nb = v.first_neighbors();
    const auto st = view_stretch(v, nb);
    const long r2 = 2L * cfg_.r + 1;
    if (st.value >= 1 && st.value * r2 <= k - 1) {
      const Vertex g0 = static_cast<Vertex>((k - 1) / r2);
      std::vector<std::pair<Vertex, Vertex>> hv{{star.center, v.global(1)}};
      for (std::size_t i = 0; i < rest.vertices.size(); ++i) hv.emplace_back(rest.vertices[i], c.pos[i]);
      // Group the leaves by the pair of consecutive H^- vertices around them.
      std::vector<std::pair<Vertex, Vertex>> slot_leaf;  // (slot start, leaf)
      for (Vertex x : leaves_from_center(star)) {
        auto it = std::lower_bound(rest.vertices.begin(), rest.vertices.end(), x);
        std::optional<std::size_t> near;
        if (!nd.at_last && it != rest.vertices.begin()) near = static_cast<std::size_t>(it - rest.vertices.begin()) - 1;
        if (nd.at_last && it != rest.vertices.end()) near = static_cast<std::size_t>(it - rest.vertices.begin());
        slot_leaf.emplace_back(near ? v.local(c.pos[*near]) : 1, x);
      }
      std::stable_sort(slot_leaf.begin(), slot_leaf.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      Vertex prev_slot = -1, j = 0;
      for (auto [a, x] : slot_leaf) {
        j = (a == prev_slot) ? j + 1 : 0;
        prev_slot = a;
        const Vertex q = 2 * j + 1;
        auto y = first_in(nb, a + 1 + q * g0, a + (q + 1) * g0);
        if (!y) throw construction_error("peel: empty block under small stretch");
        hv.emplace_back(x, v.global(*y));
      }
      return finish_star(nd, std::move(hv));
    }
    if (st.succ_lo == 1) return trivial(nd, v.lo, v.hi);
    const View next = v.sub(st.succ_lo, st.succ_hi);
    PeelResult d = run(node, next.lo, next.hi, p + 1, depth + 1);
    if (d.kind == OutcomeKind::P1) {
      if (v.rev) d.path.push_back(v.global(1));
      else d.path.insert(d.path.begin(), v.global(1));
    }
    return d;
  }

  const TracedGraph& g_;
  Plan& plan_;
  const PeelConfig& cfg_;
  PeelStats& stats_;
};

/// True iff H's first vertex is the centre of a star S with H - S a constellation.
inline bool anchors_at_first(const OrderedGraph& h) {
  if (h.order() == 0 || h.degree(1) == 0) return false;
  const auto nb = h.neighbors(1);
  if (nb.size() == 1 && h.degree(nb[0]) > 1) return false;
  for (Vertex u : nb)
    if (h.degree(u) != 1) return false;
  std::vector<char> drop(static_cast<std::size_t>(h.order()) + 1, 0);
  drop[1] = 1;
  for (Vertex u : nb) drop[u] = 1;
  std::vector<Vertex> id(drop.size(), 0);
  Vertex k = 0;
  for (Vertex v = 1; v <= h.order(); ++v)
    if (!drop[v]) id[v] = ++k;
  std::vector<Edge> es;
  for (const auto& e : h.edges())
    if (!drop[e.u] && !drop[e.v]) es.push_back({id[e.u], id[e.v]});
  return is_constellation(OrderedGraph(k, std::move(es))).has_value();
}

}  // namespace detail

/// Checks a peel certificate against G and H. P1/P2: increasing induced path
/// of G (P1 also anchored, and H must admit that anchor). P3: monotone map of
/// H into G - E(P) with gap >= claimed_gap, equal to the reported gap.
inline bool validate_outcome(const TracedGraph& g, const OrderedGraph& h, const PropOutcome& o,
                             Vertex claimed_gap = 1) {
  const Vertex n = g.order();
  switch (o.kind) {
    case OutcomeKind::P1:
    case OutcomeKind::P2: {
      if (o.path.empty() || !validate_increasing_induced_path(g, o.path)) return false;
      if (o.kind == OutcomeKind::P2) return true;
      if (o.anchor == Anchor::Start) return o.path.front() == 1 && detail::anchors_at_first(h);
      return o.path.back() == n && detail::anchors_at_first(reverse(h));
    }
    case OutcomeKind::P3: {
      const auto& pos = o.embedding.positions;
      if (pos.size() != static_cast<std::size_t>(h.order())) return false;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] < 1 || pos[i] > n) return false;
        if (i > 0 && pos[i] <= pos[i - 1]) return false;
      }
      for (const auto& e : h.edges())
        if (!g.is_pattern_edge(pos[e.u - 1], pos[e.v - 1])) return false;
      const Vertex gap = o.embedding.gap(n);
      return gap == o.gap && gap >= claimed_gap;
    }
  }
  return false;
}

/// Runs the recursion on (G, H) with counter p. H must be a constellation of
/// r-stars for r = cfg.r, without isolated vertices. The outcome is validated
/// before it is returned.
inline PropOutcome peel(const TracedGraph& g, const OrderedGraph& h, const PeelConfig& cfg, long p = 0,
                        PeelStats* stats = nullptr) {
  if (cfg.r < 1) throw precondition_error("r must be >= 1");
  if (p < 0) throw precondition_error("p must be >= 0");
  if (g.order() < 1) throw precondition_error("empty host graph");
  for (Vertex v = 1; v <= h.order(); ++v)
    if (h.degree(v) == 0) throw precondition_error("pattern has an isolated vertex");
  if (h.order() == 0) throw precondition_error("empty pattern");
  auto w = is_constellation(h);
  if (!w) throw precondition_error("pattern is not a constellation");
  for (const auto& s : w->forest.stars)
    if (static_cast<int>(s.arity()) != cfg.r)
      throw precondition_error("pattern has a star of arity " + std::to_string(s.arity()) + ", expected r = " +
                               std::to_string(cfg.r));

  detail::Plan plan;
  plan.forest = w->forest;
  std::vector<std::size_t> idx(plan.forest.stars.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return plan.forest.stars[a].first() < plan.forest.stars[b].first();
  });
  const int root = plan.build(idx);

  PeelStats local;
  PeelStats& st = stats ? *stats : local;
  detail::Peeler peeler(g, plan, cfg, st);
  auto res = peeler.run(root, 1, g.order(), p, 0);

  PropOutcome out;
  out.kind = res.kind;
  out.anchor = res.anchor;
  if (res.kind == OutcomeKind::P3) {
    out.embedding.positions = std::move(res.pos);
    out.gap = out.embedding.gap(g.order());
  } else {
    out.path = std::move(res.path);
  }
  if (!validate_outcome(g, h, out, 1)) throw construction_error("peel produced an invalid certificate");
  return out;
}

}  // namespace ordpat
