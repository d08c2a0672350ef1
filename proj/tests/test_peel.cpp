#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace ordpat;
using ordpat::testing::Rng;

namespace {

// H minus the star centred at c (and its leaves), reindexed.
OrderedGraph remove_star(const OrderedGraph& h, Vertex c) {
  std::vector<char> drop(static_cast<std::size_t>(h.order()) + 1, 0);
  drop[c] = 1;
  for (Vertex u : h.neighbors(c)) drop[u] = 1;
  std::vector<Vertex> id(drop.size(), 0);
  Vertex k = 0;
  for (Vertex v = 1; v <= h.order(); ++v)
    if (!drop[v]) id[v] = ++k;
  std::vector<Edge> es;
  for (const auto& e : h.edges())
    if (!drop[e.u] && !drop[e.v]) es.push_back({id[e.u], id[e.v]});
  return OrderedGraph(k, std::move(es));
}

// Independent certificate check, written from the outcome definitions.
bool reference_valid(const TracedGraph& g, const OrderedGraph& h, const PropOutcome& o) {
  const Vertex n = g.order();
  if (o.kind == OutcomeKind::P3) {
    const auto& x = o.embedding.positions;
    if (static_cast<Vertex>(x.size()) != h.order()) return false;
    Vertex gap = n;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < 1 || x[i] > n) return false;
      if (i && x[i] <= x[i - 1]) return false;
      if (i) gap = std::min(gap, x[i] - x[i - 1]);
    }
    for (const auto& e : h.edges()) {
      const Vertex a = x[e.u - 1], b = x[e.v - 1];
      if (!g.adjacent(a, b) || b - a == 1) return false;
    }
    return gap == o.gap;
  }
  const auto& p = o.path;
  if (p.empty()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1 || p[i] > n) return false;
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[j] <= p[i]) return false;
      if (g.adjacent(p[i], p[j]) != (j == i + 1)) return false;
    }
  }
  if (o.kind == OutcomeKind::P2) return true;
  const OrderedGraph hh = o.anchor == Anchor::Start ? h : reverse(h);
  const Vertex end = o.anchor == Anchor::Start ? p.front() : n + 1 - p.back();
  if (end != 1) return false;
  // The first vertex must centre a star of H whose removal leaves a constellation.
  if (hh.degree(1) == 0) return false;
  for (Vertex u : hh.neighbors(1))
    if (hh.degree(u) != 1) return false;
  return is_constellation_inductive(remove_star(hh, 1));
}

PropOutcome mutate(Rng& rng, const PropOutcome& o, Vertex n) {
  PropOutcome m = o;
  auto pick = [&](std::size_t sz) { return std::uniform_int_distribution<std::size_t>(0, sz - 1)(rng); };
  auto delta = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1; };
  const int kind = std::uniform_int_distribution<int>(0, 4)(rng);
  if (o.kind == OutcomeKind::P3) {
    auto& x = m.embedding.positions;
    switch (kind) {
      case 0: x[pick(x.size())] += delta(); break;
      case 1: x[pick(x.size())] = std::uniform_int_distribution<Vertex>(1, n)(rng); break;
      case 2: m.gap += delta(); break;
      case 3: if (x.size() > 1) std::swap(x[0], x[1]); else x[0] = n + 1; break;
      default: x.pop_back(); break;
    }
  } else {
    auto& p = m.path;
    switch (kind) {
      case 0: p[pick(p.size())] += delta(); break;
      case 1: p.insert(p.begin() + static_cast<long>(pick(p.size())), std::uniform_int_distribution<Vertex>(1, n)(rng)); break;
      case 2: m.anchor = m.anchor == Anchor::Start ? Anchor::End : Anchor::Start; break;
      case 3: if (p.size() > 1) p.erase(p.begin() + static_cast<long>(pick(p.size()))); else p.push_back(n + 1); break;
      default: m.kind = m.kind == OutcomeKind::P1 ? OutcomeKind::P3 : OutcomeKind::P1; break;
    }
  }
  return m;
}

struct Instance {
  TracedGraph g;
  OrderedGraph h;
  int r;
};

Instance random_instance(Rng& rng) {
  const int r = std::uniform_int_distribution<int>(1, 3)(rng);
  const int t = std::uniform_int_distribution<int>(1, 4)(rng);
  const Vertex n = std::uniform_int_distribution<Vertex>(2, 160)(rng);
  const double density = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  return {ordpat::testing::random_traced(rng, n, density), ordpat::testing::random_constellation(rng, t, r), r};
}

// Toy thresholds low enough that the recursion goes several levels deep.
ToyThresholds aggressive_toy() {
  auto f = [](double n, int, double p) { return std::log2(n) - p / 4; };
  return {f, f, [](double, int, double) { return 1.0; }};
}

}  // namespace

TEST(Stretch, Examples) {
  auto p = stretch(gen_path(10));
  EXPECT_EQ(p.value, 8);
  EXPECT_EQ(p.succ_lo, 2);
  EXPECT_EQ(p.succ_hi, 9);

  std::vector<Edge> star;
  for (Vertex v = 3; v <= 9; ++v) star.push_back({1, v});
  EXPECT_EQ(stretch(TracedGraph::from_pattern_edges(9, star)).value, 1);

  auto h = stretch(gen_halfgraph(8));
  EXPECT_EQ(h.value, 2);
  EXPECT_EQ(h.succ_lo, 2);
  EXPECT_EQ(h.succ_hi, 3);

  EXPECT_THROW(stretch(gen_path(1)), precondition_error);
}

TEST(Stretch, MatchesDefinitionOnRandomGraphs) {
  Rng rng(31);
  for (int it = 0; it < 500; ++it) {
    auto g = ordpat::testing::random_traced(rng, std::uniform_int_distribution<Vertex>(2, 40)(rng), 0.3);
    std::vector<Vertex> a{1};
    for (Vertex u : g.neighbors(1)) a.push_back(u);
    a.push_back(g.order());
    Vertex best = -1;
    std::size_t bi = 0;
    for (std::size_t i = 1; i + 1 < a.size(); ++i)
      if (a[i + 1] - a[i] > best) best = a[i + 1] - a[i], bi = i;
    if (a[1] - a[0] >= best) bi = 0;
    auto s = stretch(g);
    EXPECT_EQ(s.value, best);
    EXPECT_EQ(s.succ_lo, a[bi]);
  }
}

TEST(StretchPath, PurePathPeelsOneVertexPerStep) {
  // Windows shrink by two per step and stay long enough that the trailing gap dominates.
  auto r = stretch_path(gen_path(64), 2, 8);
  EXPECT_EQ(r.path.size(), 30u);
  for (std::size_t i = 0; i < r.path.size(); ++i) EXPECT_EQ(r.path[i], static_cast<Vertex>(i + 1));
  EXPECT_TRUE(r.stretch_held);
}

// With m = 1 the loop condition |G_0| >= n holds once, so one successor step is taken.
TEST(StretchPath, SingleStepWhenMIsOne) {
  auto r = stretch_path(gen_path(10), 2, 1);
  EXPECT_EQ(r.path, (std::vector<Vertex>{1, 2}));
  EXPECT_THROW(stretch_path(gen_path(10), 0.5, 2), precondition_error);
}

TEST(StretchPath, OutputIsIncreasingInducedPath) {
  Rng rng(37);
  for (int it = 0; it < 100; ++it) {
    auto g = ordpat::testing::random_traced(rng, std::uniform_int_distribution<Vertex>(2, 200)(rng), 0.15);
    auto r = stretch_path(g, 3, std::uniform_real_distribution<double>(1, 100)(rng));
    EXPECT_TRUE(validate_increasing_induced_path(g, r.path));
    EXPECT_EQ(r.path.front(), 1);
  }
}

TEST(StretchPath, LengthBoundWhenStretchHolds) {
  for (Vertex n : {64, 256, 1024, 4096}) {
    for (double s : {2.0, 4.0}) {
      const double m = n / 4.0;
      auto r = stretch_path(gen_path(n), s, m);
      if (r.stretch_held) { EXPECT_GE(static_cast<double>(r.path.size()), std::log(m) / std::log(s)); }
    }
  }
}

TEST(Peel, RightOneStarOnPurePath) {
  auto o = peel(gen_path(10), OrderedGraph(2, {{1, 2}}), PeelConfig::toy_mode(1));
  EXPECT_EQ(o.kind, OutcomeKind::P1);
  EXPECT_EQ(o.anchor, Anchor::Start);
  ASSERT_FALSE(o.path.empty());
  for (std::size_t i = 0; i < o.path.size(); ++i) EXPECT_EQ(o.path[i], static_cast<Vertex>(i + 1));
}

TEST(Peel, SmallHostShortCircuits) {
  PeelStats st;
  auto o = peel(gen_halfgraph(12), build_tr_constellation(2, 2, ConstellationShape::Nested), PeelConfig::toy_mode(2), 0,
                &st);
  EXPECT_EQ(o.kind, OutcomeKind::P1);
  EXPECT_EQ(o.path, (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(st.short_circuits, 1u);
}

TEST(Peel, CrossingMatchingOnLargeHalfGraph) {
  auto g = gen_halfgraph(1024);
  OrderedGraph h(4, {{1, 3}, {2, 4}});
  auto o = peel(g, h, PeelConfig::toy_mode(1));
  EXPECT_TRUE(validate_outcome(g, h, o));
  EXPECT_TRUE(reference_valid(g, h, o));
}

TEST(Peel, FindsStarsInDenseHosts) {
  // v_1 adjacent to everything: small stretch, so the base case embeds the star.
  std::vector<Edge> es;
  for (Vertex v = 3; v <= 200; ++v) es.push_back({1, v});
  auto g = TracedGraph::from_pattern_edges(200, es);
  OrderedGraph h(4, {{1, 2}, {1, 3}, {1, 4}});
  auto o = peel(g, h, PeelConfig::toy_mode(3));
  ASSERT_EQ(o.kind, OutcomeKind::P3);
  EXPECT_EQ(o.embedding.positions.front(), 1);
  EXPECT_TRUE(reference_valid(g, h, o));
}

TEST(Peel, RejectsBadPatterns) {
  auto g = gen_halfgraph(50);
  auto cfg = PeelConfig::toy_mode(2);
  EXPECT_THROW(peel(g, OrderedGraph(6, {{2, 4}, {2, 6}, {1, 5}, {3, 5}}), cfg), precondition_error);
  EXPECT_THROW(peel(g, OrderedGraph(5, {{1, 2}, {1, 3}, {4, 5}}), cfg), precondition_error);
  EXPECT_THROW(peel(g, OrderedGraph(4, {{1, 2}, {1, 3}}), cfg), precondition_error);
  EXPECT_THROW(peel(g, OrderedGraph(3, {{1, 2}, {1, 3}}), cfg, -1), precondition_error);
  EXPECT_THROW(peel(g, OrderedGraph(3, {{1, 2}, {2, 3}}), cfg), precondition_error);
}

TEST(Peel, SoundOnRandomInstances) {
  Rng rng(41);
  std::map<OutcomeKind, int> kinds;
  for (int it = 0; it < 2000; ++it) {
    auto in = random_instance(rng);
    const bool deep = it % 2 == 1;
    auto cfg = deep ? PeelConfig::toy_mode(in.r, aggressive_toy()) : PeelConfig::toy_mode(in.r);
    PeelStats st;
    auto o = peel(in.g, in.h, cfg, 0, &st);
    ++kinds[o.kind];
    ASSERT_TRUE(validate_outcome(in.g, in.h, o));
    ASSERT_TRUE(reference_valid(in.g, in.h, o));
    EXPECT_LE(st.max_depth, in.g.order());
    if (o.kind != OutcomeKind::P3) { ASSERT_TRUE(validate_increasing_induced_path(in.g, o.path)); }
  }
  EXPECT_GT(kinds[OutcomeKind::P1], 0);
  EXPECT_GT(kinds[OutcomeKind::P2], 0);
  EXPECT_GT(kinds[OutcomeKind::P3], 0);
}

TEST(Peel, AnchoringFollowsOrientation) {
  Rng rng(43);
  int right_p1 = 0, left_p1 = 0;
  // Small dense hosts: the successor chain reaches a tiny window before the
  // inner star fails, which is where anchored paths come from.
  for (int it = 0; it < 400; ++it) {
    const int r = std::uniform_int_distribution<int>(1, 2)(rng);
    const Vertex n = std::uniform_int_distribution<Vertex>(12, 80)(rng);
    auto g = ordpat::testing::random_traced(rng, n, std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    OrderedGraph h = build_tr_constellation(2, r, ConstellationShape::Nested);
    if (it % 2 == 1) h = reverse(h);
    // With r = 1 the two crossing edges are their own reversal.
    const bool left = !detail::anchors_at_first(h);
    auto o = peel(g, h, PeelConfig::toy_mode(r, aggressive_toy()));
    if (o.kind != OutcomeKind::P1) continue;
    if (left) {
      ++left_p1;
      EXPECT_EQ(o.anchor, Anchor::End);
      EXPECT_EQ(o.path.back(), n);
    } else {
      ++right_p1;
      EXPECT_EQ(o.anchor, Anchor::Start);
      EXPECT_EQ(o.path.front(), 1);
    }
  }
  EXPECT_GT(right_p1, 10);
  EXPECT_GT(left_p1, 10);
}

TEST(Peel, BaseCasePathMeetsLogBound) {
  for (int r : {1, 2, 3}) {
    for (int k = 6; k <= 14; ++k) {
      const Vertex n = Vertex{1} << k;
      std::vector<Edge> es;
      for (int j = 1; j <= r; ++j) es.push_back({1, j + 1});
      auto o = peel(gen_path(n), OrderedGraph(r + 1, es), PeelConfig::toy_mode(r));
      ASSERT_EQ(o.kind, OutcomeKind::P1);
      // m = (2r)^f, so log m / log 2r = f.
      const double f = default_toy().f(n, 1, 0);
      EXPECT_GE(static_cast<double>(o.path.size()), std::min<double>(n, std::ceil(f))) << r << " " << n;
    }
  }
}

TEST(Peel, CompliantModeShortCircuitsAtDeskScale) {
  auto cfg = PeelConfig::compliant(1);
  ASSERT_TRUE(cfg.params.compliant);
  auto g = gen_halfgraph(4096);
  OrderedGraph h(4, {{1, 3}, {2, 4}});
  PeelStats st;
  auto o = peel(g, h, cfg, 0, &st);
  EXPECT_TRUE(validate_outcome(g, h, o));
  EXPECT_GE(st.short_circuits, 1u);
  EXPECT_NE(o.kind, OutcomeKind::P3);
  EXPECT_LE(o.path.size(), 2u);
}

TEST(ValidateOutcome, HandCases) {
  auto g = TracedGraph::from_pattern_edges(6, {{1, 3}, {2, 6}});
  OrderedGraph h(2, {{1, 2}});
  PropOutcome bad;
  bad.kind = OutcomeKind::P3;
  bad.embedding = Embedding{{3, 4}};  // a path edge
  bad.gap = 1;
  EXPECT_FALSE(validate_outcome(g, h, bad));
  PropOutcome good = bad;
  good.embedding = Embedding{{1, 3}};
  good.gap = 2;
  EXPECT_TRUE(validate_outcome(g, h, good));
  EXPECT_TRUE(validate_outcome(g, h, good, 2));
  EXPECT_FALSE(validate_outcome(g, h, good, 3));

  PropOutcome single;
  single.kind = OutcomeKind::P1;
  single.path = {1};
  EXPECT_TRUE(validate_outcome(g, h, single));
  single.path = {2};
  EXPECT_FALSE(validate_outcome(g, h, single));
  single.anchor = Anchor::End;
  single.path = {6};
  EXPECT_TRUE(validate_outcome(g, h, single));
}

TEST(ValidateOutcome, MutationFuzz) {
  Rng rng(47);
  int rejected = 0, total = 0;
  for (int it = 0; it < 10000; ++it) {
    auto in = random_instance(rng);
    auto o = peel(in.g, in.h, PeelConfig::toy_mode(in.r, aggressive_toy()));
    auto m = mutate(rng, o, in.g.order());
    const bool ours = validate_outcome(in.g, in.h, m);
    ASSERT_EQ(ours, reference_valid(in.g, in.h, m)) << it;
    ++total;
    rejected += !ours;
  }
  EXPECT_GT(rejected, total / 2);
}
