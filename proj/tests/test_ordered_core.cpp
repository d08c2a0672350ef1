#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace ordpat;
using ordpat::testing::Rng;

namespace {

std::vector<Edge> pattern_edges(const TracedGraph& g) {
  auto p = g.pattern_graph();
  return {p.edges().begin(), p.edges().end()};
}

// All monotone injections with the gap constraint, lexicographic order.
std::optional<Embedding> brute_force(const OrderedGraph& host, const OrderedGraph& pat, Vertex gap) {
  const Vertex n = host.order(), k = pat.order();
  std::vector<Vertex> pos(static_cast<std::size_t>(k));
  std::optional<Embedding> found;
  auto rec = [&](auto&& self, Vertex i, Vertex from) -> void {
    if (found) return;
    if (i == k) {
      Embedding e{pos};
      if (is_embedding(host, pat, e)) found = e;
      return;
    }
    for (Vertex x = from; x <= n; ++x) {
      pos[i] = x;
      self(self, i + 1, x + gap);
      if (found) return;
    }
  };
  rec(rec, 0, 1);
  return found;
}

}  // namespace

TEST(OrderedGraph, NormalisesAndRejectsBadEdges) {
  OrderedGraph g(3, {{2, 1}, {3, 2}});
  EXPECT_EQ(g.edges()[0], (Edge{1, 2}));
  EXPECT_TRUE(g.adjacent(3, 2));
  EXPECT_FALSE(g.adjacent(1, 3));
  EXPECT_THROW(OrderedGraph(3, {{1, 4}}), invalid_input);
  EXPECT_THROW(OrderedGraph(3, {{2, 2}}), invalid_input);
  EXPECT_THROW(OrderedGraph(3, {{1, 2}, {2, 1}}), invalid_input);
}

TEST(TracedGraph, RequiresPathEdges) {
  EXPECT_THROW(TracedGraph(OrderedGraph(3, {{1, 2}})), invalid_input);
  EXPECT_THROW(TracedGraph::from_pattern_edges(4, {{2, 3}}), invalid_input);
  auto g = TracedGraph::from_pattern_edges(4, {{1, 4}});
  EXPECT_EQ(g.pattern_edge_count(), 1u);
  EXPECT_TRUE(g.is_pattern_edge(4, 1));
  EXPECT_FALSE(g.is_pattern_edge(1, 2));
}

TEST(ContainsPattern, HalfGraphRightTwoStar) {
  auto host = gen_halfgraph(6);
  OrderedGraph star(3, {{1, 2}, {1, 3}});
  auto e = contains_pattern(host.pattern_graph(), star, 1);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->positions, (std::vector<Vertex>{1, 4, 6}));
}

TEST(ContainsPattern, EdgelessHostHasNoEdge) {
  EXPECT_FALSE(contains_pattern(OrderedGraph(5, {}), OrderedGraph(2, {{1, 2}})));
}

TEST(ContainsPattern, RejectsMalformedQueries) {
  EXPECT_THROW(contains_pattern(OrderedGraph(3, {}), OrderedGraph(0, {})), invalid_input);
  EXPECT_THROW(contains_pattern(OrderedGraph(3, {}), OrderedGraph(1, {}), 0), invalid_input);
}

TEST(ContainsPattern, CrossingMatchingWithGapMatchesBruteForce) {
  auto host = gen_halfgraph(10).pattern_graph();
  OrderedGraph cross(4, {{1, 3}, {2, 4}});
  for (Vertex gap = 1; gap <= 4; ++gap) {
    auto a = contains_pattern(host, cross, gap);
    auto b = brute_force(host, cross, gap);
    ASSERT_EQ(a.has_value(), b.has_value()) << "gap " << gap;
    if (a) {
      EXPECT_EQ(a->positions, b->positions);
      EXPECT_GE(a->gap(host.order()), gap);
    }
  }
}

TEST(ContainsPattern, AgreesWithBruteForceOnSmallInstances) {
  Rng rng(7);
  int hits = 0;
  for (int it = 0; it < 3000; ++it) {
    const Vertex n = std::uniform_int_distribution<Vertex>(1, 10)(rng);
    const Vertex k = std::uniform_int_distribution<Vertex>(1, 4)(rng);
    auto host = ordpat::testing::random_graph(rng, n, 0.45);
    auto pat = ordpat::testing::random_graph(rng, k, 0.5);
    const Vertex gap = std::uniform_int_distribution<Vertex>(1, 3)(rng);
    auto a = contains_pattern(host, pat, gap);
    auto b = brute_force(host, pat, gap);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      ++hits;
      EXPECT_EQ(a->positions, b->positions);
    }
  }
  EXPECT_GT(hits, 100);
}

TEST(Concatenate, Examples) {
  OrderedGraph k2(2, {{1, 2}});
  auto kk = concatenate(k2, k2);
  EXPECT_EQ(kk.order(), 4);
  EXPECT_EQ(std::vector<Edge>(kk.edges().begin(), kk.edges().end()), (std::vector<Edge>{{1, 2}, {3, 4}}));

  OrderedGraph any(5, {{1, 5}, {2, 3}});
  EXPECT_EQ(concatenate(OrderedGraph(0, {}), any), any);

  OrderedGraph right(3, {{1, 2}, {1, 3}}), left(3, {{1, 3}, {2, 3}});
  EXPECT_EQ(concatenate(right, left), OrderedGraph(6, {{1, 2}, {1, 3}, {4, 6}, {5, 6}}));
}

TEST(Concatenate, OrdersAndSizesAdd) {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    auto a = ordpat::testing::random_graph(rng, std::uniform_int_distribution<Vertex>(0, 9)(rng), 0.3);
    auto b = ordpat::testing::random_graph(rng, std::uniform_int_distribution<Vertex>(0, 9)(rng), 0.3);
    auto c = concatenate(a, b);
    EXPECT_EQ(c.order(), a.order() + b.order());
    EXPECT_EQ(c.size(), a.size() + b.size());
  }
}

TEST(OneSided, Examples) {
  EXPECT_FALSE(is_one_sided(OrderedGraph(3, {{1, 2}, {2, 3}})));
  EXPECT_TRUE(is_one_sided(OrderedGraph(6, {{1, 2}, {1, 3}, {4, 6}, {5, 6}})));
  for (Vertex n = 2; n <= 40; ++n) EXPECT_TRUE(is_one_sided(gen_halfgraph(n).pattern_graph())) << n;
}

TEST(HalfGraph, PatternEdges) {
  EXPECT_EQ(pattern_edges(gen_halfgraph(4)), (std::vector<Edge>{{1, 4}}));
  EXPECT_TRUE(pattern_edges(gen_halfgraph(2)).empty());
  EXPECT_THROW(gen_halfgraph(1), invalid_input);
  // Rule check against the definition for a larger n.
  auto g = gen_halfgraph(15);
  for (Vertex i = 1; i <= 15; ++i)
    for (Vertex j = i + 1; j <= 15; ++j) {
      const bool want = j == i + 1 || (i % 2 == 1 && j % 2 == 0);
      EXPECT_EQ(g.adjacent(i, j), want) << i << "," << j;
    }
}

TEST(InducedPath, OracleSmallCases) {
  auto p7 = gen_path(7);
  EXPECT_EQ(longest_induced_path_oracle(p7.graph(), 100).length, 7);
  auto r = longest_induced_path_oracle(p7.graph(), 5);
  EXPECT_TRUE(r.reached_cap);
  EXPECT_EQ(r.length, 5);
  EXPECT_EQ(longest_induced_path_oracle(gen_halfgraph(10).graph(), 100).length, 4);
  EXPECT_THROW(longest_induced_path_oracle(p7.graph(), 0), invalid_input);
}

TEST(InducedPath, HalfGraphHasOrderFour) {
  for (Vertex n = 8; n <= 24; ++n) {
    auto r = longest_induced_path_oracle(gen_halfgraph(n).graph(), 1000);
    EXPECT_EQ(r.length, 4) << n;
    EXPECT_TRUE(is_induced_path(gen_halfgraph(n).graph(), r.witness));
  }
}

TEST(InducedPath, WitnessIsInducedOnRandomGraphs) {
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    auto g = ordpat::testing::random_graph(rng, std::uniform_int_distribution<Vertex>(1, 12)(rng), 0.3);
    auto r = longest_induced_path_oracle(g, 100);
    ASSERT_EQ(static_cast<Vertex>(r.witness.size()), r.length);
    EXPECT_TRUE(is_induced_path(g, r.witness));
  }
}

TEST(InducedPath, IncreasingValidator) {
  Rng rng(3);
  auto g = ordpat::testing::random_traced(rng, 12, 0.4);
  const std::vector<Vertex> p12{1, 2};
  EXPECT_TRUE(validate_increasing_induced_path(g, p12));
  const std::vector<Vertex> p13{1, 3};
  EXPECT_FALSE(validate_increasing_induced_path(gen_path(10), p13));
  const std::vector<Vertex> down{3, 2, 1};
  EXPECT_FALSE(validate_increasing_induced_path(gen_path(10), down));
  const std::vector<Vertex> up{4, 5, 6};
  EXPECT_TRUE(validate_increasing_induced_path(gen_path(10), up));
}

TEST(Slice, Examples) {
  Rng rng(9);
  auto g = ordpat::testing::random_graph(rng, 9, 0.4);
  EXPECT_EQ(slice(g, 1, 9), g);
  EXPECT_TRUE(pattern_edges(slice(gen_halfgraph(6), 2, 5)).empty());
  EXPECT_THROW(slice(g, 0, 3), invalid_input);
  EXPECT_THROW(slice(g, 4, 10), invalid_input);
  EXPECT_THROW(slice(g, 5, 4), invalid_input);
}

TEST(Slice, PreservesAdjacencyAndComposes) {
  Rng rng(13);
  for (int it = 0; it < 300; ++it) {
    const Vertex n = std::uniform_int_distribution<Vertex>(1, 15)(rng);
    auto g = ordpat::testing::random_graph(rng, n, 0.35);
    const Vertex a = std::uniform_int_distribution<Vertex>(1, n)(rng);
    const Vertex b = std::uniform_int_distribution<Vertex>(a, n)(rng);
    auto s = slice(g, a, b);
    for (Vertex u = 1; u <= s.order(); ++u)
      for (Vertex v = 1; v <= s.order(); ++v)
        if (u != v) { ASSERT_EQ(s.adjacent(u, v), g.adjacent(u + a - 1, v + a - 1)); }
    const Vertex c = std::uniform_int_distribution<Vertex>(1, s.order())(rng);
    const Vertex d = std::uniform_int_distribution<Vertex>(c, s.order())(rng);
    EXPECT_EQ(slice(s, c, d), slice(g, a + c - 1, a + d - 1));
  }
}

TEST(Slice, TracedStaysTraced) {
  Rng rng(17);
  auto g = ordpat::testing::random_traced(rng, 20, 0.2);
  auto s = slice(g, 4, 13);
  EXPECT_EQ(s.order(), 10);
  for (Vertex i = 1; i < 10; ++i) EXPECT_TRUE(s.adjacent(i, i + 1));
}

TEST(Reverse, IsAnInvolution) {
  Rng rng(19);
  for (int it = 0; it < 50; ++it) {
    auto g = ordpat::testing::random_graph(rng, 10, 0.3);
    EXPECT_EQ(reverse(reverse(g)), g);
  }
  EXPECT_EQ(reverse(OrderedGraph(3, {{1, 2}, {1, 3}})), OrderedGraph(3, {{1, 3}, {2, 3}}));
}

TEST(EdgeListIo, RoundTrip) {
  Rng rng(23);
  for (int it = 0; it < 50; ++it) {
    auto g = ordpat::testing::random_traced(rng, std::uniform_int_distribution<Vertex>(1, 30)(rng), 0.2);
    std::stringstream ss;
    write_edge_list(ss, g);
    EXPECT_EQ(read_traced(ss), g);
  }
}

TEST(EdgeListIo, CommentsAndBlankLines) {
  std::istringstream in("# header comment\n\n3 2\n1 2  # trailing\n\n2 3\n");
  auto g = read_edge_list(in);
  EXPECT_EQ(g, OrderedGraph(3, {{1, 2}, {2, 3}}));
}

TEST(EdgeListIo, DiagnosticsCarryLineNumbers) {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_edge_list(in);
    } catch (const invalid_input& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails_with("3 1\n1 4\n", "line 2"));
  EXPECT_TRUE(fails_with("3 1\n2 2\n", "self-loop"));
  EXPECT_TRUE(fails_with("3 1\n3 1\n", "u < v"));
  EXPECT_TRUE(fails_with("3 2\n1 2\n", "found 1"));
  EXPECT_TRUE(fails_with("x y\n", "line 1"));
  EXPECT_TRUE(fails_with("", "empty"));
  EXPECT_TRUE(fails_with("3 1\n1 2 junk\n", "line 2"));
  EXPECT_TRUE(fails_with("3 1\n1 2\n1 3\n", "more edges"));
  std::istringstream dup("3 2\n1 2\n1 2\n");
  EXPECT_THROW(read_edge_list(dup), invalid_input);
  std::istringstream untraced("3 1\n1 3\n");
  EXPECT_THROW(read_traced(untraced), invalid_input);
}
