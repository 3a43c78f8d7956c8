#include <gtest/gtest.h>

#include <algorithm>

#include "isomatch/errors.hpp"
#include "isomatch/graph.hpp"
#include "test_support.hpp"

namespace isomatch {
namespace {

using testing::make_graph;

TEST(BipartiteGraph, IndexesEdgesAndVertices) {
  auto g = make_graph(2, 3, {{0, 0}, {0, 2}, {1, 1}});
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_FALSE(g.is_balanced());
  EXPECT_EQ(g.right_end(1), 2u + 2u);
  EXPECT_EQ(g.find_edge(1, 1), std::optional<EdgeId>(2));
  EXPECT_FALSE(g.find_edge(1, 0).has_value());
  EXPECT_EQ(g.find_edge_between(g.right_vertex(2), g.left_vertex(0)), std::optional<EdgeId>(1));
  EXPECT_EQ(g.degree(g.left_vertex(0)), 2u);
  EXPECT_EQ(g.other_end(0, 0), g.right_vertex(0));
  EXPECT_EQ(g.vertex_name(g.right_vertex(1)), "v2");
}

TEST(BipartiteGraph, RejectsDuplicatesAndBadEndpoints) {
  EXPECT_THROW(make_graph(1, 1, {{0, 0}, {0, 0}}), InvalidInput);
  EXPECT_THROW(make_graph(1, 1, {{0, 1}}), InvalidInput);
  EXPECT_THROW(BipartiteGraph({"a"}, {"a"}, {}), InvalidInput);
}

TEST(BipartiteGraph, EdgeSubgraphKeepsVerticesAndOrder) {
  auto g = make_graph(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EdgeSet keep{3, 0};
  auto h = g.edge_subgraph(keep);
  EXPECT_EQ(h.vertex_count(), 4u);
  ASSERT_EQ(h.edge_count(), 2u);
  EXPECT_EQ(h.edge(0), g.edge(0));
  EXPECT_EQ(h.edge(1), g.edge(3));
}

TEST(WeightAssignment, TotalsAndRestriction) {
  WeightAssignment w{3, 1, 4, 1};
  EdgeSet s{0, 2};
  EXPECT_EQ(w.total(s), 7);
  EXPECT_EQ(w.max(), 4);
  EXPECT_EQ(w.restrict_to(s), (WeightAssignment{3, 4}));
  EXPECT_TRUE(w.all_nonnegative());
  EXPECT_FALSE((WeightAssignment{1, -1}).all_nonnegative());
  EXPECT_EQ(WeightAssignment().max(), 0);
}

TEST(WeightAssignment, Int64ViewRefusesHugeValues) {
  WeightAssignment w{5, 7};
  auto small = w.as_int64();
  ASSERT_TRUE(small.has_value());
  EXPECT_EQ((*small)[1], 7);
  WeightAssignment big(1);
  big[0] = Weight(1) << 80;
  EXPECT_FALSE(big.as_int64().has_value());
}

TEST(MatchingSet, Classifies) {
  auto g = make_graph(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_TRUE(MatchingSet(g, {0, 3}).is_perfect());
  EXPECT_EQ(MatchingSet(g, {0}).kind(), MatchingKind::kMatching);
  EXPECT_EQ(MatchingSet(g, {0, 1}).kind(), MatchingKind::kNotAMatching);
  EXPECT_TRUE(MatchingSet(g, {1, 2}).contains(2));
  EXPECT_FALSE(MatchingSet(g, {1, 2}).contains(0));
}

TEST(MatchingSet, EmptyGraphHasEmptyPerfectMatching) {
  BipartiteGraph g = BipartiteGraph::with_sizes(0, 0, {});
  EXPECT_TRUE(MatchingSet(g, {}).is_perfect());
}

// Property: edge_subgraph of a random subset keeps exactly those edges.
TEST(BipartiteGraph, EdgeSubgraphProperty) {
  Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    auto g = testing::random_graph(rng, 5);
    EdgeSet keep;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng.uniform(0, 1)) keep.push_back(e);
    }
    auto h = g.edge_subgraph(keep);
    ASSERT_EQ(h.edge_count(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) EXPECT_EQ(h.edge(i), g.edge(keep[i]));
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
      std::size_t expect = 0;
      for (EdgeId e : keep) {
        if (g.left_end(e) == v || g.right_end(e) == v) ++expect;
      }
      EXPECT_EQ(h.degree(v), expect);
    }
  }
}

}  // namespace
}  // namespace isomatch
