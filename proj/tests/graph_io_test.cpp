#include <gtest/gtest.h>

#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/graph_io.hpp"
#include "test_support.hpp"

namespace isomatch {
namespace {

TEST(GraphJson, ParsesEdgesAndWeights) {
  auto f = parse_graph_json(R"({"left":["a","b"],"right":["x","y"],
    "edges":[["a","x",3],["b","y","12345678901234567890"],["y","a",0]]})");
  ASSERT_EQ(f.graph.edge_count(), 3u);
  ASSERT_TRUE(f.weights.has_value());
  EXPECT_EQ((*f.weights)[0], 3);
  EXPECT_EQ((*f.weights)[1], Weight("12345678901234567890"));
  EXPECT_EQ(f.graph.edge(2), (Edge{0, 1}));
  EXPECT_FALSE(f.rotation.has_value());
}

TEST(GraphJson, RejectsMalformedInput) {
  EXPECT_THROW(parse_graph_json("{"), InvalidInput);
  EXPECT_THROW(parse_graph_json(R"({"left":["a"],"right":["x"]})"), InvalidInput);
  EXPECT_THROW(parse_graph_json(R"({"left":["a"],"right":["x"],"edges":[["a","q"]]})"),
               InvalidInput);
  EXPECT_THROW(parse_graph_json(R"({"left":["a","b"],"right":["x"],"edges":[["a","b"]]})"),
               InvalidInput);
  EXPECT_THROW(
      parse_graph_json(R"({"left":["a","b"],"right":["x"],"edges":[["a","x",1],["b","x"]]})"),
      InvalidInput);
  EXPECT_THROW(parse_graph_json(R"({"left":["a"],"right":["x"],"edges":[["a","x",1.5]]})"),
               InvalidInput);
}

TEST(GraphJson, ParsesRotation) {
  auto f = parse_graph_json(R"({"left":["a"],"right":["x","y"],
    "edges":[["a","x"],["a","y"]],
    "rotation":{"a":["y","x"],"x":["a"],"y":["a"]}})");
  ASSERT_TRUE(f.rotation.has_value());
  EXPECT_EQ((*f.rotation)[0], (std::vector<VertexId>{2, 1}));
}

TEST(GraphDimacs, ParsesProblemLine) {
  auto f = parse_graph_dimacs("c test\np edge 2 2 3\ne 1 1 5\ne 1 2 0\ne 2 2 7\n");
  EXPECT_EQ(f.graph.num_left(), 2u);
  ASSERT_EQ(f.graph.edge_count(), 3u);
  EXPECT_EQ(f.graph.edge(2), (Edge{1, 1}));
  EXPECT_EQ((*f.weights)[2], 7);
  EXPECT_THROW(parse_graph_dimacs("e 1 1\n"), InvalidInput);
  EXPECT_THROW(parse_graph_dimacs("p edge 1 1 2\ne 1 1\n"), InvalidInput);
  EXPECT_THROW(parse_graph_dimacs("p edge 1 1 1\ne 1 3\n"), InvalidInput);
}

TEST(GraphJson, DispatchOnFirstCharacter) {
  EXPECT_EQ(parse_graph("  \n{\"left\":[],\"right\":[],\"edges\":[]}").graph.vertex_count(), 0u);
  EXPECT_EQ(parse_graph("p edge 1 1 1\ne 1 1\n").graph.edge_count(), 1u);
}

// Property: writing a graph (with weights and rotation) and reading it back
// gives the same graph.
TEST(GraphJson, RoundTrip) {
  Rng rng(21);
  for (int iter = 0; iter < 50; ++iter) {
    auto emb = random_grid_subgraph(2 + iter % 3, 2 + iter % 4, 0.7, rng);
    auto w = testing::random_weights(emb.graph, rng, 0, 1000);
    Json j = graph_to_json(emb.graph, &w, &emb.rotation);
    auto back = parse_graph_json(j.dump());
    EXPECT_EQ(back.graph.edges(), emb.graph.edges());
    EXPECT_EQ(back.graph.left_names(), emb.graph.left_names());
    EXPECT_EQ(*back.weights, w);
    EXPECT_EQ(*back.rotation, emb.rotation);
  }
}

TEST(GraphJson, MatchingAndWeightOutput) {
  auto g = testing::make_graph(2, 2, {{0, 0}, {1, 1}});
  EXPECT_EQ(matching_to_json(g, EdgeSet{0, 1}).dump(), R"([["u1","v1"],["u2","v2"]])");
  EXPECT_EQ(weight_to_json(Weight(5)).dump(), "5");
  EXPECT_EQ(weight_to_json(Weight(1) << 70).dump(), "\"1180591620717411303424\"");
  EXPECT_EQ(weight_from_json(Json("1180591620717411303424")), Weight(1) << 70);
}

}  // namespace
}  // namespace isomatch
