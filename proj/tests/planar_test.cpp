#include <gtest/gtest.h>

#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/matrix.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/planar.hpp"
#include "isomatch/polynomial.hpp"
#include "isomatch/rounds.hpp"
#include "test_support.hpp"

namespace isomatch {
namespace {

WeightCountPolynomial oracle_histogram(const BipartiteGraph& g, const WeightAssignment& w) {
  WeightCountPolynomial h;
  for (const auto& m : enumerate_pms(g)) h[w.total(m.edges())] += 1;
  return h;
}

TEST(Poly, Arithmetic) {
  Poly a({1, 2});      // 1 + 2y
  Poly b({-1, 0, 3});  // -1 + 3y^2
  Poly p = a * b;
  EXPECT_EQ(p, Poly({-1, -2, 3, 6}));
  EXPECT_EQ(Poly::divexact(p, a), b);
  EXPECT_EQ(Poly::divexact(p, b), a);
  EXPECT_THROW(Poly::divexact(p, Poly({0, 5})), InvariantViolation);
  EXPECT_EQ((a - a).degree(), -1);
  EXPECT_EQ(Poly::monomial(-4, 3).eval(2), -32);
}

// Property: the polynomial determinant evaluated at y equals the integer
// determinant of the evaluated matrix.
TEST(Poly, DeterminantCommutesWithEvaluation) {
  Rng rng(50);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t n = rng.uniform(1, 4);
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (auto& row : a) {
      for (auto& x : row) {
        if (rng.uniform(0, 3) == 0) continue;
        x = Poly::monomial(static_cast<long>(rng.uniform(0, 4)) - 2, rng.uniform(0, 3));
      }
    }
    Poly det = poly_determinant(a);
    for (long y = -2; y <= 3; ++y) {
      IntMatrix m(n, std::vector<mpz_class>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].eval(y);
      }
      EXPECT_EQ(det.eval(y), bareiss_determinant(m));
    }
  }
}

TEST(Planar, RotationValidation) {
  auto c4 = cycle_graph(4);
  EXPECT_NO_THROW(validate_rotation(c4.graph, c4.rotation));
  auto bad = c4.rotation;
  bad[0].pop_back();
  EXPECT_THROW(validate_rotation(c4.graph, bad), InvalidInput);
  bad = c4.rotation;
  bad[0][1] = bad[0][0];
  EXPECT_THROW(validate_rotation(c4.graph, bad), InvalidInput);
  // K_{3,3} has no planar rotation at all.
  auto k33 = complete_bipartite(3, 3);
  RotationSystem rot(6);
  for (VertexId v = 0; v < 6; ++v) {
    for (EdgeId e : k33.incident(v)) rot[v].push_back(k33.other_end(e, v));
  }
  EXPECT_THROW(validate_rotation(k33, rot), InvalidInput);
}

TEST(Planar, FacesOfGrid) {
  auto grid = grid_graph(2, 3);
  auto emb = trace_faces(grid.graph, grid.rotation);
  EXPECT_EQ(emb.faces.size(), 3u);  // two squares and the outer face
  EXPECT_EQ(std::count(emb.outer.begin(), emb.outer.end(), 1), 1);
}

TEST(Planar, FourCycleParityDefinition) {
  auto c4 = cycle_graph(4);
  auto emb = pfaffian_orient(c4.graph, c4.rotation);
  EXPECT_TRUE(is_pfaffian(emb));
  std::size_t inner = emb.outer[0] ? 1 : 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    for (EdgeId e = 0; e < 4; ++e) emb.left_to_right[e] = mask >> e & 1;
    EXPECT_EQ(is_pfaffian(emb), agreeing_darts(emb, inner) % 2 == 1);
  }
}

TEST(Planar, SingleEdgeAndKnownCounts) {
  auto edge = testing::make_graph(1, 1, {{0, 0}});
  RotationSystem rot{{1}, {0}};
  EXPECT_TRUE(is_pfaffian(pfaffian_orient(edge, rot)));
  auto c4 = cycle_graph(4);
  EXPECT_EQ(count_by_weight(c4.graph, WeightAssignment(4), c4.rotation),
            (WeightCountPolynomial{{0, 2}}));
  auto grid = grid_graph(2, 3);
  EXPECT_TRUE(is_pfaffian(pfaffian_orient(grid.graph, grid.rotation)));
  EXPECT_EQ(count_by_weight(grid.graph, WeightAssignment(grid.graph.edge_count()), grid.rotation),
            (WeightCountPolynomial{{0, 3}}));
  auto g44 = grid_graph(4, 4);
  EXPECT_EQ(total_count(count_by_weight(g44.graph, WeightAssignment(g44.graph.edge_count()),
                                        g44.rotation)),
            36);
}

TEST(Planar, NoPerfectMatching) {
  auto path = testing::make_graph(2, 1, {{0, 0}, {1, 0}});
  RotationSystem rot{{2}, {2}, {0, 1}};
  EXPECT_TRUE(count_by_weight(path, WeightAssignment(2), rot).empty());
  EXPECT_THROW(run_planar_rounds(path, rot), NoPerfectMatching);
}

std::vector<EmbeddedGraph> planar_samples(Rng& rng) {
  std::vector<EmbeddedGraph> out;
  for (std::size_t r = 2; r <= 3; ++r) {
    for (std::size_t c = 2; c <= 4; ++c) out.push_back(grid_graph(r, c));
  }
  for (std::size_t len = 4; len <= 12; len += 2) out.push_back(cycle_graph(len));
  for (int i = 0; i < 10; ++i) out.push_back(tree_plus_edge(rng.uniform(4, 12), rng));
  for (int i = 0; i < 25; ++i) out.push_back(random_grid_subgraph(3, 4, 0.8, rng));
  return out;
}

// Property: the weighted histogram equals oracle enumeration.
TEST(Planar, HistogramMatchesOracle) {
  Rng rng(51);
  for (const auto& emb : planar_samples(rng)) {
    for (int rep = 0; rep < 3; ++rep) {
      auto w = testing::random_weights(emb.graph, rng, 0, 6);
      auto h = count_by_weight(emb.graph, w, emb.rotation);
      EXPECT_EQ(h, oracle_histogram(emb.graph, w));
      EXPECT_EQ(total_count(h), mpz_class(static_cast<unsigned long>(enumerate_pms(emb.graph).size())));
    }
  }
}

// Property: the planar rounds end at the oracle's unique minimum under the
// combined weight, and each round graph equals the min-weight union of the
// previous one.
TEST(Planar, RoundsMatchUnionConstruction) {
  Rng rng(52);
  for (const auto& emb : planar_samples(rng)) {
    if (!has_perfect_matching(emb.graph)) continue;
    auto res = run_planar_rounds(emb.graph, emb.rotation, 1);
    auto best = min_weight_pms(emb.graph, res.weight.combined);
    ASSERT_EQ(best.matchings.size(), 1u);
    EXPECT_EQ(best.matchings[0].edges(), res.matching.edges());
    for (std::size_t i = 0; i < res.rounds.size(); ++i) {
      const auto& cur = res.rounds[i].edges;
      const auto& next = i + 1 < res.rounds.size() ? res.rounds[i + 1].edges : res.final_edges;
      auto w = WeightAssignment::from_ints(res.rounds[i].weights).restrict_to(cur);
      auto u = min_weight_union_edges(emb.graph.edge_subgraph(cur), w, UnionMethod::kEnumerate);
      EdgeSet lifted;
      for (EdgeId e : u) lifted.push_back(cur[e]);
      EXPECT_EQ(lifted, next);
    }
  }
}

}  // namespace
}  // namespace isomatch
