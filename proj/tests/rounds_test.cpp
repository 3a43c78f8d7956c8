#include <gtest/gtest.h>

#include <set>

#include "isomatch/cycles.hpp"
#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/rounds.hpp"
#include "test_support.hpp"

namespace isomatch {
namespace {

TEST(Rounds, Parameters) {
  EXPECT_EQ(round_count(2), 1u);
  EXPECT_EQ(round_count(4), 1u);
  EXPECT_EQ(round_count(8), 2u);
  EXPECT_EQ(round_count(12), 3u);
  EXPECT_EQ(round_count(16), 3u);
  EXPECT_EQ(round_count(20), 4u);
  EXPECT_EQ(cycle_threshold(0, 8), 4u);
  EXPECT_EQ(cycle_threshold(1, 8), 8u);
  EXPECT_EQ(cycle_threshold(2, 12), 12u);
  EXPECT_EQ(doubled_length(3), 4u);
  EXPECT_EQ(doubled_length(4), 8u);
  EXPECT_EQ(doubled_length(7), 12u);
}

TEST(Rounds, ScreenPicksFirstWorkingModulus) {
  auto g = complete_bipartite(2, 2);
  auto res = screen_round(g, g.all_edges(), 4, 7);
  // Weights 1,2,4,8 mod j around the cycle u1 v1 u2 v2: 1 - 4 + 8 - 2 = 3.
  EXPECT_EQ(res.modulus, 2u);
  EXPECT_EQ(res.cycles, 1u);
  EXPECT_EQ(res.tried, 1u);
  auto c = enumerate_cycles(g, 4).front();
  EXPECT_NE(circulation(std::span<const std::int64_t>(res.weights), c), 0);
}

// Property: both union constructions agree and the union is exactly the
// edges lying in some minimum-weight matching.
TEST(Rounds, UnionConstructionsAgree) {
  Rng rng(31);
  for (int iter = 0; iter < 200; ++iter) {
    auto g = testing::random_graph(rng, 5, true);
    auto w = testing::random_weights(g, rng, 0, 4);
    auto a = min_weight_union_edges(g, w, UnionMethod::kEnumerate);
    auto b = min_weight_union_edges(g, w, UnionMethod::kForced, 1);
    EXPECT_EQ(a, b);
    auto best = min_weight_pms(g, w);
    std::set<EdgeId> expect;
    for (const auto& m : best.matchings) expect.insert(m.edges().begin(), m.edges().end());
    EXPECT_EQ(EdgeSet(expect.begin(), expect.end()), a);
  }
  auto no_pm = testing::make_graph(2, 2, {{0, 0}, {1, 0}});
  EXPECT_THROW(min_weight_union_edges(no_pm, WeightAssignment{0, 0}), NoPerfectMatching);
}

// Property: inside the min-weight union every cycle has zero circulation and
// every perfect matching of the union has the minimum weight.
TEST(Rounds, MinimumUnionIsFlat) {
  Rng rng(32);
  for (int iter = 0; iter < 150; ++iter) {
    auto g = testing::random_graph(rng, 5, true);
    auto w = testing::random_weights(g, rng, 0, 3);
    auto vanish = verify_cycles_vanish(g, w);
    EXPECT_TRUE(vanish.ok());
    auto equal = verify_equal_weights(g, w);
    EXPECT_TRUE(equal.ok());
    EXPECT_GE(equal.union_pms, 1u);
  }
}

TEST(Rounds, CycleBoundReport) {
  auto h = heawood_graph();
  auto rep = verify_cycle_bound(h, 4);
  EXPECT_FALSE(rep.skipped);
  EXPECT_FALSE(rep.odd_branch);
  EXPECT_EQ(rep.r_prime, 8u);
  EXPECT_EQ(rep.cycles, count_cycles(h, 8));
  EXPECT_TRUE(rep.ok());
  auto odd = verify_cycle_bound(complete_bipartite(3, 3), 3);
  EXPECT_TRUE(odd.odd_branch);
  EXPECT_EQ(odd.r_prime, 4u);
  EXPECT_EQ(odd.cycles, 9u);
  EXPECT_TRUE(verify_cycle_bound(complete_bipartite(3, 3), 4).skipped);
}

// Property: the adaptive scheme ends at the oracle's unique minimum under the
// combined weight, with every round weight below n^6 and the combined weight
// below B^k.
TEST(Rounds, AdaptiveIsolates) {
  Rng rng(33);
  for (int iter = 0; iter < 120; ++iter) {
    auto g = testing::random_graph(rng, 5, true);
    auto res = run_rounds_adaptive(g);
    EXPECT_TRUE(res.isolating);
    auto best = min_weight_pms(g, res.weight.combined);
    ASSERT_EQ(best.matchings.size(), 1u);
    EXPECT_EQ(best.matchings[0].edges(), res.matching.edges());
    const std::size_t n = g.vertex_count();
    mpz_class n6 = 1;
    for (int i = 0; i < 6; ++i) n6 *= static_cast<unsigned long>(n);
    mpz_class bk = 1;
    for (std::size_t i = 0; i < res.trace.k; ++i) bk *= res.weight.base;
    ASSERT_EQ(res.trace.rounds.size(), res.trace.k);
    for (const auto& r : res.trace.rounds) {
      EXPECT_TRUE(r.girth_ok);
      EXPECT_TRUE(r.cycle_bound_ok);
      for (auto x : r.weights) EXPECT_LT(mpz_class(static_cast<long>(x)), n6);
    }
    EXPECT_LT(res.weight.combined.max(), bk);
  }
  auto no_pm = testing::make_graph(2, 2, {{0, 0}, {1, 0}});
  EXPECT_THROW(run_rounds_adaptive(no_pm), NoPerfectMatching);
}

// Property: each round graph is the min-weight union of the previous one.
TEST(Rounds, TraceChainsUnions) {
  Rng rng(34);
  for (int iter = 0; iter < 40; ++iter) {
    auto g = testing::random_graph(rng, 6, true);
    auto res = run_rounds_adaptive(g);
    const auto& rounds = res.trace.rounds;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
      const EdgeSet& cur = rounds[i].edges;
      const EdgeSet& next = i + 1 < rounds.size() ? rounds[i + 1].edges : res.trace.final_edges;
      auto w = WeightAssignment::from_ints(rounds[i].weights).restrict_to(cur);
      auto u = min_weight_union_edges(g.edge_subgraph(cur), w, UnionMethod::kEnumerate);
      EdgeSet lifted;
      for (EdgeId e : u) lifted.push_back(cur[e]);
      EXPECT_EQ(lifted, next);
    }
  }
}

TEST(Rounds, ObliviousOnTinyGraphs) {
  auto res = run_rounds_oblivious(complete_bipartite(2, 2));
  EXPECT_TRUE(res.found);
  ASSERT_TRUE(res.weight.has_value());
  EXPECT_TRUE(is_isolating(complete_bipartite(2, 2), res.weight->combined));
  auto vac = run_rounds_oblivious(testing::make_graph(2, 2, {{0, 0}, {1, 0}}));
  EXPECT_TRUE(vac.found);
  EXPECT_TRUE(vac.vacuous);
  EXPECT_THROW(run_rounds_oblivious(complete_bipartite(5, 5)), InvalidInput);
  auto k33 = run_rounds_oblivious(complete_bipartite(3, 3));
  EXPECT_TRUE(k33.found);
  EXPECT_TRUE(is_isolating(complete_bipartite(3, 3), k33.weight->combined));
}

}  // namespace
}  // namespace isomatch
