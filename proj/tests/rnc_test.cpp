#include <gtest/gtest.h>

#include <algorithm>

#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/matrix.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/rnc.hpp"
#include "test_support.hpp"

namespace isomatch {
namespace {

// Reference coefficient: sum over perfect matchings M of the active edges
// with w_r(M) = target of sign(M) * prod_{i > r} values[i]^{w_i(M)} mod P.
std::uint64_t reference_coefficient(const BipartiteGraph& g, const RoundWeights& weights,
                                    const EdgeSet& active, std::size_t r, std::int64_t target,
                                    const std::vector<std::uint64_t>& values) {
  auto sub = g.edge_subgraph(active);
  std::uint64_t total = 0;
  for (const auto& m : enumerate_pms(sub)) {
    std::int64_t wr = 0;
    std::uint64_t term = 1;
    for (EdgeId local : m.edges()) {
      EdgeId e = active[local];
      wr += weights[r][e];
      for (std::size_t i = r + 1; i < weights.size(); ++i) {
        term = fp::mul(term, fp::pow(values[i], static_cast<std::uint64_t>(weights[i][e])));
      }
    }
    if (wr != target) continue;
    total = permutation_sign(sub, m) > 0 ? fp::add(total, term) : fp::sub(total, term);
  }
  return total;
}

TEST(Rnc, BudgetLimit) {
  EXPECT_EQ(budget_limit(8), kBudgetConstant * 9);
  EXPECT_EQ(budget_limit(12), kBudgetConstant * 16);
  EXPECT_EQ(budget_limit(16), kBudgetConstant * 16);
  EXPECT_EQ(budget_limit(20), kBudgetConstant * 25);
}

TEST(Rnc, EvaluateDeterminantOfMonomials) {
  auto g = complete_bipartite(2, 2);
  RoundWeights w{{1, 0, 0, 1}, {0, 2, 1, 0}};
  auto a = build_monomial_matrix(g, w);
  // x0^2 - x1^3
  std::vector<std::uint64_t> p{5, 3};
  EXPECT_EQ(evaluate_determinant(a, p), fp::kP - 2);
  std::vector<std::uint64_t> root{8, 4};
  EXPECT_EQ(evaluate_determinant(a, root), 0u);
  EXPECT_THROW(evaluate_determinant(a, std::vector<std::uint64_t>{1}), InvalidInput);
  EXPECT_THROW(build_monomial_matrix(g, RoundWeights{{1, 2}}), InvalidInput);
}

TEST(Rnc, DecisionIsOneSided) {
  auto no_pm = testing::make_graph(3, 3, {{0, 0}, {1, 0}, {2, 1}, {2, 2}});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto d = decide_randomized(no_pm, seed);
    EXPECT_FALSE(d.has_pm);
    EXPECT_EQ(d.det_residue, 0u);
  }
  auto g = complete_bipartite(4, 4);
  auto d = decide_randomized(g, 1);
  EXPECT_TRUE(d.has_pm);
  EXPECT_EQ(d.primes.size(), 2u);
  EXPECT_EQ(d.point.size(), 2u);
  EXPECT_LE(d.budget.bits_consumed(), budget_limit(8));
  EXPECT_FALSE(decide_randomized(complete_bipartite(2, 3), 1).has_pm);
}

// Property: extracted coefficients match the matching-by-matching reference,
// both at the minimum degree and above it.
TEST(Rnc, CoefficientMatchesReference) {
  Rng rng(40);
  for (int iter = 0; iter < 150; ++iter) {
    auto g = testing::random_graph(rng, 4, true);
    RoundWeights weights(3, std::vector<std::int64_t>(g.edge_count()));
    for (auto& w : weights) {
      for (auto& x : w) x = static_cast<std::int64_t>(rng.uniform(0, 4));
    }
    std::vector<std::uint64_t> values{rng.uniform(1, 1000), rng.uniform(1, 1000),
                                      rng.uniform(1, 1000)};
    const std::size_t r = rng.uniform(0, 2);
    EdgeSet all = g.all_edges();
    auto low = hungarian_dual(g, weights[r]);
    ASSERT_TRUE(low.has_value());
    EXPECT_EQ(leading_coefficient(g, weights, all, r, low->value, values),
              reference_coefficient(g, weights, all, r, low->value, values));
    if (low->value > 0) {
      EXPECT_EQ(leading_coefficient(g, weights, all, r, low->value - 1, values), 0u);
    }
    EdgeId e = rng.uniform(0, g.edge_count() - 1);
    EdgeSet active;
    for (EdgeId f : all) {
      if (f == e || (g.left_end(f) != g.left_end(e) && g.right_end(f) != g.right_end(e))) {
        active.push_back(f);
      }
    }
    for (std::int64_t target = 0; target <= 4 * static_cast<std::int64_t>(g.num_left());
         ++target) {
      ASSERT_EQ(extract_coefficient(g, weights, all, e, r, target, values),
                reference_coefficient(g, weights, active, r, target, values));
    }
  }
}

TEST(Rnc, DegreeCapIsEnforced) {
  auto g = complete_bipartite(3, 3);
  // With u1 v1 fixed, the rest is K_{2,2} with matchings of weight 0 and 200.
  RoundWeights w{{0, 0, 0, 0, 0, 100, 0, 100, 0}};
  std::vector<std::uint64_t> values{2};
  EXPECT_THROW(extract_coefficient(g, w, g.all_edges(), 0, 0, 150, values, 10), InvalidInput);
  EXPECT_EQ(extract_coefficient(g, w, g.all_edges(), 0, 0, 0, values, 10), 1u);
  EXPECT_EQ(extract_coefficient(g, w, g.all_edges(), 0, 0, 200, values, 300), fp::kP - 1);
}

// Property: every successful search returns a verified perfect matching, and
// graphs without one are never reported as having one.
TEST(Rnc, SearchReturnsPerfectMatchings) {
  Rng rng(41);
  int successes = 0;
  for (int iter = 0; iter < 30; ++iter) {
    auto g = testing::random_graph(rng, 4, iter % 5 != 0);
    auto res = search_randomized(g, 1000 + iter, 1);
    if (res.matching) {
      ++successes;
      EXPECT_TRUE(res.matching->is_perfect());
      EXPECT_TRUE(MatchingSet(g, res.matching->edges()).is_perfect());
      EXPECT_EQ(res.chain.size(), res.primes.size() + 1);
    } else {
      EXPECT_FALSE(res.failure.empty());
    }
    if (!has_perfect_matching(g)) EXPECT_FALSE(res.matching.has_value());
  }
  EXPECT_GT(successes, 10);
}

}  // namespace
}  // namespace isomatch
