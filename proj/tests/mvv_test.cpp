#include <gtest/gtest.h>

#include <numeric>

#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/matrix.hpp"
#include "isomatch/isolation.hpp"
#include "isomatch/mvv.hpp"
#include "isomatch/oracle.hpp"
#include "test_support.hpp"

namespace isomatch {
namespace {

mpz_class leibniz(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) sign = -sign;
      }
    }
    mpz_class term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

TEST(Matrix, BareissMatchesLeibniz) {
  Rng rng(8);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = rng.uniform(0, 5);
    IntMatrix a(n, std::vector<mpz_class>(n));
    for (auto& row : a) {
      for (auto& x : row) x = static_cast<long>(rng.uniform(0, 6)) - 3;
    }
    mpz_class ref = leibniz(a);
    EXPECT_EQ(bareiss_determinant(a), ref);
    ModMatrix m(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = fp::from_mpz(a[i][j]);
    }
    EXPECT_EQ(det_mod_p(m), fp::from_mpz(ref));
  }
}

TEST(Matrix, FieldArithmetic) {
  EXPECT_EQ(fp::mul(fp::kP - 1, fp::kP - 1), 1u);
  EXPECT_EQ(fp::mul(fp::inv(12345), 12345), 1u);
  EXPECT_EQ(fp::pow(3, fp::kP - 1), 1u);
  EXPECT_EQ(fp::to_signed(fp::kP - 2), -2);
}

TEST(Mvv, SmallDecisions) {
  auto k22 = complete_bipartite(2, 2);
  EXPECT_EQ(decide(k22, exponential_weights(k22), true), Decision::kHasPmCertified);
  EXPECT_EQ(decide(k22, WeightAssignment(4)), Decision::kIndeterminate);
  auto no_pm = testing::make_graph(2, 2, {{0, 0}, {1, 0}});
  EXPECT_EQ(decide(no_pm, exponential_weights(no_pm), true), Decision::kNoPmCertified);
  EXPECT_EQ(decide(complete_bipartite(2, 3), WeightAssignment(6)), Decision::kNoPmCertified);
  EXPECT_THROW(build_matrix(k22, WeightAssignment{0, -1, 0, 0}), InvalidInput);
  EXPECT_THROW(min_matching_weight(no_pm, WeightAssignment{0, 0}), InvalidInput);
  EXPECT_EQ(two_adic_valuation(mpz_class(-40)), 3u);
}

// Property: det(A) equals the signed sum over perfect matchings of 2^w(M);
// its 2-adic valuation is the minimum weight whenever w isolates; extraction
// returns the oracle's unique minimum.
TEST(Mvv, DeterminantMatchesSignedSum) {
  Rng rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    auto g = testing::random_graph(rng, 5, iter % 3 != 0);
    if (!g.is_balanced()) continue;
    auto w = testing::random_weights(g, rng, 0, 2 * g.edge_count());
    mpz_class det = determinant(build_matrix(g, w));
    ASSERT_EQ(det, signed_power_sum(g, w));
    auto best = min_weight_pms(g, w);
    if (best.matchings.size() != 1) continue;
    EXPECT_EQ(min_matching_weight(g, w), *best.min_weight);
    auto ex = extract(g, w, 2);
    ASSERT_TRUE(ex.matching.has_value()) << ex.failure;
    EXPECT_EQ(ex.matching->edges(), best.matchings[0].edges());
    EXPECT_EQ(ex.min_weight, *best.min_weight);
  }
}

// Property: a non-isolating weight never yields a wrong "verified" answer.
TEST(Mvv, ExtractNeverReturnsUnverifiedSets) {
  Rng rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    auto g = testing::random_graph(rng, 4, true);
    auto w = testing::random_weights(g, rng, 0, 1);
    if (determinant(build_matrix(g, w)) == 0) continue;
    auto ex = extract(g, w, 1);
    if (!ex.matching) {
      EXPECT_FALSE(ex.failure.empty());
      continue;
    }
    EXPECT_TRUE(ex.matching->is_perfect());
    EXPECT_EQ(w.total(ex.matching->edges()), ex.min_weight);
  }
}

}  // namespace
}  // namespace isomatch
