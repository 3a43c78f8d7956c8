#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isomatch/graph.hpp"
#include "isomatch/random.hpp"

namespace isomatch {

// Per-round exponents: round_weights[r][e] is w_r(e) for every edge e.
using RoundWeights = std::vector<std::vector<std::int64_t>>;

// Entry (i, j) is x_0^w_0(e) ... x_{k-1}^w_{k-1}(e) for e = (u_i, v_j).
struct MonomialMatrix {
  std::size_t dim = 0;
  std::size_t variables = 0;
  std::vector<std::vector<std::optional<std::vector<std::int64_t>>>> entries;
};

MonomialMatrix build_monomial_matrix(const BipartiteGraph& g, const RoundWeights& weights);
// det(A) at x = point, over F_P with P = 2^61 - 1.
std::uint64_t evaluate_determinant(const MonomialMatrix& a, std::span<const std::uint64_t> point);

// Random-bit allowance c * ceil(log2 n)^2 with c fixed for every n.
inline constexpr std::uint64_t kBudgetConstant = 64;
std::uint64_t budget_limit(std::size_t n);

struct RandomizedDecision {
  bool has_pm = false;
  RandomBudget budget;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> point;
  std::uint64_t det_residue = 0;
  // Upper bound on the chance that a graph with a perfect matching was
  // reported as having none: round isolation failures plus the
  // Schwartz-Zippel term degree / n^9, capped at 1.
  double error_bound = 0;
};

// Draws k prime-modulus round weights (s = n^4 each) and evaluates the
// monomial determinant at x_r uniform in {1..n^9}. "Yes" answers are sound.
RandomizedDecision decide_randomized(const BipartiteGraph& g, std::uint64_t seed);

// Coefficient of x_r^target in det(A_e), where A_e is the matrix of the edge
// set `edges` with every other edge sharing an endpoint with e removed,
// x_i = values[i] substituted for i > r and x_i for i < r left out. Returned
// as a residue mod P. Above the minimum degree the polynomial is
// interpolated, which is refused when its degree span exceeds degree_cap.
std::uint64_t extract_coefficient(const BipartiteGraph& g, const RoundWeights& weights,
                                  std::span<const EdgeId> edges, EdgeId e, std::size_t r,
                                  std::int64_t target, std::span<const std::uint64_t> values,
                                  std::int64_t degree_cap = 4096);

// The same coefficient for the whole edge set (no edge excluded).
std::uint64_t leading_coefficient(const BipartiteGraph& g, const RoundWeights& weights,
                                  std::span<const EdgeId> edges, std::size_t r,
                                  std::int64_t target, std::span<const std::uint64_t> values);

struct RandomizedSearch {
  std::optional<MatchingSet> matching;
  std::string failure;
  RandomBudget budget;
  std::vector<std::uint64_t> primes;
  RoundWeights weights;
  std::vector<std::uint64_t> point;
  std::vector<EdgeSet> chain;         // H_0, ..., H_k
  std::vector<std::int64_t> targets;  // w_r^* per round
};

// One point x in {1..n^11}^k is drawn once and reused in every round;
// H_{r+1} keeps the edges of H_r whose coefficient at w_r^* is nonzero.
RandomizedSearch search_randomized(const BipartiteGraph& g, std::uint64_t seed,
                                   std::size_t workers = 0);

}  // namespace isomatch
