#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>

#include "isomatch/graph.hpp"
#include "isomatch/matrix.hpp"

namespace isomatch {

// Largest edge weight accepted as an exponent of 2.
inline constexpr unsigned long kMaxPowerExponent = 1ul << 20;

// Biadjacency matrix with entry (i, j) = 2^w(e) for e = (u_i, v_j), else 0.
struct PowerMatrix {
  IntMatrix entries;
};

PowerMatrix build_matrix(const BipartiteGraph& g, const WeightAssignment& w);
mpz_class determinant(const PowerMatrix& a);

enum class Decision { kHasPmCertified, kNoPmCertified, kIndeterminate };
const char* to_string(Decision d);

// A nonzero determinant certifies a perfect matching. A zero determinant
// certifies none only when the caller vouches that w isolates (for example
// after exhausting a family that is guaranteed to contain an isolating member).
Decision decide(const BipartiteGraph& g, const WeightAssignment& w,
                bool weight_known_isolating = false);

// 2-adic valuation of det(A). Throws InvalidInput when det(A) = 0.
Weight min_matching_weight(const BipartiteGraph& g, const WeightAssignment& w);

struct ExtractResult {
  std::optional<MatchingSet> matching;  // set only when verified perfect
  Weight min_weight;
  std::string failure;
};

// Deletes each edge in turn; e is kept when det(A_{G-e}) is zero or has
// 2-adic valuation above the minimum. The kept set must be a perfect
// matching of weight min_weight, otherwise the result carries a failure.
ExtractResult extract(const BipartiteGraph& g, const WeightAssignment& w, std::size_t workers = 0);

// 2-adic valuation of a nonzero integer.
unsigned long two_adic_valuation(const mpz_class& x);

}  // namespace isomatch
