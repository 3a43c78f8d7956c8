#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "isomatch/cycles.hpp"
#include "isomatch/graph.hpp"
#include "isomatch/isolation.hpp"

namespace isomatch {

// k = max(1, ceil(log2 n) - 1).
std::size_t round_count(std::size_t n);
// Cycle length screened in round i: min(2^(i+2), n).
std::size_t cycle_threshold(std::size_t round, std::size_t n);
// r' for a graph without cycles of length <= r: 2r for even r, 2r - 2 for odd.
std::size_t doubled_length(std::size_t r);

struct ScreenResult {
  std::uint64_t modulus = 0;
  std::vector<std::int64_t> weights;  // exponential weights mod modulus on every edge of g
  std::size_t cycles = 0;             // cycles screened
  std::uint64_t tried = 0;            // moduli examined
};

// First modulus j in 2..t for which every cycle of length <= threshold in
// the subgraph `current` of g has nonzero circulation under exponential
// weights mod j (edges numbered as in g). Throws InvariantViolation when no
// modulus up to t works.
ScreenResult screen_round(const BipartiteGraph& g, const EdgeSet& current, std::size_t threshold,
                          std::uint64_t t);

enum class UnionMethod {
  kEnumerate,  // union of the oracle's minimum-weight matchings
  kForced,     // edges whose forced minimum equals the global minimum
};

// Edges lying in some minimum-weight perfect matching, as ids of g.
// Throws NoPerfectMatching when g has none.
EdgeSet min_weight_union_edges(const BipartiteGraph& g, const WeightAssignment& w,
                               UnionMethod method, std::size_t workers = 0);
// Forced method, cross-checked by enumeration when the oracle scale allows.
EdgeSet min_weight_union_edges(const BipartiteGraph& g, const WeightAssignment& w);
BipartiteGraph min_weight_union(const BipartiteGraph& g, const WeightAssignment& w);

struct VanishReport {
  std::size_t cycles = 0;
  std::size_t nonzero = 0;
  std::vector<Cycle> violations;  // nonzero-circulation cycles inside the union
  bool ok() const { return violations.empty(); }
};
VanishReport verify_cycles_vanish(const BipartiteGraph& g, const WeightAssignment& w);

struct EqualWeightReport {
  std::size_t union_pms = 0;
  std::optional<Weight> min_weight;
  std::size_t violations = 0;  // union matchings heavier than the minimum
  bool ok() const { return violations == 0; }
};
EqualWeightReport verify_equal_weights(const BipartiteGraph& g, const WeightAssignment& w);

struct CycleBoundReport {
  bool skipped = false;  // g has a cycle of length <= r
  std::size_t r = 0;
  std::size_t r_prime = 0;
  bool odd_branch = false;
  std::size_t cycles = 0;
  mpz_class bound;  // n^4
  bool ok() const { return skipped || cycles <= bound; }
};
CycleBoundReport verify_cycle_bound(const BipartiteGraph& g, std::size_t r);

struct RoundRecord {
  std::size_t index = 0;
  EdgeSet edges;  // E_i as edge ids of G_0
  std::uint64_t modulus = 0;
  std::vector<std::int64_t> weights;  // w_i on every edge of G_0
  std::size_t girth_bound = 0;        // r: G_i has no cycle of length <= r
  std::size_t r_prime = 0;
  bool odd_branch = false;
  std::size_t threshold = 0;     // screened cycle length
  std::size_t short_cycles = 0;  // cycles of G_i of length <= threshold
  std::uint64_t candidates_tried = 0;
  bool girth_ok = false;        // G_i really has no cycle of length <= r
  bool cycle_bound_ok = false;  // short_cycles <= n^4
  bool union_cross_checked = false;
};

struct RoundTrace {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  std::vector<RoundRecord> rounds;
  EdgeSet final_edges;
  std::size_t effective_rounds = 0;  // rounds that removed at least one edge
};

struct AdaptiveOptions {
  bool cross_check = true;  // compare both union constructions when feasible
  std::size_t workers = 0;
};

struct AdaptiveResult {
  RoundTrace trace;
  CombinedWeight weight;
  MatchingSet matching;
  bool isolating = false;  // combined weight isolates G_0 (forced-union check)
};

// Round i screens all cycles of G_i up to min(2^(i+2), n) with the
// deterministic family for s = n^4, takes the first modulus giving each of
// them nonzero circulation and moves to the minimum-weight union.
AdaptiveResult run_rounds_adaptive(const BipartiteGraph& g, const AdaptiveOptions& options = {});

struct ObliviousResult {
  bool found = false;
  bool vacuous = false;  // g has no perfect matching
  std::vector<std::uint64_t> moduli;
  std::optional<CombinedWeight> weight;
  std::uint64_t tried = 0;
};

// Walks the product of per-round families (moduli tuples in order of their
// largest entry) without looking at any G_i, returning the first combined
// weight the oracle confirms isolating.
ObliviousResult run_rounds_oblivious(const BipartiteGraph& g, std::uint64_t max_tries = 10'000'000);

}  // namespace isomatch
