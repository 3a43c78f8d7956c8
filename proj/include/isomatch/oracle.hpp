#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "isomatch/graph.hpp"

namespace isomatch {

// Scale guard for the brute-force enumerator.
struct OracleLimits {
  std::size_t max_vertices = 24;
  std::uint64_t max_nodes = 1'000'000;
};

// Process default. Starts from ISOMATCH_ORACLE_LIMIT (a vertex cap) when set.
OracleLimits default_oracle_limits();
void set_default_oracle_limits(const OracleLimits& limits);

// All perfect matchings, found left vertex by left vertex in edge-id order.
// Unbalanced graphs have none. Throws OracleScaleError past the limits.
std::vector<MatchingSet> enumerate_pms(const BipartiteGraph& g,
                                       const OracleLimits& limits = default_oracle_limits());

struct MinWeightPms {
  std::optional<Weight> min_weight;  // empty when there is no perfect matching
  std::vector<MatchingSet> matchings;
};

MinWeightPms min_weight_pms(const BipartiteGraph& g, const WeightAssignment& w,
                            const OracleLimits& limits = default_oracle_limits());
// Same, over a precomputed list of perfect matchings.
MinWeightPms min_weight_pms(const std::vector<MatchingSet>& pms, const WeightAssignment& w);

// True when at most one perfect matching attains the minimum weight; graphs
// without perfect matchings are vacuously isolated.
bool is_isolating(const BipartiteGraph& g, const WeightAssignment& w,
                  const OracleLimits& limits = default_oracle_limits());
bool is_isolating(const std::vector<MatchingSet>& pms, const WeightAssignment& w);

// Minimum-weight perfect matching by the Hungarian method with potentials;
// nullopt when none exists. Only existing edges are ever assigned.
std::optional<std::pair<Weight, EdgeSet>> hungarian(const BipartiteGraph& g,
                                                    const WeightAssignment& w);
// The same on int64 weights (the caller keeps sums in range).
std::optional<std::pair<std::int64_t, EdgeSet>> hungarian(const BipartiteGraph& g,
                                                          std::span<const std::int64_t> w);

// Optimal assignment together with dual potentials: row[l] + col[r] <= w(e)
// on every edge, with equality on the returned matching.
struct AssignmentDual {
  std::int64_t value = 0;
  EdgeSet edges;
  std::vector<std::int64_t> row;
  std::vector<std::int64_t> col;
};
std::optional<AssignmentDual> hungarian_dual(const BipartiteGraph& g,
                                             std::span<const std::int64_t> w);

// For every edge e, the minimum weight of a perfect matching that contains e
// (nullopt when none does): w(e) plus a Hungarian run on G minus e's ends.
std::vector<std::optional<Weight>> forced_min_weights(const BipartiteGraph& g,
                                                      const WeightAssignment& w,
                                                      std::size_t workers = 0);

// Maximum-cardinality matching by Hopcroft-Karp.
EdgeSet hopcroft_karp(const BipartiteGraph& g);
bool has_perfect_matching(const BipartiteGraph& g);
// Per edge: does some perfect matching contain it?
std::vector<char> edges_in_some_pm(const BipartiteGraph& g);

// Sum over perfect matchings of sign(M) * 2^w(M), sign taken from the
// permutation left i -> right j. Weights must be nonnegative.
mpz_class signed_power_sum(const BipartiteGraph& g, const WeightAssignment& w,
                           const OracleLimits& limits = default_oracle_limits());
int permutation_sign(const BipartiteGraph& g, const MatchingSet& m);

// Exact point x in R^E.
using FractionalPoint = std::vector<mpq_class>;

FractionalPoint incidence_vector(const BipartiteGraph& g, const MatchingSet& m);
// Every coordinate >= 0 and every vertex's incident coordinates sum to 1.
bool polytope_conditions(const BipartiteGraph& g, const FractionalPoint& x);

// Weighted general graph on vertices 0..n-1.
struct GeneralGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::int64_t> weights;
};

// Searches graphs with up to max_n vertices and 0/1 weights for one in which
// every edge lies in some minimum-weight perfect matching but some perfect
// matching is heavier than the minimum.
std::optional<GeneralGraph> find_nonbipartite_counterexample(std::size_t max_n);

}  // namespace isomatch
