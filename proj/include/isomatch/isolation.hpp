#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isomatch/graph.hpp"
#include "isomatch/random.hpp"

namespace isomatch {

// w(e_i) = 2^(i-1) in edge order.
WeightAssignment exponential_weights(const BipartiteGraph& g);

// 2^(i-1) mod modulus for i = 1..edge_count, as machine integers.
std::vector<std::int64_t> exponential_mod(std::size_t edge_count, std::uint64_t modulus);

// Largest modulus of the deterministic family: max(7, n^2 s).
std::uint64_t family_bound(std::uint64_t n, std::uint64_t s);

// The assignments exponential_weights mod j for j = 2..t.
struct WeightFamily {
  std::vector<WeightAssignment> assignments;
  std::vector<std::uint64_t> moduli;
  std::uint64_t n = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
};

// Materializes the whole family; refuses families above max_entries weights
// in total (use exponential_mod to walk larger ones lazily).
WeightFamily deterministic_family(const BipartiteGraph& g, std::uint64_t s,
                                  std::uint64_t max_entries = 20'000'000);

struct PrimeWeights {
  WeightAssignment weights;
  std::vector<std::int64_t> small;  // the same weights as machine integers
  std::uint64_t prime = 0;
  std::uint64_t prime_index = 0;  // 0-based among the first t primes
  std::uint64_t t = 0;
};

// Uniform prime among the first n^3 s primes, then exponential weights mod
// that prime. The index draw is charged to `budget` when given.
PrimeWeights random_prime_weights(const BipartiteGraph& g, std::uint64_t s, Rng& rng,
                                  RandomBudget* budget = nullptr);
// Same with the edge count and vertex count given directly.
PrimeWeights random_prime_weights(std::size_t edge_count, std::uint64_t n, std::uint64_t s,
                                  Rng& rng, RandomBudget* budget = nullptr);

// w = w_0 B^(k-1) + w_1 B^(k-2) + ... + w_(k-1).
struct CombinedWeight {
  std::vector<WeightAssignment> rounds;
  Weight base;
  WeightAssignment combined;
};

// Picks B = 1 + matching_size * (largest round weight), so that the weight of
// a matching with matching_size edges in one round stays below B and matching
// weights compare lexicographically by rounds.
CombinedWeight combine(const std::vector<WeightAssignment>& rounds, std::size_t matching_size);
// Explicit base; must exceed every round weight.
CombinedWeight combine_with_base(const std::vector<WeightAssignment>& rounds, const Weight& base);

struct TrialResult {
  std::uint64_t trials = 0;
  std::uint64_t isolating = 0;
  mpq_class frequency;
};

// Draws uniform weights from {1..2m} `trials` times and counts how often the
// oracle finds a unique minimum-weight perfect matching.
TrialResult isolation_lemma_trial(const BipartiteGraph& g, std::uint64_t trials,
                                  std::uint64_t seed);

}  // namespace isomatch
