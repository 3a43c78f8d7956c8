#include "isomatch/isolation.hpp"

#include <atomic>
#include <limits>

#include "isomatch/errors.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/parallel.hpp"
#include "isomatch/primes.hpp"

namespace isomatch {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InvalidInput(std::string(what) + " overflows 64 bits");
  }
  return a * b;
}

}  // namespace

WeightAssignment exponential_weights(const BipartiteGraph& g) {
  std::vector<Weight> w(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) mpz_ui_pow_ui(w[e].get_mpz_t(), 2, e);
  return WeightAssignment(std::move(w));
}

std::vector<std::int64_t> exponential_mod(std::size_t edge_count, std::uint64_t modulus) {
  if (modulus < 2) throw InvalidInput("modulus must be at least 2");
  if (modulus > (std::uint64_t{1} << 62)) throw InvalidInput("modulus too large");
  std::vector<std::int64_t> out(edge_count);
  std::uint64_t x = 1;
  for (std::size_t i = 0; i < edge_count; ++i) {
    out[i] = static_cast<std::int64_t>(x);
    x = (x * 2) % modulus;
  }
  return out;
}

std::uint64_t family_bound(std::uint64_t n, std::uint64_t s) {
  if (s == 0) throw InvalidInput("s must be at least 1");
  if (n == 0) throw InvalidInput("graph has no vertices");
  std::uint64_t t = checked_mul(checked_mul(n, n, "n^2 s"), s, "n^2 s");
  return std::max<std::uint64_t>(7, t);
}

WeightFamily deterministic_family(const BipartiteGraph& g, std::uint64_t s,
                                  std::uint64_t max_entries) {
  WeightFamily fam;
  fam.n = g.vertex_count();
  fam.s = s;
  fam.t = family_bound(fam.n, s);
  const std::uint64_t m = g.edge_count();
  if (m != 0 && (fam.t - 1) > max_entries / m) {
    throw InvalidInput("family with t = " + std::to_string(fam.t) + " is too large to materialize");
  }
  fam.assignments.reserve(fam.t - 1);
  for (std::uint64_t j = 2; j <= fam.t; ++j) {
    fam.assignments.push_back(WeightAssignment::from_ints(exponential_mod(m, j)));
    fam.moduli.push_back(j);
  }
  return fam;
}

PrimeWeights random_prime_weights(std::size_t edge_count, std::uint64_t n, std::uint64_t s,
                                  Rng& rng, RandomBudget* budget) {
  if (s == 0) throw InvalidInput("s must be at least 1");
  if (n == 0) throw InvalidInput("graph has no vertices");
  PrimeWeights out;
  out.t = checked_mul(checked_mul(checked_mul(n, n, "n^3 s"), n, "n^3 s"), s, "n^3 s");
  if (out.t > (std::uint64_t{1} << 34)) {
    throw InvalidInput("n^3 s = " + std::to_string(out.t) + " primes is beyond the sieve range");
  }
  RandomBudget local;
  RandomBudget& b = budget ? *budget : local;
  out.prime_index = b.draw_below(rng, out.t, "prime index");
  out.prime = prime_index(out.t)->nth(out.prime_index);
  out.small = exponential_mod(edge_count, out.prime);
  out.weights = WeightAssignment::from_ints(out.small);
  return out;
}

PrimeWeights random_prime_weights(const BipartiteGraph& g, std::uint64_t s, Rng& rng,
                                  RandomBudget* budget) {
  return random_prime_weights(g.edge_count(), g.vertex_count(), s, rng, budget);
}

CombinedWeight combine_with_base(const std::vector<WeightAssignment>& rounds, const Weight& base) {
  if (rounds.empty()) throw InvalidInput("combine needs at least one round");
  const std::size_t m = rounds.front().size();
  for (const auto& r : rounds) {
    if (r.size() != m) throw InvalidInput("rounds disagree on the edge set");
    if (!r.all_nonnegative()) throw InvalidInput("round weights must be nonnegative");
    if (r.max() >= base) throw InvalidInput("base must exceed every round weight");
  }
  CombinedWeight out{rounds, base, WeightAssignment(m)};
  for (EdgeId e = 0; e < m; ++e) {
    Weight acc = 0;
    for (const auto& r : rounds) acc = acc * base + r[e];
    out.combined[e] = acc;
  }
  return out;
}

CombinedWeight combine(const std::vector<WeightAssignment>& rounds, std::size_t matching_size) {
  if (rounds.empty()) throw InvalidInput("combine needs at least one round");
  Weight top = 0;
  for (const auto& r : rounds) {
    if (r.max() > top) top = r.max();
  }
  Weight base = 1 + Weight(static_cast<unsigned long>(std::max<std::size_t>(1, matching_size))) * top;
  return combine_with_base(rounds, base);
}

TrialResult isolation_lemma_trial(const BipartiteGraph& g, std::uint64_t trials,
                                  std::uint64_t seed) {
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  const auto pms = enumerate_pms(g);
  const std::size_t m = g.edge_count();
  std::vector<std::vector<EdgeId>> lists;
  for (const auto& pm : pms) lists.push_back(pm.edges());
  const Rng root(seed);
  std::atomic<std::uint64_t> hits{0};
  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<std::int64_t> w(m);
    std::uint64_t local = 0;
    for (std::uint64_t t = c * kChunk; t < std::min(trials, (c + 1) * kChunk); ++t) {
      Rng rng = root.split(t);
      for (auto& x : w) x = static_cast<std::int64_t>(rng.uniform(1, 2 * m));
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      std::size_t ties = 0;
      for (const auto& list : lists) {
        std::int64_t s = 0;
        for (EdgeId e : list) s += w[e];
        if (s < best) {
          best = s;
          ties = 1;
        } else if (s == best) {
          ++ties;
        }
      }
      if (ties <= 1) ++local;
    }
    hits += local;
  });
  TrialResult out;
  out.trials = trials;
  out.isolating = hits.load();
  out.frequency = mpq_class(static_cast<unsigned long>(out.isolating),
                            static_cast<unsigned long>(trials));
  out.frequency.canonicalize();
  return out;
}

}  // namespace isomatch
