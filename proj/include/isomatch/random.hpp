#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace isomatch {

// Seeded 64-bit generator. split() derives independent child streams so that
// parallel work can draw without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  // Low `count` bits of a fresh word, count in [1, 64].
  std::uint64_t bits(unsigned count);
  // Uniform in [lo, hi] by rejection sampling.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  double uniform01();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Bit-accounted randomness: every draw records how many random bits it used.
class RandomBudget {
 public:
  struct Draw {
    std::string purpose;
    std::uint64_t value;
    std::uint64_t bits;
  };

  // Uniform in [0, bound) from ceil(log2 bound)-bit chunks, retrying on
  // overshoot. Every chunk, accepted or not, is charged to the budget.
  std::uint64_t draw_below(Rng& rng, std::uint64_t bound, std::string purpose);

  std::uint64_t bits_consumed() const { return bits_; }
  const std::vector<Draw>& draws() const { return draws_; }

 private:
  std::uint64_t bits_ = 0;
  std::vector<Draw> draws_;
};

unsigned bit_width_of_range(std::uint64_t bound);

}  // namespace isomatch
