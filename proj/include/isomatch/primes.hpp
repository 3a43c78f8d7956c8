#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace isomatch {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Upper bound on the t-th prime (1-based): t(ln t + ln ln t) for t >= 6.
std::uint64_t nth_prime_upper_bound(std::uint64_t t);

// Random access to the first `count` primes. Built once by a segmented sieve
// that records per-segment prime counts; nth() re-sieves one segment.
class PrimeIndex {
 public:
  explicit PrimeIndex(std::uint64_t count);

  std::uint64_t count() const { return count_; }
  // 0-based: nth(0) == 2.
  std::uint64_t nth(std::uint64_t index) const;
  std::uint64_t largest() const { return largest_; }

 private:
  std::uint64_t count_;
  std::uint64_t largest_ = 0;
  std::vector<std::uint32_t> base_primes_;  // odd primes up to sqrt(limit)
  std::vector<std::uint64_t> cumulative_;   // primes (incl. 2) before each segment
};

// Shared, lazily built index covering at least `count` primes.
std::shared_ptr<const PrimeIndex> prime_index(std::uint64_t count);

}  // namespace isomatch
