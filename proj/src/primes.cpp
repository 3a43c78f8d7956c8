#include "isomatch/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "isomatch/errors.hpp"

namespace isomatch {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// One segment holds this many odd numbers, one byte each.
constexpr std::uint64_t kSegment = std::uint64_t{1} << 19;
// Odd primes removed by copying a periodic pattern instead of marking.
constexpr std::uint32_t kPresieve[] = {3, 5, 7, 11, 13};
constexpr std::uint64_t kPattern = 3 * 5 * 7 * 11 * 13;

const std::vector<std::uint8_t>& presieve_pattern() {
  // pattern[i] describes odd number 2i+1 modulo the period.
  static const std::vector<std::uint8_t> pattern = [] {
    std::vector<std::uint8_t> p(kPattern, 1);
    for (std::uint32_t q : kPresieve) {
      for (std::uint64_t i = (q - 1) / 2; i < kPattern; i += q) p[i] = 0;
    }
    return p;
  }();
  return pattern;
}

// Fills seg[i] = 1 iff 2(lo+i)+1 is coprime to all base primes (or is one of
// them), for i < len. next[k] tracks the next index hit by base prime k and is
// advanced past the segment.
void sieve_segment(std::uint64_t lo, std::uint64_t len, const std::vector<std::uint32_t>& base,
                   std::vector<std::uint64_t>& next, std::uint8_t* seg) {
  const auto& pattern = presieve_pattern();
  std::uint64_t off = lo % kPattern;
  std::uint64_t filled = 0;
  while (filled < len) {
    std::uint64_t chunk = std::min(len - filled, kPattern - off);
    std::memcpy(seg + filled, pattern.data() + off, chunk);
    filled += chunk;
    off = 0;
  }
  const std::uint64_t hi = lo + len;
  for (std::size_t k = 0; k < base.size(); ++k) {
    const std::uint64_t p = base[k];
    std::uint64_t j = next[k];
    if (p <= 13) continue;
    for (; j < hi; j += p) seg[j - lo] = 0;
    next[k] = j;
  }
  // The pattern also cleared the presieve primes themselves.
  for (std::uint32_t q : kPresieve) {
    std::uint64_t idx = (q - 1) / 2;
    if (idx >= lo && idx < hi) seg[idx - lo] = 1;
  }
  if (lo == 0) seg[0] = 0;  // 1 is not prime
}

std::uint64_t count_ones(const std::uint8_t* seg, std::uint64_t len) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < len; ++i) c += seg[i];
  return c;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t nth_prime_upper_bound(std::uint64_t t) {
  if (t < 6) return 13;
  double x = static_cast<double>(t);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

PrimeIndex::PrimeIndex(std::uint64_t count) : count_(count) {
  if (count == 0) throw InvalidInput("prime index needs count >= 1");
  const std::uint64_t limit = nth_prime_upper_bound(count);
  const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 2;
  {
    std::vector<char> small(root + 1, 1);
    for (std::uint64_t i = 2; i * i <= root; ++i) {
      if (small[i]) {
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
      }
    }
    for (std::uint64_t i = 3; i <= root; i += 2) {
      if (small[i]) base_primes_.push_back(static_cast<std::uint32_t>(i));
    }
  }
  std::vector<std::uint64_t> next(base_primes_.size());
  for (std::size_t k = 0; k < base_primes_.size(); ++k) {
    std::uint64_t p = base_primes_[k];
    next[k] = (p * p - 1) / 2;
  }
  std::vector<std::uint8_t> seg(kSegment);
  std::uint64_t found = 1;  // the prime 2
  cumulative_.push_back(found);
  const std::uint64_t odd_total = (limit + 1) / 2;
  if (count == 1) {
    largest_ = 2;
    return;
  }
  for (std::uint64_t lo = 0; lo < odd_total; lo += kSegment) {
    std::uint64_t len = std::min(kSegment, odd_total - lo);
    sieve_segment(lo, len, base_primes_, next, seg.data());
    std::uint64_t here = count_ones(seg.data(), len);
    if (found + here >= count) {
      // Last needed segment: locate the count-th prime exactly.
      std::uint64_t need = count - found;
      for (std::uint64_t i = 0; i < len; ++i) {
        if (seg[i] && --need == 0) {
          largest_ = 2 * (lo + i) + 1;
          break;
        }
      }
      return;
    }
    found += here;
    cumulative_.push_back(found);
  }
  throw InvariantViolation("prime upper bound too small");
}

std::uint64_t PrimeIndex::nth(std::uint64_t index) const {
  if (index >= count_) throw InvalidInput("prime index out of range");
  if (index == 0) return 2;
  // cumulative_[s] = number of primes (with 2) strictly before segment s.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), index);
  std::uint64_t s = static_cast<std::uint64_t>(it - cumulative_.begin()) - 1;
  std::uint64_t lo = s * kSegment;
  std::vector<std::uint64_t> next(base_primes_.size());
  for (std::size_t k = 0; k < base_primes_.size(); ++k) {
    std::uint64_t p = base_primes_[k];
    std::uint64_t first = (p * p - 1) / 2;
    if (first < lo) {
      // Indices hit by p are congruent to (p-1)/2 modulo p.
      std::uint64_t r = (p - 1) / 2;
      first = lo + (r + p - lo % p) % p;
    }
    next[k] = first;
  }
  std::vector<std::uint8_t> seg(kSegment);
  sieve_segment(lo, kSegment, base_primes_, next, seg.data());
  std::uint64_t rank = index - cumulative_[s];  // 0-based within segment
  for (std::uint64_t i = 0; i < kSegment; ++i) {
    if (seg[i]) {
      if (rank == 0) return 2 * (lo + i) + 1;
      --rank;
    }
  }
  throw InvariantViolation("prime index segment inconsistent");
}

std::shared_ptr<const PrimeIndex> prime_index(std::uint64_t count) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const PrimeIndex>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.lower_bound(count);
  if (it != cache.end()) {
    // An index over more primes answers nth() for smaller counts as well, but
    // count() must report the request, so only reuse exact matches.
    if (it->first == count) return it->second;
  }
  auto idx = std::make_shared<const PrimeIndex>(count);
  cache.emplace(count, idx);
  return idx;
}

}  // namespace isomatch
