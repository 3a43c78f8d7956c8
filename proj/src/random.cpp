#include "isomatch/random.hpp"

#include <bit>

#include "isomatch/errors.hpp"

namespace isomatch {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

std::uint64_t Rng::bits(unsigned count) {
  std::uint64_t word = engine_();
  return count >= 64 ? word : (word & ((std::uint64_t{1} << count) - 1));
}

unsigned bit_width_of_range(std::uint64_t bound) {
  // Bits needed to index [0, bound).
  return bound <= 1 ? 0 : static_cast<unsigned>(std::bit_width(bound - 1));
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw InvalidInput("empty range");
  std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return engine_();
  unsigned width = bit_width_of_range(span + 1);
  if (width == 0) return lo;
  for (;;) {
    std::uint64_t x = bits(width);
    if (x <= span) return lo + x;
  }
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t RandomBudget::draw_below(Rng& rng, std::uint64_t bound, std::string purpose) {
  if (bound == 0) throw InvalidInput("draw from an empty range");
  unsigned width = bit_width_of_range(bound);
  std::uint64_t used = 0;
  std::uint64_t value = 0;
  if (width > 0) {
    for (;;) {
      value = rng.bits(width);
      used += width;
      if (value < bound) break;
    }
  }
  bits_ += used;
  draws_.push_back({std::move(purpose), value, used});
  return value;
}

}  // namespace isomatch
