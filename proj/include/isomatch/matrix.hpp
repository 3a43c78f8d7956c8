#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace isomatch {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Fraction-free Gaussian elimination; every division is exact.
mpz_class bareiss_determinant(IntMatrix a);

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace fp {

inline constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kP);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t s = lo + hi;
  s = (s & kP) + (s >> 61);
  return s >= kP ? s - kP : s;
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kP ? s - kP : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e);
std::uint64_t inv(std::uint64_t a);
// Residue of a (possibly negative) big integer.
std::uint64_t from_mpz(const mpz_class& x);
// Representative in (-P/2, P/2].
mpz_class to_signed(std::uint64_t x);

}  // namespace fp

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

// Determinant over F_P by Gaussian elimination.
std::uint64_t det_mod_p(ModMatrix a);

}  // namespace isomatch
