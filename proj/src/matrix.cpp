#include "isomatch/matrix.hpp"

#include <utility>

#include "isomatch/errors.hpp"

namespace isomatch {

mpz_class bareiss_determinant(IntMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw InvalidInput("determinant needs a square matrix");
  }
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        a[i][j] *= a[k][k];
        a[i][j] -= a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  mpz_class det = a[n - 1][n - 1];
  return sign < 0 ? mpz_class(-det) : det;
}

namespace fp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  a %= kP;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a) {
  if (a % kP == 0) throw InvalidInput("zero has no inverse");
  return pow(a, kP - 2);
}

std::uint64_t from_mpz(const mpz_class& x) {
  static const mpz_class p(std::to_string(kP));
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return r.get_ui();
}

mpz_class to_signed(std::uint64_t x) {
  mpz_class r(std::to_string(x));
  if (x > kP / 2) r -= mpz_class(std::to_string(kP));
  return r;
}

}  // namespace fp

std::uint64_t det_mod_p(ModMatrix a) {
  const std::size_t n = a.size();
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = fp::sub(0, det);
    }
    det = fp::mul(det, a[k][k]);
    const std::uint64_t inv = fp::inv(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const std::uint64_t f = fp::mul(a[i][k], inv);
      for (std::size_t j = k; j < n; ++j) a[i][j] = fp::sub(a[i][j], fp::mul(f, a[k][j]));
    }
  }
  return det;
}

}  // namespace isomatch
