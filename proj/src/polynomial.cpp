#include "isomatch/polynomial.hpp"

#include <algorithm>
#include <utility>

#include "isomatch/errors.hpp"

namespace isomatch {

Poly::Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const mpz_class& c) { return Poly({c}); }

Poly Poly::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class Poly::eval(const mpz_class& y) const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i];
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return Poly(std::move(v));
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InvariantViolation("polynomial division by zero");
  if (a.is_zero()) return Poly();
  if (a.degree() < b.degree()) throw InvariantViolation("inexact polynomial division");
  std::vector<mpz_class> rem = a.c_;
  const std::size_t db = b.c_.size() - 1;
  std::vector<mpz_class> q(rem.size() - db, 0);
  const mpz_class& lead = b.c_.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    mpz_class& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw InvariantViolation("inexact polynomial division");
    }
    mpz_divexact(q[i].get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), q[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  for (const auto& x : rem) {
    if (x != 0) throw InvariantViolation("inexact polynomial division");
  }
  return Poly(std::move(q));
}

Poly poly_determinant(std::vector<std::vector<Poly>> a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw InvalidInput("determinant needs a square matrix");
  }
  if (n == 0) return Poly::constant(1);
  bool negate = false;
  Poly prev = Poly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return Poly();
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = Poly::divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      }
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace isomatch
