#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace isomatch {

// Univariate polynomial over the integers, coefficients by increasing degree.
// The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<mpz_class> coeffs);
  static Poly constant(const mpz_class& c);
  // c * y^degree
  static Poly monomial(const mpz_class& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  mpz_class eval(const mpz_class& y) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // a / b when b divides a exactly; throws InvariantViolation otherwise.
  static Poly divexact(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Fraction-free elimination over Z[y].
Poly poly_determinant(std::vector<std::vector<Poly>> a);

}  // namespace isomatch
