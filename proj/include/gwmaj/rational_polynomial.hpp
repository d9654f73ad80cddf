#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "gwmaj/rational.hpp"

namespace gwmaj {

/// Polynomial with exact rational coefficients in ascending degree order.
/// The highest stored coefficient is nonzero unless the polynomial is zero,
/// in which case no coefficients are stored.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);
  RationalPolynomial(std::initializer_list<Rational> coefficients);

  static RationalPolynomial monomial(std::size_t degree, const Rational& coefficient = 1);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  /// Coefficient of s^i (zero beyond the degree).
  Rational coefficient(std::size_t i) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;

  RationalPolynomial derivative(unsigned order = 1) const;

  RationalPolynomial& operator+=(const RationalPolynomial& rhs);
  RationalPolynomial& operator-=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const Rational& scale);

  friend RationalPolynomial operator+(RationalPolynomial lhs, const RationalPolynomial& rhs) { return lhs += rhs; }
  friend RationalPolynomial operator-(RationalPolynomial lhs, const RationalPolynomial& rhs) { return lhs -= rhs; }
  friend RationalPolynomial operator*(RationalPolynomial lhs, const Rational& rhs) { return lhs *= rhs; }
  friend RationalPolynomial operator*(const RationalPolynomial& lhs, const RationalPolynomial& rhs);
  friend bool operator==(const RationalPolynomial& lhs, const RationalPolynomial& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

  /// (a + b s)^e expanded.
  static RationalPolynomial linear_power(const Rational& a, const Rational& b, unsigned e);

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace gwmaj
