#include "gwmaj/rational_polynomial.hpp"

#include <algorithm>
#include <utility>

namespace gwmaj {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(std::size_t degree, const Rational& coefficient) {
  std::vector<Rational> c(degree + 1);
  c[degree] = coefficient;
  return RationalPolynomial(std::move(c));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational RationalPolynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::evaluate(double x) const { return (*this)(Rational(x)).get_d(); }

RationalPolynomial RationalPolynomial::derivative(unsigned order) const {
  if (order == 0) return *this;
  if (coeffs_.size() <= order) return {};
  std::vector<Rational> d(coeffs_.size() - order);
  for (std::size_t i = order; i < coeffs_.size(); ++i) {
    d[i - order] = coeffs_[i] * Rational(falling_factorial(static_cast<long>(i), order));
  }
  return RationalPolynomial(std::move(d));
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) c *= scale;
  trim();
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& lhs, const RationalPolynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Rational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::linear_power(const Rational& a, const Rational& b, unsigned e) {
  std::vector<Rational> c(e + 1);
  for (unsigned j = 0; j <= e; ++j) c[j] = Rational(binomial(e, j)) * pow(a, e - j) * pow(b, j);
  return RationalPolynomial(std::move(c));
}

}  // namespace gwmaj
