#include "gwmaj/budan.hpp"

#include "gwmaj/errors.hpp"
#include "gwmaj/uniform.hpp"

namespace gwmaj {

namespace {

int count_variations(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<int> derivative_signs(const RationalPolynomial& p, const Rational& c) {
  std::vector<int> signs;
  RationalPolynomial d = p;
  while (!d.is_zero()) {
    signs.push_back(sgn(d(c)));
    d = d.derivative();
  }
  return signs;
}

}  // namespace

int sign_variations(const RationalPolynomial& p, const Rational& c) {
  if (p.is_zero()) throw DomainError("sign variations of the zero polynomial");
  return count_variations(derivative_signs(p, c));
}

int sign_variations_at_infinity(const RationalPolynomial& p) {
  if (p.is_zero()) throw DomainError("sign variations of the zero polynomial");
  std::vector<int> signs;
  RationalPolynomial d = p;
  while (!d.is_zero()) {
    signs.push_back(sgn(d.leading()));
    d = d.derivative();
  }
  return count_variations(signs);
}

BudanBound budan_root_bound(const RationalPolynomial& p, const Rational& a, const std::optional<Rational>& b) {
  if (b && !(a < *b)) throw DomainError("budan_root_bound needs a < b");
  const int va = sign_variations(p, a);
  const int vb = b ? sign_variations(p, *b) : sign_variations_at_infinity(p);
  const int bound = va - vb;
  return {bound, bound <= 1};
}

RationalPolynomial build_g(int n) {
  if (n < 2) throw DomainError("build_g needs n >= 2");
  RationalPolynomial g;
  for (int k = 0; 2 * k <= n; ++k) {
    const Rational w = Rational(binomial(n, 2 * k) * binomial(2 * k, k)) * inverse_power_of_two(2 * k);
    g += RationalPolynomial::monomial(2 * k, w * (n + 1 - 2 * k));
    if (k > 0) g -= RationalPolynomial::monomial(2 * k - 1, w * (2 * k));
  }
  return g;
}

RationalPolynomial build_g_via_substitution(int n) {
  if (n < 2) throw DomainError("build_g needs n >= 2");
  const RationalPolynomial gamma_prime = (RationalPolynomial{0, 1} * build_fn(n).monomial()).derivative();
  RationalPolynomial g;
  for (std::size_t j = 0; j < gamma_prime.coefficients().size(); ++j)
    g += RationalPolynomial::linear_power(1, 1, n - static_cast<unsigned>(j)) * gamma_prime.coefficients()[j];
  return g;
}

std::vector<Rational> g_derivatives_at_one(int n) {
  if (n < 2) throw DomainError("build_g needs n >= 2");
  std::vector<Rational> out;
  for (int l = 0; l <= n; ++l) {
    Rational sum = 0;
    for (int k = 0; 2 * k <= n; ++k) {
      if (2 * k < l) continue;
      sum += Rational(binomial(2 * k, k) * binomial(n - l, 2 * k - l)) * inverse_power_of_two(2 * k) *
             (n + 1 + l - 4 * k);
    }
    out.push_back(sum * Rational(falling_factorial(n, l)));
  }
  return out;
}

GammaCertificate gamma_monotone_certificate(int n) {
  const RationalPolynomial g = build_g(n);
  GammaCertificate c;
  c.n = n;
  c.bound = budan_root_bound(g, 1, std::nullopt).bound;
  c.derivative_signs_at_1 = derivative_signs(g, 1);
  c.leading_positive = sgn(g.leading()) > 0;
  c.verdict = c.bound == 0 && c.leading_positive;
  return c;
}

nlohmann::json to_json(const GammaCertificate& c) {
  return {{"n", c.n}, {"bound", c.bound}, {"derivative_signs_at_1", c.derivative_signs_at_1}, {"verdict", c.verdict}};
}

}  // namespace gwmaj
