#pragma once

#include <optional>
#include <vector>

#include "json.hpp"

#include "gwmaj/rational.hpp"
#include "gwmaj/rational_polynomial.hpp"

namespace gwmaj {

/// Sign changes in (P(c), P'(c), ..., P^{(deg)}(c)), zeros dropped.
int sign_variations(const RationalPolynomial& p, const Rational& c);
/// The same count in the limit c -> +infinity, from leading-coefficient signs.
int sign_variations_at_infinity(const RationalPolynomial& p);

struct BudanBound {
  /// V_a - V_b; the number of roots in (a, b] is this minus an even number.
  int bound = 0;
  /// The bound is 0 or 1, so it equals the root count.
  bool parity_exact = false;
};

/// b = nullopt stands for +infinity.
BudanBound budan_root_bound(const RationalPolynomial& p, const Rational& a, const std::optional<Rational>& b);

/// g(s) = sum_k 2^{-2k} C(n,2k) C(2k,k) s^{2k-1} (s (n+1-2k) - 2k), so that
/// (t f_n(t))' = t^n g((1-t)/t).
RationalPolynomial build_g(int n);
/// g rebuilt from the monomial coefficients d_j of (t f_n(t))' as sum_j d_j (1+s)^{n-j}.
RationalPolynomial build_g_via_substitution(int n);

/// g^{(l)}(1) for l = 0..n from the closed sum
/// n!/(n-l)! sum_{l <= 2k <= n} 2^{-2k} C(2k,k) C(n-l, 2k-l) (n+1+l-4k).
std::vector<Rational> g_derivatives_at_one(int n);

struct GammaCertificate {
  int n = 0;
  int bound = 0;
  std::vector<int> derivative_signs_at_1;
  bool leading_positive = false;
  /// No root of g in (1, +inf) and g -> +inf, so t f_n(t) increases strictly on (0, 1/2).
  bool verdict = false;
};

GammaCertificate gamma_monotone_certificate(int n);

nlohmann::json to_json(const GammaCertificate& c);

}  // namespace gwmaj
