#pragma once

#include <functional>
#include <iosfwd>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "gwmaj/offspring.hpp"
#include "gwmaj/rational.hpp"
#include "gwmaj/rational_polynomial.hpp"
#include "gwmaj/simplex.hpp"

namespace gwmaj {

/// f_n(t): probability that n voters, each undecided with probability t and
/// otherwise split evenly between two opinions, produce no strict majority.
///
/// In the Bernstein basis of degree n the coefficient of B_{n-2k,n} is
/// xi_{2k} = 2^{-2k} C(2k,k) and all others vanish, so every coefficient is a
/// nonnegative rational. Floating-point values and derivatives are computed by
/// de Casteljau on the (rounded) Bernstein coefficients of the derivative,
/// which stays accurate to a few ulps for any degree.
class MajorityPolynomial {
 public:
  explicit MajorityPolynomial(int n);

  int arity() const noexcept { return n_; }
  /// Exact Bernstein coefficients beta_0..beta_n.
  const std::vector<Rational>& bernstein() const noexcept { return bernstein_; }
  /// Exact monomial expansion (built on first use).
  const RationalPolynomial& monomial() const;

  double operator()(double t) const { return derivative(0, t); }
  double derivative(int order, double t) const;

  Rational exact(const Rational& t) const { return exact_derivative(0, t); }
  Rational exact_derivative(int order, const Rational& t) const;

 private:
  static constexpr int kCachedOrders = 4;

  std::vector<Rational> differences(int order) const;

  int n_;
  std::vector<Rational> bernstein_;
  /// Rounded n!/(n-l)! Delta^l beta for l < kCachedOrders.
  std::vector<std::vector<double>> control_;
  mutable std::once_flag monomial_once_;
  mutable RationalPolynomial monomial_;
};

/// Shared, write-once instance for arity n >= 1 (f_1(t) = t).
const MajorityPolynomial& build_fn(int n);

double eval_fn(int n, double t);
double eval_fn_derivative(int n, int order, double t);
Rational eval_fn_exact(int n, const Rational& t);
Rational eval_fn_derivative_exact(int n, int order, const Rational& t);

/// (1/pi) int_0^pi ((1-t) cos x + t)^n dx by Gauss-Legendre; order 0 selects max(40, 2n).
double eval_fn_integral(int n, double t, int quadrature_order = 0);

/// Largest |eval_fn - eval_fn_integral| on a uniform grid of points+1 nodes of [0,1].
double integral_disagreement(int n, int points, int quadrature_order = 0);

/// h_k(x) = H_1(1 - kx, x, ..., x).
double eval_hk(int k, const MajorityMap& map, double x);
double eval_hk(int k, const OffspringDistribution& dist, double x);

/// f = sum_n q_n f_n for a Galton-Watson law, truncated where the discarded
/// mass falls below tail_eps (each f_n <= 1, so the error is at most that mass).
///
/// All f_n(t), n <= N*, come from one pass over the tally difference of a lazy
/// random walk (step 0 with probability t, +-1 with probability (1-t)/2):
/// f_n(t) is the probability that the walk sits at 0 after n steps.
class GWMixture {
 public:
  explicit GWMixture(const OffspringDistribution& dist, double tail_eps = kDefaultTailEpsilon);

  const OffspringDistribution& distribution() const noexcept { return dist_; }
  int truncation_order() const noexcept { return trunc_.max_n; }
  double tail_mass() const noexcept { return trunc_.tail_mass; }

  double operator()(double t) const { return derivative(0, t); }
  double derivative(int order, double t) const;
  /// f(t), f'(t), ..., f^{(order)}(t).
  std::vector<double> derivatives(int order, double t) const;

 private:
  OffspringDistribution dist_;
  Truncation trunc_;
};

double eval_f_gw(const OffspringDistribution& dist, double t, double tail_eps = kDefaultTailEpsilon);

/// Closed form of f for the shifted geometric law q_n = p(1-p)^{n-2}; order <= 2.
double geometric_f_closed(double p, double t);
double geometric_f_closed_derivative(double p, int order, double t);

/// Probability of an undecided parent when n voters are undecided with
/// probability t and otherwise split evenly among three opinions.
double eval_f3(int n, double t);
Rational eval_f3_exact(int n, const Rational& t);

/// Global minimiser of f_n on [0,1] for even n: the root of f_n'.
double argmin_fn(int n);

struct RecurrenceReport {
  int n = 0;
  /// (t-1)/n f_n' = f_n - f_{n-1} at every point and as polynomials.
  bool strange = false;
  /// f_n - t = (t-1) sum_{k=2}^n f_k'/k at every point.
  bool telescoped = false;
  /// |f_n(x) - f_{n-1}(x)| at x = argmin f_n, for even n; -1 otherwise.
  double argmin_residual = -1.0;
};

/// Checks the recurrences; throws VerificationError on an exact mismatch or
/// an argmin residual above argmin_tol.
RecurrenceReport check_recurrences(int n, std::span<const Rational> points, double argmin_tol = 1e-10);

/// CSV rows n,degree,power,numerator,denominator of the monomial coefficients.
void write_polynomial_csv(std::ostream& os, std::span<const int> arities);

struct Curve {
  std::string name;
  std::function<double(double)> f;
};

/// CSV with header t,<names...> on a uniform grid of points+1 nodes of [0,1].
void write_curves_csv(std::ostream& os, std::span<const Curve> curves, int points, int digits = 17);

}  // namespace gwmaj
