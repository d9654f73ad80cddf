#include "gwmaj/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>

#include "gwmaj/errors.hpp"
#include "gwmaj/quadrature.hpp"
#include "gwmaj/roots.hpp"

namespace gwmaj {

namespace {

void check_unit(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1]");
}

void check_unit(const Rational& t) {
  if (sgn(t) < 0 || t > 1) throw DomainError("t must lie in [0, 1]");
}

double de_casteljau(std::vector<double> c, double t) {
  if (c.empty()) return 0.0;
  const double s = 1.0 - t;
  for (std::size_t m = c.size() - 1; m > 0; --m)
    for (std::size_t j = 0; j < m; ++j) c[j] = s * c[j] + t * c[j + 1];
  return c[0];
}

Rational bernstein_sum(const std::vector<Rational>& c, const Rational& t) {
  if (c.empty()) return 0;
  const long m = static_cast<long>(c.size()) - 1;
  const Rational s = Rational(1) - t;
  std::vector<Rational> tp(m + 1), sp(m + 1);
  tp[0] = 1;
  sp[0] = 1;
  for (long j = 1; j <= m; ++j) {
    tp[j] = tp[j - 1] * t;
    sp[j] = sp[j - 1] * s;
  }
  Rational total = 0;
  for (long j = 0; j <= m; ++j) {
    if (sgn(c[j]) == 0) continue;
    total += c[j] * Rational(binomial(m, j)) * tp[j] * sp[m - j];
  }
  return total;
}

template <class T>
T scalar(const BigInt& z) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(z);
  } else {
    return z.get_d();
  }
}

template <class T>
std::vector<T> powers(const T& x, int n) {
  std::vector<T> out(n + 1);
  out[0] = 1;
  for (int i = 1; i <= n; ++i) out[i] = out[i - 1] * x;
  return out;
}

template <class T>
T f3_formula(int n, const T& t) {
  const T c = (T(1) - t) / T(3);
  const auto tp = powers(t, n);
  const auto cp = powers(c, n);
  T total = tp[n];
  for (int k = 1; 3 * k <= n; ++k) {
    const BigInt ways = binomial(n, 3 * k) * binomial(3 * k, k) * binomial(2 * k, k);
    total += scalar<T>(ways) * tp[n - 3 * k] * cp[3 * k];
  }
  for (int k = 1; 2 * k <= n; ++k) {
    const BigInt pair = binomial(n, 2 * k) * binomial(2 * k, k);
    T third = 0;
    for (int j = 0; j <= std::min(k - 1, n - 2 * k); ++j)
      third += scalar<T>(binomial(n - 2 * k, j)) * tp[n - 2 * k - j] * cp[j];
    total += T(3) * scalar<T>(pair) * cp[2 * k] * third;
  }
  return total;
}

}  // namespace

MajorityPolynomial::MajorityPolynomial(int n) : n_(n) {
  if (n < 1) throw DomainError("arity must be at least 1");
  bernstein_.assign(n + 1, Rational(0));
  for (int k = 0; 2 * k <= n; ++k) bernstein_[n - 2 * k] = Rational(binomial(2 * k, k)) * inverse_power_of_two(2 * k);
  for (int l = 0; l < kCachedOrders; ++l) {
    std::vector<double> c;
    for (const auto& v : differences(l)) c.push_back(v.get_d());
    control_.push_back(std::move(c));
  }
}

std::vector<Rational> MajorityPolynomial::differences(int order) const {
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  if (order > n_) return {};
  std::vector<Rational> d = bernstein_;
  for (int l = 0; l < order; ++l) {
    for (std::size_t j = 0; j + 1 < d.size(); ++j) d[j] = d[j + 1] - d[j];
    d.pop_back();
  }
  const Rational scale(falling_factorial(n_, order));
  for (auto& v : d) v *= scale;
  return d;
}

const RationalPolynomial& MajorityPolynomial::monomial() const {
  std::call_once(monomial_once_, [this] {
    RationalPolynomial total;
    for (int k = 0; 2 * k <= n_; ++k) {
      total += RationalPolynomial::monomial(n_ - 2 * k, Rational(binomial(n_, 2 * k)) * bernstein_[n_ - 2 * k]) *
               RationalPolynomial::linear_power(1, -1, 2 * k);
    }
    monomial_ = std::move(total);
  });
  return monomial_;
}

double MajorityPolynomial::derivative(int order, double t) const {
  check_unit(t);
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  if (order < kCachedOrders) return de_casteljau(control_[order], t);
  std::vector<double> c;
  for (const auto& v : differences(order)) c.push_back(v.get_d());
  return de_casteljau(std::move(c), t);
}

Rational MajorityPolynomial::exact_derivative(int order, const Rational& t) const {
  check_unit(t);
  return bernstein_sum(differences(order), t);
}

const MajorityPolynomial& build_fn(int n) {
  if (n < 1) throw DomainError("arity must be at least 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<MajorityPolynomial>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<MajorityPolynomial>(n);
  return *slot;
}

double eval_fn(int n, double t) { return build_fn(n)(t); }

double eval_fn_derivative(int n, int order, double t) {
  if (order > n) throw DomainError("derivative order exceeds the degree");
  return build_fn(n).derivative(order, t);
}

Rational eval_fn_exact(int n, const Rational& t) { return build_fn(n).exact(t); }

Rational eval_fn_derivative_exact(int n, int order, const Rational& t) {
  if (order > n) throw DomainError("derivative order exceeds the degree");
  return build_fn(n).exact_derivative(order, t);
}

double eval_fn_integral(int n, double t, int quadrature_order) {
  if (n < 1) throw DomainError("arity must be at least 1");
  check_unit(t);
  if (quadrature_order == 0) quadrature_order = std::max(40, 2 * n);
  const double pi = std::numbers::pi;
  return integrate([&](double x) { return std::pow((1.0 - t) * std::cos(x) + t, n); }, 0.0, pi, quadrature_order) /
         pi;
}

double integral_disagreement(int n, int points, int quadrature_order) {
  if (points < 1) throw DomainError("grid needs at least one interval");
  double worst = 0.0;
  for (int j = 0; j <= points; ++j) {
    const double t = static_cast<double>(j) / points;
    worst = std::max(worst, std::abs(eval_fn(n, t) - eval_fn_integral(n, t, quadrature_order)));
  }
  return worst;
}

double eval_hk(int k, const MajorityMap& map, double x) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (!(x >= 0.0 && x * k <= 1.0)) throw DomainError("x must lie in [0, 1/k]");
  std::vector<double> p(k + 1, x);
  p[0] = std::max(0.0, 1.0 - k * x);
  return map.apply_raw(p)[1];
}

double eval_hk(int k, const OffspringDistribution& dist, double x) { return eval_hk(k, MajorityMap(dist), x); }

GWMixture::GWMixture(const OffspringDistribution& dist, double tail_eps)
    : dist_(dist), trunc_(dist.truncate(tail_eps)) {}

std::vector<double> GWMixture::derivatives(int order, double t) const {
  check_unit(t);
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  const int len = order + 1;
  std::vector<double> out(len, 0.0);
  if (dist_.kind() == OffspringKind::NAry) {
    for (int l = 0; l < len; ++l) out[l] = l > dist_.arity() ? 0.0 : build_fn(dist_.arity()).derivative(l, t);
    return out;
  }

  // Truncated Taylor coefficients in (t - t0) of the walk's position law.
  const int top = trunc_.max_n;
  const double a[2] = {t, 1.0};
  const double b[2] = {0.5 * (1.0 - t), -0.5};
  std::vector<double> cur((top + 1) * len, 0.0);
  std::vector<double> next((top + 1) * len, 0.0);
  cur[0] = 1.0;
  std::vector<double> taylor(len, 0.0);
  for (int s = 1; s <= top; ++s) {
    const int reach = std::min(s, top - s);
    for (int x = 0; x <= reach; ++x) {
      const double* here = &cur[x * len];
      const double* left = x == 0 ? &cur[1 * len] : &cur[(x - 1) * len];
      const double* right = &cur[(x + 1) * len];
      double* dst = &next[x * len];
      for (int i = 0; i < len; ++i) {
        const double side_i = left[i] + right[i];
        double v = a[0] * here[i] + b[0] * side_i;
        if (i > 0) v += a[1] * here[i - 1] + b[1] * (left[i - 1] + right[i - 1]);
        dst[i] = v;
      }
    }
    std::swap(cur, next);
    const double q = trunc_.pmf[s];
    if (q != 0.0)
      for (int i = 0; i < len; ++i) taylor[i] += q * cur[i];
  }
  double fact = 1.0;
  for (int l = 0; l < len; ++l) {
    if (l > 0) fact *= l;
    out[l] = fact * taylor[l];
  }
  return out;
}

double GWMixture::derivative(int order, double t) const { return derivatives(order, t)[order]; }

double eval_f_gw(const OffspringDistribution& dist, double t, double tail_eps) { return GWMixture(dist, tail_eps)(t); }

double geometric_f_closed(double p, double t) { return geometric_f_closed_derivative(p, 0, t); }

double geometric_f_closed_derivative(double p, int order, double t) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric parameter must lie in (0, 1)");
  check_unit(t);
  const double radicand = p * (2.0 - p + 2.0 * t * (p - 1.0));
  if (!(radicand > 0.0)) throw DomainError("non-positive radicand in the geometric closed form");
  const double q = 1.0 - p;
  switch (order) {
    case 0:
      return p / (q * q) * (-(q * t + 1.0) + 1.0 / std::sqrt(radicand));
    case 1:
      return p / q * (-1.0 + p / (radicand * std::sqrt(radicand)));
    case 2:
      return 3.0 * p * p * p / (radicand * radicand * std::sqrt(radicand));
    default:
      throw DomainError("closed-form derivatives are available up to order 2");
  }
}

double eval_f3(int n, double t) {
  if (n < 2) throw DomainError("arity must be at least 2");
  check_unit(t);
  return f3_formula<double>(n, t);
}

Rational eval_f3_exact(int n, const Rational& t) {
  if (n < 2) throw DomainError("arity must be at least 2");
  check_unit(t);
  return f3_formula<Rational>(n, t);
}

double argmin_fn(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("argmin_fn needs an even arity");
  const auto& f = build_fn(n);
  return solve_bracketed([&](double t) { return f.derivative(1, t); }, [&](double t) { return f.derivative(2, t); },
                         0.0, 1.0)
      .value;
}

RecurrenceReport check_recurrences(int n, std::span<const Rational> points, double argmin_tol) {
  if (n < 2) throw DomainError("recurrences need n >= 2");
  RecurrenceReport report;
  report.n = n;
  const auto& fn = build_fn(n);
  const auto& prev = build_fn(n - 1);

  const RationalPolynomial lhs_poly = RationalPolynomial{-1, 1} * fn.monomial().derivative() * ratio(1, n);
  bool strange = lhs_poly == fn.monomial() - prev.monomial();
  bool telescoped = true;
  for (const auto& t : points) {
    const Rational lhs = (t - 1) / n * fn.exact_derivative(1, t);
    if (lhs != fn.exact(t) - prev.exact(t)) strange = false;
    Rational sum = 0;
    for (int k = 2; k <= n; ++k) sum += build_fn(k).exact_derivative(1, t) / k;
    if (fn.exact(t) - t != (t - 1) * sum) telescoped = false;
  }
  report.strange = strange;
  report.telescoped = telescoped;
  if (!strange) throw VerificationError("(t-1)/n f_n' = f_n - f_{n-1} fails for n = " + std::to_string(n));
  if (!telescoped) throw VerificationError("telescoped recurrence fails for n = " + std::to_string(n));
  if (n % 2 == 0) {
    const double x = argmin_fn(n);
    report.argmin_residual = std::abs(fn(x) - prev(x));
    if (report.argmin_residual > argmin_tol)
      throw VerificationError("f_n(argmin) != f_{n-1}(argmin) for n = " + std::to_string(n));
  }
  return report;
}

void write_polynomial_csv(std::ostream& os, std::span<const int> arities) {
  os << "n,degree,power,numerator,denominator\n";
  for (int n : arities) {
    const auto& poly = build_fn(n).monomial();
    for (std::size_t i = 0; i < poly.coefficients().size(); ++i) {
      const auto& c = poly.coefficients()[i];
      os << n << ',' << poly.degree() << ',' << i << ',' << c.get_num().get_str() << ',' << c.get_den().get_str()
         << '\n';
    }
  }
}

void write_curves_csv(std::ostream& os, std::span<const Curve> curves, int points, int digits) {
  if (points < 1) throw DomainError("grid needs at least one interval");
  const auto old_precision = os.precision(digits);
  os << 't';
  for (const auto& c : curves) os << ',' << c.name;
  os << '\n';
  for (int j = 0; j <= points; ++j) {
    const double t = static_cast<double>(j) / points;
    os << t;
    for (const auto& c : curves) os << ',' << c.f(t);
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace gwmaj
