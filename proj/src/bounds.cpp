#include "gwmaj/bounds.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gwmaj/errors.hpp"
#include "gwmaj/uniform.hpp"

namespace gwmaj {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

CheckResult less_than(std::string name, int n, long double lhs, long double rhs, bool strict, bool hard = true) {
  const bool ok = strict ? lhs < rhs : lhs <= rhs;
  return {std::move(name), n, lhs, rhs, rhs - lhs, ok ? Verdict::Pass : (hard ? Verdict::Fail : Verdict::Warn)};
}

CheckResult equal(std::string name, int n, const Rational& lhs, const Rational& rhs) {
  return {std::move(name), n, static_cast<long double>(lhs.get_d()), static_cast<long double>(rhs.get_d()), 0.0L,
          lhs == rhs ? Verdict::Pass : Verdict::Fail};
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  const long a = num(rng);
  const long b = den(rng);
  return ratio(a, b);
}

}  // namespace

Rational xi(int m) {
  if (m < 0) throw DomainError("xi needs m >= 0");
  return Rational(binomial(2 * m, m)) * inverse_power_of_two(2 * m);
}

long double xi_float(int m) {
  if (m < 0) throw DomainError("xi needs m >= 0");
  long double x = 1.0L;
  for (int j = 1; j <= m; ++j) x *= (2.0L * j - 1.0L) / (2.0L * j);
  return x;
}

long double PiMultiple::value() const {
  return static_cast<long double>(coefficient.get_d()) * std::pow(kPi, static_cast<long double>(pi_power));
}

PiMultiple operator*(const PiMultiple& a, const PiMultiple& b) {
  return {a.coefficient * b.coefficient, a.pi_power + b.pi_power};
}

PiMultiple wallis(int n) {
  if (n < 0) throw DomainError("wallis needs n >= 0");
  PiMultiple w = n % 2 == 0 ? PiMultiple{ratio(1, 2), 1} : PiMultiple{1, 0};
  for (int m = n % 2; m + 2 <= n; m += 2) w.coefficient *= ratio(m + 1, m + 2);
  return w;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Warn:
      return "warn";
  }
  return "?";
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"n", c.n},
          {"lhs", static_cast<double>(c.lhs)},
          {"rhs", static_cast<double>(c.rhs)},
          {"margin", static_cast<double>(c.margin)},
          {"verdict", to_string(c.verdict)}};
}

nlohmann::json to_json(std::span<const CheckResult> checks) {
  auto out = nlohmann::json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

bool all_pass(std::span<const CheckResult> checks) {
  for (const auto& c : checks)
    if (c.verdict == Verdict::Fail) return false;
  return true;
}

std::vector<CheckResult> check_xi_bounds(int n) {
  if (n < 1) throw DomainError("xi bounds need n >= 1");
  const long double x2 = xi_float(n);
  const long double x4 = xi_float(2 * n);
  const long double w = wallis(n).value();
  return {
      less_than("xi_lower", n, 2.0L / std::sqrt(2.0L * kPi * (2.0L * n + 1.0L)), x2, true),
      less_than("xi_upper", n, x2, 1.0L / std::sqrt(kPi * n), true),
      less_than("xi_double_index", n, x4, std::exp(1.0L / (4.0L * n)) * x2 / std::sqrt(2.0L), true),
      less_than("wallis_lower", n, std::sqrt(kPi / (2.0L * (n + 1.0L))), w, true),
      less_than("wallis_upper", n, w, std::sqrt(kPi / (2.0L * n)), true),
  };
}

std::vector<CheckResult> check_alpha_envelope(int n, double alpha_n) {
  if (n < 3) throw DomainError("alpha envelope needs n >= 3");
  const long double upper = xi_float(n / 2);
  return {
      less_than("alpha_upper", n, alpha_n, upper, false),
      less_than("xi_envelope", n, upper, std::sqrt(2.0L) / std::sqrt(kPi * (n - 1.0L)), false),
      less_than("alpha_lower", n, xi_float(2 * n), alpha_n, false, n >= 536),
  };
}

long double dpa_w(int n) {
  if (n < 2) throw DomainError("w_n needs n >= 2");
  const long double m = n - 1.0L;
  const long double s = std::sqrt(2.0L * kPi);
  return std::sqrt(m) / (2.0L * s) * std::exp(-m / 2.0L) + 1.0L / (2.0L * s) * std::exp(-m / 2.0L) + 1.0L / m +
         m * std::exp(-m / std::sqrt(2.0L * kPi * (n + 1.0L)));
}

std::vector<CheckResult> check_dpa_threshold(int n) {
  if (n < 4 || n % 2 != 0) throw DomainError("threshold check needs even n >= 4");
  const long double w = dpa_w(n);
  const double zeta = static_cast<double>(1.0L / std::sqrt(2.0L * kPi * (n + 1.0L)));
  const long double bound = n / kPi * std::sqrt(2.0L * kPi) * std::pow(n - 1.0L, -1.5L) * (0.25L - w);
  const long double derivative = eval_fn_derivative(n, 1, zeta);
  return {
      less_than("dpa_threshold", n, w, 0.25L, true, false),
      less_than("dpa_derivative_bound", n, bound, derivative, false),
  };
}

std::vector<CheckResult> identity_suite(int n_max, int ell_max, std::uint64_t seed) {
  if (n_max < 0 || ell_max < 0) throw DomainError("identity suite needs nonnegative ranges");
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  for (int n = 0; n <= n_max; ++n) {
    if (n != 1) {
      Rational even_sum = 0;
      Rational odd_sum = 0;
      for (int k = 0; 2 * k <= n; ++k) even_sum += Rational(binomial(n, 2 * k) * (2 * k));
      for (int k = 0; 2 * k + 1 <= n; ++k) odd_sum += Rational(binomial(n, 2 * k + 1) * (2 * k + 1));
      const Rational target = Rational(n) * pow(Rational(2), n) / 4;
      out.push_back(equal("even_weighted_sum", n, even_sum, target));
      out.push_back(equal("odd_weighted_sum", n, odd_sum, target));
    }
    Rational central = 0;
    for (int j = 0; 2 * j <= n; ++j)
      central += Rational(binomial(n, 2 * j) * binomial(2 * j, j)) * inverse_power_of_two(2 * j);
    out.push_back(equal("central_binomial_sum", n, central, Rational(binomial(2 * n, n)) * inverse_power_of_two(n)));

    for (int l = 1; l <= ell_max; ++l) {
      Rational lhs = 0;
      for (int j = 0; 2 * j <= n; ++j)
        lhs += Rational(falling_factorial(j, l) * binomial(n, 2 * j) * binomial(2 * j, j)) * inverse_power_of_two(2 * j);
      const Rational rhs = n < l ? Rational(0)
                                 : Rational(binomial(2 * (n - l), n - l) * falling_factorial(n - l, l)) *
                                       inverse_power_of_two(n);
      out.push_back(equal("falling_factorial_sum_l" + std::to_string(l), n, lhs, rhs));
    }

    const Rational x = random_rational(rng);
    const Rational y = random_rational(rng);
    Rational lhs = 0;
    for (int k = 0; 2 * k <= n; ++k) lhs += Rational(binomial(n, 2 * k)) * pow(x, 2 * k) * pow(y, n - 2 * k);
    out.push_back(equal("even_part_binomial", n, lhs, (pow(Rational(x + y), n) + pow(Rational(y - x), n)) / 2));
  }
  return out;
}

bool weighted_mean_inequality(std::span<const double> mu, std::span<const double> nu, std::span<const double> alpha,
                              int ell, int n) {
  if (ell < 0 || ell > n || static_cast<std::size_t>(n) >= mu.size() || mu.size() != nu.size() ||
      mu.size() != alpha.size())
    throw DomainError("weighted mean: index range or sequence lengths invalid");
  std::vector<Rational> m, v, a;
  for (int k = ell; k <= n; ++k) {
    if (!(mu[k] > 0.0) || !(nu[k] > 0.0)) throw DomainError("weighted mean: weights must be positive");
    m.push_back(from_double(mu[k]));
    v.push_back(from_double(nu[k]));
    a.push_back(from_double(alpha[k]));
  }
  bool nonincreasing = true;
  bool nondecreasing = true;
  for (std::size_t k = 1; k < m.size(); ++k) {
    if (m[k - 1] * v[k] < m[k] * v[k - 1]) throw DomainError("weighted mean: nu/mu must be nondecreasing");
    if (a[k] > a[k - 1]) nonincreasing = false;
    if (a[k] < a[k - 1]) nondecreasing = false;
  }
  if (!nonincreasing && !nondecreasing) throw DomainError("weighted mean: alpha must be monotone");
  Rational am = 0, sm = 0, av = 0, sv = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    am += a[k] * m[k];
    sm += m[k];
    av += a[k] * v[k];
    sv += v[k];
  }
  const Rational lhs = am / sm;
  const Rational rhs = av / sv;
  if (nonincreasing && nondecreasing) return lhs == rhs;
  return nonincreasing ? lhs >= rhs : lhs <= rhs;
}

}  // namespace gwmaj
