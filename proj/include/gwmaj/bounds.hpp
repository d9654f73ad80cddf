#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwmaj/rational.hpp"

namespace gwmaj {

/// xi_{2m} = 2^{-2m} C(2m, m).
Rational xi(int m);
/// xi_{2m} by the recurrence xi_{2m} = xi_{2m-2} (2m-1)/(2m) in extended precision.
long double xi_float(int m);

/// coefficient * pi^pi_power.
struct PiMultiple {
  Rational coefficient;
  int pi_power = 0;

  long double value() const;
  friend bool operator==(const PiMultiple&, const PiMultiple&) = default;
};

PiMultiple operator*(const PiMultiple& a, const PiMultiple& b);

/// W_n = int_0^{pi/2} sin^n, from W_0 = pi/2, W_1 = 1, (n+2) W_{n+2} = (n+1) W_n.
PiMultiple wallis(int n);

enum class Verdict { Pass, Fail, Warn };

std::string_view to_string(Verdict v);

/// One inequality or identity evaluated at one n. For an inequality lhs < rhs
/// (or lhs <= rhs) the margin is rhs - lhs; identities report margin 0.
struct CheckResult {
  std::string name;
  int n = 0;
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  long double margin = 0.0L;
  Verdict verdict = Verdict::Pass;
};

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(std::span<const CheckResult> checks);

bool all_pass(std::span<const CheckResult> checks);

/// Lower and upper central-binomial bounds, the derived xi_{4n} bound and the
/// Wallis bounds at n >= 1.
std::vector<CheckResult> check_xi_bounds(int n);

/// alpha_n <= xi_{n#} <= sqrt(2)/sqrt(pi (n-1)) (n >= 3; failure is Fail) and
/// xi_{4n} <= alpha_n (failure is Fail from n = 536 on, Warn below).
std::vector<CheckResult> check_alpha_envelope(int n, double alpha_n);

/// Threshold sequence w_n, the sign of 1/4 - w_n and the lower bound
/// f_n'(zeta_n) >= (n/pi) sqrt(2 pi) (n-1)^{-3/2} (1/4 - w_n), zeta_n = 1/sqrt(2 pi (n+1)).
long double dpa_w(int n);
std::vector<CheckResult> check_dpa_threshold(int n);

/// Exact binomial identities for 0 <= n <= n_max and 1 <= l <= ell_max.
/// The two-variable parity identity is checked at random rational points drawn from seed.
std::vector<CheckResult> identity_suite(int n_max, int ell_max, std::uint64_t seed = 0x5eed);

/// Compares the mu- and nu-weighted means of alpha over indices l..n. Returns
/// whether the ordering dictated by the monotonicity of alpha holds (both
/// orderings when alpha is constant). Throws DomainError when mu, nu are not
/// positive, nu/mu is not nondecreasing or alpha is not monotone.
bool weighted_mean_inequality(std::span<const double> mu, std::span<const double> nu, std::span<const double> alpha,
                              int ell, int n);

}  // namespace gwmaj
