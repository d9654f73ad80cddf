#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gwmaj/bounds.hpp"
#include "gwmaj/budan.hpp"
#include "gwmaj/fixed_points.hpp"
#include "gwmaj/montecarlo.hpp"
#include "gwmaj/simplex.hpp"
#include "gwmaj/uniform.hpp"
#include "oracles.hpp"

using namespace gwmaj;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  const char* id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome small_arity_fixed_points() {
  // 3t^2 - 4t + 1 = 0 and 5t^2 - 6t + 1 = 0, smaller roots
  const double a2 = (4.0 - std::sqrt(16.0 - 12.0)) / 6.0;
  const double a3 = (6.0 - std::sqrt(36.0 - 20.0)) / 10.0;
  const double binary_limit = (2.0 - 1.0) / (2.0 * 2.0 - 1.0);
  const double e2 = std::abs(analyze(2).alpha - a2);
  const double e3 = std::abs(analyze(3).alpha - a3);
  const double eb = std::abs(analyze(2).alpha - binary_limit);
  return {e2 < 1e-12 && e3 < 1e-12 && eb < 1e-12, fmt("|err2|=%.1e |err3|=%.1e |err_binary|=%.1e", e2, e3, eb)};
}

Outcome midpoint_values() {
  int bad = 0;
  for (int n = 2; n <= 30; ++n)
    if (eval_fn_exact(n, ratio(1, 2)) != Rational(binomial(2 * n, n)) / pow(Rational(4), n)) ++bad;
  return {bad == 0, fmt("%.0f mismatches over n=2..30", bad)};
}

Outcome integral_agreement() {
  double worst = 0.0;
  for (int n = 1; n <= 50; ++n) worst = std::max(worst, integral_disagreement(n, 100));
  return {worst < 1e-10, fmt("max |poly - integral| = %.2e", worst)};
}

Outcome table_properties() {
  bool ok = true;
  double worst_contraction = 0.0;
  for (int n = 4; n <= 26; n += 2) {
    const auto r = analyze(n);
    const auto& pre = r.preimages;
    if (!pre || pre->degenerate || !r.derivative_at_a || !r.derivative_at_b) {
      ok = false;
      continue;
    }
    const double m = std::max(std::abs(*r.derivative_at_a), std::abs(*r.derivative_at_b));
    worst_contraction = std::max(worst_contraction, m);
    ok = ok && m < 1.0 && pre->a < r.alpha && r.alpha < *r.xhat && *r.xhat < pre->b;
    ok = ok && std::abs(eval_fn(n, r.alpha) - r.alpha) < 1e-12 && r.alpha < 0.5;
  }
  for (int n : {28, 30}) ok = ok && !find_preimages(n).has_value();
  double min_derivative = 1.0;
  for (int n = 28; n <= 348; n += 2) {
    const auto r = analyze(n);
    min_derivative = std::min(min_derivative, r.derivative_at_alpha);
    ok = ok && std::abs(eval_fn(n, r.alpha) - r.alpha) < 1e-12 && r.alpha < 0.5;
  }
  ok = ok && min_derivative > 0.0;
  return {ok, fmt("max contraction (n<=26) = %.4f, min f'(alpha) (28..348) = %.3e", worst_contraction, min_derivative)};
}

Outcome budan_certificates() {
  int bad = 0;
  for (int n = 2; n <= 30; ++n) {
    if (budan_root_bound(build_g(n), 1, std::nullopt).bound != 0) ++bad;
    for (const auto& v : g_derivatives_at_one(n))
      if (sgn(v) < 0) ++bad;
  }
  return {bad == 0, fmt("%.0f violations over n=2..30", bad)};
}

Outcome tied_majors_converge() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool ok = true;
  double worst = 0.0;
  int longest = 0;
  for (int n = 3; n <= 6; ++n) {
    const auto dist = OffspringDistribution::nary(n);
    const MajorityMap map(dist);
    const double alpha = analyze(n).alpha;
    const ProbabilityVector target({alpha, (1 - alpha) / 2, (1 - alpha) / 2, 0.0, 0.0});
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> state;
      while (true) {
        const double x = 0.05 + 0.44 * unit(rng);
        const double rest = 1.0 - 2.0 * x;
        double u0 = unit(rng), u3 = unit(rng), u4 = unit(rng);
        if (u3 < u4) std::swap(u3, u4);
        const double s = u0 + u3 + u4;
        const double y3 = rest * u3 / s;
        const double y4 = rest * u4 / s;
        if (!(y3 < x) || !(y4 < x)) continue;
        state = {rest * u0 / s, x, x, y3, y4};
        break;
      }
      const auto traj = iterate(ProbabilityVector(state), map, 500, 1e-14);
      const double err = traj.states.back().max_abs_difference(target);
      worst = std::max(worst, err);
      longest = std::max(longest, static_cast<int>(traj.states.size()) - 1);
      const auto w = minor_decay_ratios(traj, 2);
      ok = ok && err < 1e-8 && w.size() >= 2 && strictly_decreasing(w);
    }
  }
  return {ok, fmt("max distance to limit = %.2e, steps used <= %.0f", worst, longest)};
}

Outcome odd_mixture_unique() {
  const auto dist = OffspringDistribution::parse("pmf:3=0.5,5=0.5");
  const auto report = analyze(scalar_map(dist));
  const MajorityMap map(dist);
  double worst = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double t = (j + 0.5) / 10.0;
    const auto traj = iterate(ProbabilityVector({t, (1 - t) / 2, (1 - t) / 2}), map, 10000, 1e-14);
    worst = std::max(worst, std::abs(traj.states.back()[0] - report.alpha));
  }
  return {report.fixed_points.size() == 1 && worst < 1e-8,
          fmt("%.0f fixed point(s) on the scan, alpha = %.12f, max error = %.2e",
              static_cast<double>(report.fixed_points.size()), report.alpha, worst)};
}

Outcome geometric_closed_form() {
  bool ok = true;
  double worst_series = 0.0;
  double worst_fixed = 0.0;
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    const GWMixture series(OffspringDistribution::shifted_geometric(p));
    for (int j = 0; j < 100; ++j) {
      const double t = j / 99.0;
      worst_series = std::max(worst_series, std::abs(series(t) - geometric_f_closed(p, t)));
    }
    const double alpha = (-3 * p + std::sqrt(p * (p + 8))) / (4 * (1 - p));
    worst_fixed = std::max(worst_fixed, std::abs(geometric_f_closed(p, alpha) - alpha));
    ok = ok && geometric_f_closed_derivative(p, 1, alpha) >= 0.0;
  }
  const auto relative = [](int n) {
    const double p = 1.0 / (n - 1);
    const double alpha = (-3 * p + std::sqrt(p * (p + 8))) / (4 * (1 - p));
    return std::abs(alpha * std::sqrt(2.0 * n) - 1.0);
  };
  const double r200 = relative(200);
  const double r2000 = relative(2000);
  ok = ok && worst_series < 1e-10 && worst_fixed < 1e-12 && r200 < 0.10 && r2000 < 0.05;
  return {ok, fmt("series %.1e, fixed-point residual %.1e, asymptotic rel. error %.4f (200) / ", worst_series,
                  worst_fixed, r200) +
                  fmt("%.4f (2000)", r2000)};
}

Outcome monte_carlo() {
  struct Case {
    const char* name;
    OffspringDistribution dist;
    int height;
  };
  const ProbabilityVector leaves({0.2, 0.4, 0.4});
  const std::vector<Case> cases{{"ternary m=5", OffspringDistribution::nary(3), 5},
                                {"binary m=6", OffspringDistribution::nary(2), 6},
                                {"geom:0.5 m=4", OffspringDistribution::shifted_geometric(0.5), 4}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    SimConfig config;
    config.dist = c.dist;
    config.height = c.height;
    config.leaf_probs = leaves;
    config.samples = 100000;
    config.seed = 20240601;
    config.parallel_batches = 8;
    const auto result = estimate(config);
    const MajorityMap map(c.dist);
    ProbabilityVector exact = leaves;
    for (int m = 0; m < c.height; ++m) exact = map(exact);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      const double z = std::abs(result.estimates[i] - exact[i]) / result.radii[i];
      worst = std::max(worst, z);
    }
    ok = ok && worst <= 1.0;
    if (!detail.empty()) detail += "; ";
    detail += std::string(c.name) + fmt(": max |err|/radius = %.2f", worst);
  }
  return {ok, detail};
}

Outcome inequality_suite() {
  bool ok = true;
  int warnings = 0;
  for (int n = 1; n <= 1000; ++n) ok = ok && all_pass(check_xi_bounds(n));
  ok = ok && all_pass(identity_suite(60, 5));
  for (int n = 3; n <= 100; ++n)
    for (const auto& c : check_alpha_envelope(n, analyze(n).alpha)) {
      if (c.verdict == Verdict::Fail) ok = false;
      if (c.verdict == Verdict::Warn) ++warnings;
    }
  std::vector<Rational> points;
  for (long j = 0; j <= 10; ++j) points.push_back(ratio(j, 10));
  double worst_argmin = 0.0;
  for (int n = 2; n <= 30; ++n) {
    try {
      const auto r = check_recurrences(n, points, 1e-10);
      ok = ok && r.strange && r.telescoped;
      if (n % 2 == 0) worst_argmin = std::max(worst_argmin, r.argmin_residual);
    } catch (const std::exception&) {
      ok = false;
    }
  }
  return {ok, fmt("soft lower-envelope warnings = %.0f, max argmin residual = %.1e", warnings, worst_argmin)};
}

Outcome jacobian_spectrum() {
  const auto dist = OffspringDistribution::nary(3);
  const double alpha = analyze(3).alpha;
  const double x = (1 - alpha) / 2;
  const ProbabilityVector fixed({alpha, x, x, 0.0});
  const auto eig = eigenvalues(jacobian_fd(fixed, dist, 2));
  std::vector<double> got;
  for (const auto& e : eig) got.push_back(e.real());
  std::sort(got.begin(), got.end());
  std::vector<double> want{eval_fn_derivative(3, 1, 1 - 2 * x), G_derivative(dist, 1, 1 - 2 * x)};
  std::sort(want.begin(), want.end());
  double worst = 0.0;
  for (const auto& e : eig) worst = std::max(worst, std::abs(e.imag()));
  bool ok = got.size() == 2;
  if (ok)
    for (std::size_t i = 0; i < 2; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  ok = ok && worst < 1e-5;
  return {ok, fmt("eigenvalues %.8f, %.8f; max error %.1e", got.empty() ? 0.0 : got[0],
                  got.size() < 2 ? 0.0 : got[1], worst)};
}

Outcome brute_force_equivalence() {
  std::mt19937_64 rng(20240601);
  int bad = 0;
  int compared = 0;
  for (int rep = 0; rep < 25; ++rep)
    for (int k = 1; k <= 3; ++k) {
      const auto p = oracle::random_simplex_point(k, rng);
      for (int n = 1; n <= 4; ++n) {
        std::vector<Rational> pmf(n + 1, Rational(0));
        pmf[n] = 1;
        ++compared;
        if (step_H_exact(p, pmf) != oracle::enumerate_root_law(p, n)) ++bad;
      }
    }
  return {bad == 0, fmt("%.0f mismatches in %.0f exact comparisons", bad, compared)};
}

}  // namespace

int main() {
  const std::vector<Check> checks{
      {"01", "small-arity fixed points", 1, small_arity_fixed_points},
      {"02", "exact midpoint values", 1, midpoint_values},
      {"03", "integral vs polynomial", 5, integral_agreement},
      {"04", "even-arity table properties", 60, table_properties},
      {"05", "Budan-Fourier certificates", 10, budan_certificates},
      {"06", "tied majors converge, minors decay", 30, tied_majors_converge},
      {"07", "odd mixture fixed point", 10, odd_mixture_unique},
      {"08", "geometric closed form", 10, geometric_closed_form},
      {"09", "Monte Carlo vs exact", 60, monte_carlo},
      {"10", "inequality and identity suite", 60, inequality_suite},
      {"11", "Jacobian spectrum", 5, jacobian_spectrum},
      {"12", "brute-force equivalence", 30, brute_force_equivalence},
  };
  int failures = 0;
  for (const auto& c : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %s %s (%.3f s / %.0f s) %s%s\n", pass ? "PASS" : "FAIL", c.id, c.title, seconds,
                c.budget_seconds, outcome.detail.c_str(), in_time ? "" : " [over time budget]");
  }
  std::printf("%d of %zu checks passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
