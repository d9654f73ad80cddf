#include "gwmaj/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <ostream>
#include <random>
#include <thread>

#include "gwmaj/errors.hpp"
#include "gwmaj/uniform.hpp"

namespace gwmaj {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::LinearlyAttracting:
      return "LinearlyAttracting";
    case Classification::NeutralSuspect:
      return "NeutralSuspect";
    case Classification::Repelling:
      return "Repelling";
  }
  return "?";
}

std::string_view to_string(BasinCertificate c) {
  switch (c) {
    case BasinCertificate::MonotoneIncreasing:
      return "MonotoneIncreasing";
    case BasinCertificate::DerivPositiveAtAlpha:
      return "DerivPositiveAtAlpha";
    case BasinCertificate::MinMaxContraction:
      return "MinMaxContraction";
    case BasinCertificate::None:
      return "None";
  }
  return "?";
}

ScalarMap scalar_map(int n) {
  const auto& fn = build_fn(n);
  ScalarMap map;
  map.source = "nary:" + std::to_string(n);
  map.f = [&fn](double t) { return fn(t); };
  map.df = [&fn](double t) { return fn.derivative(1, t); };
  map.d2f = [&fn](double t) { return fn.derivative(2, t); };
  map.parity = n % 2 == 1 ? SupportParity::AllOdd : SupportParity::AllEven;
  map.arity = n;
  return map;
}

ScalarMap scalar_map(const OffspringDistribution& dist, double tail_eps) {
  if (dist.kind() == OffspringKind::NAry) return scalar_map(dist.arity());
  ScalarMap map;
  map.source = dist.to_string();
  map.parity = support_parity(dist, tail_eps);
  if (dist.kind() == OffspringKind::ShiftedGeometric) {
    const double p = dist.geometric_parameter();
    map.f = [p](double t) { return geometric_f_closed(p, t); };
    map.df = [p](double t) { return geometric_f_closed_derivative(p, 1, t); };
    map.d2f = [p](double t) { return geometric_f_closed_derivative(p, 2, t); };
    return map;
  }
  auto mixture = std::make_shared<GWMixture>(dist, tail_eps);
  map.f = [mixture](double t) { return (*mixture)(t); };
  map.df = [mixture](double t) { return mixture->derivative(1, t); };
  map.d2f = [mixture](double t) { return mixture->derivative(2, t); };
  return map;
}

Root find_alpha(const std::function<double(double)>& f, const std::function<double(double)>& df, double lo,
                double hi) {
  auto g = [&](double t) { return f(t) - t; };
  auto dg = [&](double t) { return df(t) - 1.0; };
  if (g(lo) == 0.0) lo += (hi - lo) * 1e-6;
  return solve_bracketed(g, dg, lo, hi);
}

Classification classify(double derivative_at_alpha) {
  const double m = std::abs(derivative_at_alpha);
  if (m < 1.0 - kClassificationBand) return Classification::LinearlyAttracting;
  if (m > 1.0 + kClassificationBand) return Classification::Repelling;
  return Classification::NeutralSuspect;
}

std::vector<double> fixed_point_scan(const ScalarMap& map, int intervals) {
  if (intervals < 2) throw DomainError("scan needs at least two intervals");
  auto g = [&](double t) { return map.f(t) - t; };
  auto dg = [&](double t) { return map.df(t) - 1.0; };
  const double h = 1.0 / intervals;
  const auto changes = sign_changes(g, h, 1.0 - h, intervals - 2);
  std::vector<double> roots;
  for (const auto& [lo, hi] : changes) roots.push_back(lo == hi ? lo : solve_bracketed(g, dg, lo, hi).value);
  return roots;
}

double find_xhat(int n) { return argmin_fn(n); }

std::optional<Preimages> find_preimages(int n) {
  const double xhat = find_xhat(n);
  const auto& fn = build_fn(n);
  const double minimum = fn(xhat);
  if (std::abs(minimum - xhat) <= 1e-12) return Preimages{xhat, xhat, true};
  if (minimum > xhat) return std::nullopt;
  auto g = [&](double t) { return fn(t) - xhat; };
  auto dg = [&](double t) { return fn.derivative(1, t); };
  if (g(0.0) < 0.0) return std::nullopt;
  Preimages out;
  out.a = solve_bracketed(g, dg, 0.0, xhat).value;
  out.b = solve_bracketed(g, dg, xhat, 1.0).value;
  return out;
}

BasinCertificate basin_certificate(const FixedPointReport& report, const ScalarMap& map) {
  auto on_grid = [&](const std::function<double(double)>& h) {
    for (int j = 0; j <= kVerificationGrid; ++j)
      if (!(h(static_cast<double>(j) / kVerificationGrid) > 0.0)) return false;
    return true;
  };
  if (map.parity == SupportParity::AllOdd && on_grid(map.df)) return BasinCertificate::MonotoneIncreasing;
  const bool convex = on_grid(map.d2f);
  if (convex && report.derivative_at_alpha > 0.0) return BasinCertificate::DerivPositiveAtAlpha;
  if (report.preimages && !report.preimages->degenerate && report.derivative_at_a && report.derivative_at_b &&
      std::max(std::abs(*report.derivative_at_a), std::abs(*report.derivative_at_b)) < 1.0)
    return BasinCertificate::MinMaxContraction;
  if (report.preimages && report.preimages->degenerate && convex &&
      report.derivative_at_alpha >= -kClassificationBand)
    return BasinCertificate::DerivPositiveAtAlpha;
  return BasinCertificate::None;
}

FixedPointReport analyze(const ScalarMap& map, int scan_intervals) {
  FixedPointReport report;
  report.source = map.source;
  report.fixed_points = fixed_point_scan(map, scan_intervals);
  if (report.fixed_points.empty()) throw NoBracketError("no fixed point found in (0, 1) for " + map.source);
  report.alpha = report.fixed_points.front();
  report.derivative_at_alpha = map.df(report.alpha);
  report.classification = classify(report.derivative_at_alpha);
  if (map.arity && *map.arity % 2 == 0) {
    const int n = *map.arity;
    report.xhat = find_xhat(n);
    report.f_at_xhat = map.f(*report.xhat);
    report.preimages = find_preimages(n);
    if (report.preimages) {
      report.derivative_at_a = map.df(report.preimages->a);
      report.derivative_at_b = map.df(report.preimages->b);
    }
  }
  report.certificate = basin_certificate(report, map);
  return report;
}

FixedPointReport analyze(int n) { return analyze(scalar_map(n)); }

namespace {

TableRow table_row(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("table rows need even n >= 2");
  const auto& fn = build_fn(n);
  TableRow row;
  row.n = n;
  row.xhat = find_xhat(n);
  row.f_xhat = fn(row.xhat);
  row.alpha = find_alpha([&](double t) { return fn(t); }, [&](double t) { return fn.derivative(1, t); }, 0.0, 0.5)
                  .value;
  row.df_alpha = fn.derivative(1, row.alpha);
  if (const auto pre = find_preimages(n)) {
    row.a = pre->a;
    row.b = pre->b;
    row.df_a = fn.derivative(1, pre->a);
    row.df_b = fn.derivative(1, pre->b);
  }
  return row;
}

}  // namespace

std::vector<TableRow> table_rows(std::span<const int> even_n) {
  std::vector<TableRow> rows(even_n.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers && w < rows.size(); ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < rows.size(); i += workers) rows[i] = table_row(even_n[i]);
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

void write_table_csv(std::ostream& os, std::span<const TableRow> rows, int digits) {
  const auto old_precision = os.precision(digits);
  auto cell = [&](const std::optional<double>& v) {
    os << ',';
    if (v) os << *v;
  };
  os << "n,xhat,f_xhat,alpha,df_alpha,a,b,df_a,df_b\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.xhat << ',' << r.f_xhat << ',' << r.alpha << ',' << r.df_alpha;
    cell(r.a);
    cell(r.b);
    cell(r.df_a);
    cell(r.df_b);
    os << '\n';
  }
  os.precision(old_precision);
}

double geometric_alpha_closed(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric parameter must lie in (0, 1)");
  return (-3.0 * p + std::sqrt(p * (p + 8.0))) / (4.0 * (1.0 - p));
}

int period_two_orbits(const ScalarMap& map, int seeds, unsigned long long rng_seed, int steps) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int count = 0;
  for (int s = 0; s < seeds; ++s) {
    double x = unit(rng);
    if (x <= 0.0 || x >= 1.0) x = 0.5;
    for (int m = 0; m < steps; ++m) x = map.f(x);
    const double once = std::abs(map.f(x) - x);
    const double twice = std::abs(map.f(map.f(x)) - x);
    if (once > 1e-8 && twice < 1e-10) ++count;
  }
  return count;
}

}  // namespace gwmaj
