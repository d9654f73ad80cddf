#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwmaj/offspring.hpp"
#include "gwmaj/roots.hpp"

namespace gwmaj {

/// Classification band around |f'| = 1.
inline constexpr double kClassificationBand = 1e-9;

enum class Classification { LinearlyAttracting, NeutralSuspect, Repelling };
enum class BasinCertificate { MonotoneIncreasing, DerivPositiveAtAlpha, MinMaxContraction, None };

std::string_view to_string(Classification c);
std::string_view to_string(BasinCertificate c);

/// A scalar self-map of [0,1] together with its first two derivatives.
struct ScalarMap {
  std::string source;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  SupportParity parity = SupportParity::Mixed;
  /// Set for a point-mass law.
  std::optional<int> arity;
};

/// f_n.
ScalarMap scalar_map(int n);
/// f = sum q_n f_n; closed forms for the shifted geometric law, truncated series otherwise.
ScalarMap scalar_map(const OffspringDistribution& dist, double tail_eps = kDefaultTailEpsilon);

/// Root of f(t) - t in (lo, hi). A fixed point sitting exactly at lo is skipped.
Root find_alpha(const std::function<double(double)>& f, const std::function<double(double)>& df, double lo,
                double hi);

Classification classify(double derivative_at_alpha);

/// Roots of f(t) - t in (0,1) found from sign changes on the grid j/intervals, 0 < j < intervals.
std::vector<double> fixed_point_scan(const ScalarMap& map, int intervals);

struct Preimages {
  double a = 0.0;
  double b = 0.0;
  /// a = b = x_hat (the minimum value equals its location).
  bool degenerate = false;
};

/// Argmin of f_n on [0,1], n even.
double find_xhat(int n);
/// Solutions a <= x_hat <= b of f_n(t) = x_hat, when they exist.
std::optional<Preimages> find_preimages(int n);

struct FixedPointReport {
  std::string source;
  double alpha = 0.0;
  double derivative_at_alpha = 0.0;
  Classification classification = Classification::NeutralSuspect;
  std::optional<double> xhat;
  std::optional<double> f_at_xhat;
  std::optional<Preimages> preimages;
  std::optional<double> derivative_at_a;
  std::optional<double> derivative_at_b;
  BasinCertificate certificate = BasinCertificate::None;
  /// Every fixed point of the scan in (0,1); alpha is the smallest.
  std::vector<double> fixed_points;
};

/// Grid on which monotonicity and convexity are verified.
inline constexpr int kVerificationGrid = 1000;

/// Fixed point, classification, auxiliary points and basin certificate.
FixedPointReport analyze(const ScalarMap& map, int scan_intervals = 1000);
FixedPointReport analyze(int n);

/// Certificate from a filled-in report (alpha, derivative, preimages).
BasinCertificate basin_certificate(const FixedPointReport& report, const ScalarMap& map);

struct TableRow {
  int n = 0;
  double xhat = 0.0;
  double f_xhat = 0.0;
  double alpha = 0.0;
  double df_alpha = 0.0;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> df_a;
  std::optional<double> df_b;
};

/// One row per even n, computed in parallel, returned in input order.
std::vector<TableRow> table_rows(std::span<const int> even_n);

/// Header n,xhat,f_xhat,alpha,df_alpha,a,b,df_a,df_b; absent cells are empty.
void write_table_csv(std::ostream& os, std::span<const TableRow> rows, int digits = 17);

/// (-3p + sqrt(p(p+8))) / (4(1-p)).
double geometric_alpha_closed(double p);

/// Number of seeds in (0,1) whose orbit under f ends on a genuine period-2
/// cycle (|f(f(x)) - x| small while |f(x) - x| is not).
int period_two_orbits(const ScalarMap& map, int seeds, unsigned long long rng_seed, int steps = 5000);

}  // namespace gwmaj
