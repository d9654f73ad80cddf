#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace gwmaj {

struct RootOptions {
  /// Bisection runs until the bracket is this narrow before Newton takes over.
  double bisection_width = 1e-6;
  /// Stop once |g(root)| falls below this.
  double residual_tol = 1e-13;
  int max_iterations = 200;
};

struct Root {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Root of g in [lo, hi] by bisection followed by Newton steps that fall back
/// to bisection whenever they leave the current bracket.
/// Throws NoBracketError when g(lo) and g(hi) have the same strict sign.
Root solve_bracketed(const std::function<double(double)>& g, const std::function<double(double)>& dg, double lo,
                     double hi, const RootOptions& options = {});

/// Intervals [x_j, x_{j+1}] of a uniform grid on [lo, hi] over which g changes
/// sign (an exact zero at a grid node yields a degenerate interval).
std::vector<std::pair<double, double>> sign_changes(const std::function<double(double)>& g, double lo, double hi,
                                                    int intervals);

}  // namespace gwmaj
