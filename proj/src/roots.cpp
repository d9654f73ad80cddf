#include "gwmaj/roots.hpp"

#include <cmath>

#include "gwmaj/errors.hpp"

namespace gwmaj {

Root solve_bracketed(const std::function<double(double)>& g, const std::function<double(double)>& dg, double lo,
                     double hi, const RootOptions& options) {
  if (!(lo <= hi)) throw NoBracketError("empty bracket");
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return {lo, 0.0, 0};
  if (ghi == 0.0) return {hi, 0.0, 0};
  if ((glo > 0.0) == (ghi > 0.0)) throw NoBracketError("no sign change on the bracket");
  const bool rising = glo < 0.0;

  int it = 0;
  auto shrink = [&](double x, double gx) {
    if ((gx < 0.0) == rising) {
      lo = x;
    } else {
      hi = x;
    }
  };
  while (hi - lo > options.bisection_width && it < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    ++it;
    if (gm == 0.0) return {mid, 0.0, it};
    shrink(mid, gm);
  }

  double x = 0.5 * (lo + hi);
  double gx = g(x);
  // A couple of extra Newton steps once the residual target is met.
  int polish = 2;
  while (it < options.max_iterations) {
    if (std::abs(gx) < options.residual_tol && polish-- == 0) break;
    ++it;
    shrink(x, gx);
    const double d = dg(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - gx / d : lo - 1.0;
    if (!(next >= lo && next <= hi)) {
      if (std::abs(gx) < options.residual_tol) break;
      next = 0.5 * (lo + hi);
    }
    if (next == x) break;
    const double gn = g(next);
    if (std::abs(gx) < options.residual_tol && std::abs(gn) > std::abs(gx)) break;
    x = next;
    gx = gn;
    if (gx == 0.0) break;
  }
  return {x, std::abs(gx), it};
}

std::vector<std::pair<double, double>> sign_changes(const std::function<double(double)>& g, double lo, double hi,
                                                    int intervals) {
  if (intervals < 1 || !(lo < hi)) throw DomainError("sign_changes needs lo < hi and at least one interval");
  std::vector<std::pair<double, double>> out;
  double prev_x = lo;
  double prev = g(lo);
  if (prev == 0.0) out.emplace_back(lo, lo);
  for (int j = 1; j <= intervals; ++j) {
    const double x = lo + (hi - lo) * j / intervals;
    const double v = g(x);
    if (v == 0.0) {
      out.emplace_back(x, x);
    } else if (prev != 0.0 && (prev > 0.0) != (v > 0.0)) {
      out.emplace_back(prev_x, x);
    }
    prev_x = x;
    prev = v;
  }
  return out;
}

}  // namespace gwmaj
