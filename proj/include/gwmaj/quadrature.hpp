#pragma once

#include <functional>
#include <vector>

namespace gwmaj {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule of the given order, computed once per order by Newton iteration on
/// the Legendre polynomial and cached.
const GaussLegendreRule& gauss_legendre(int order);

/// Integral of f over [a, b] with the order-point rule.
double integrate(const std::function<double(double)>& f, double a, double b, int order);

}  // namespace gwmaj
