#include "gwmaj/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "gwmaj/errors.hpp"

namespace gwmaj {

namespace {

GaussLegendreRule build_rule(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (order + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int j = 2; j <= order; ++j) {
        const long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int j = 2; j <= order; ++j) {
        const long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0L);
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[order - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[order - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw DomainError("quadrature order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int order) {
  const auto& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  long double sum = 0.0L;
  for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return static_cast<double>(half * sum);
}

}  // namespace gwmaj
