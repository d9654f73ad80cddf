#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gwmaj/errors.hpp"
#include "gwmaj/quadrature.hpp"
#include "gwmaj/roots.hpp"

using namespace gwmaj;

TEST_CASE("bracketed roots") {
  const auto r = solve_bracketed([](double x) { return x * x - 2.0; }, [](double x) { return 2.0 * x; }, 0.0, 2.0);
  CHECK(std::abs(r.value - std::sqrt(2.0)) < 1e-15);
  CHECK(r.residual < 1e-13);

  const auto c = solve_bracketed([](double x) { return std::cos(x) - x; }, [](double x) { return -std::sin(x) - 1.0; },
                                 0.0, 1.0);
  CHECK(std::abs(std::cos(c.value) - c.value) < 1e-15);

  const auto edge = solve_bracketed([](double x) { return x; }, [](double) { return 1.0; }, 0.0, 1.0);
  CHECK(edge.value == 0.0);
  CHECK(edge.iterations == 0);

  // zero derivative at the root still converges via bisection
  const auto flat = solve_bracketed([](double x) { return std::pow(x - 0.3, 3); },
                                    [](double x) { return 3.0 * std::pow(x - 0.3, 2); }, 0.0, 1.0);
  CHECK(std::abs(flat.value - 0.3) < 1e-4);

  CHECK_THROWS_AS(solve_bracketed([](double x) { return x * x + 1.0; }, [](double x) { return 2.0 * x; }, -1.0, 1.0),
                  NoBracketError);
  CHECK_THROWS_AS(solve_bracketed([](double x) { return x; }, [](double) { return 1.0; }, 1.0, 0.0), NoBracketError);
}

TEST_CASE("sign change intervals") {
  const auto s = sign_changes([](double x) { return std::sin(10.0 * x); }, 0.05, 1.0, 100);
  REQUIRE(s.size() == 3);
  for (const auto& [lo, hi] : s) {
    const double root = std::round(10.0 * lo / std::numbers::pi) * std::numbers::pi / 10.0;
    CHECK(lo <= root);
    CHECK(root <= hi);
  }
  const auto exact = sign_changes([](double x) { return x - 0.5; }, 0.0, 1.0, 4);
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].first == 0.5);
  CHECK(exact[0].second == 0.5);
  CHECK_THROWS_AS(sign_changes([](double x) { return x; }, 0.0, 1.0, 0), DomainError);
}

TEST_CASE("Gauss-Legendre rules") {
  for (int order : {1, 2, 5, 20, 64}) {
    const auto& rule = gauss_legendre(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
    for (int d = 0; d < 2 * order; ++d) {
      const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
      double sum = 0.0;
      for (int i = 0; i < order; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], d);
      CHECK(std::abs(sum - exact) < 1e-13);
    }
  }
  CHECK(&gauss_legendre(7) == &gauss_legendre(7));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 12) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(integrate([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2, 16) == doctest::Approx(1.0).epsilon(1e-15));
}
