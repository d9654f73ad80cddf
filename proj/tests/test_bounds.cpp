#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gwmaj/bounds.hpp"
#include "gwmaj/errors.hpp"
#include "gwmaj/fixed_points.hpp"

using namespace gwmaj;

TEST_CASE("central binomial sequence") {
  CHECK(xi(0) == 1);
  CHECK(xi(1) == ratio(1, 2));
  CHECK(xi(2) == ratio(3, 8));
  for (int m = 0; m <= 200; ++m) {
    CHECK(xi(m) == Rational(binomial(2 * m, m)) * inverse_power_of_two(2 * m));
    CHECK(static_cast<double>(xi_float(m)) == doctest::Approx(xi(m).get_d()).epsilon(1e-15));
  }
  CHECK_THROWS_AS(xi(-1), DomainError);
}

TEST_CASE("Wallis numbers") {
  CHECK(wallis(0) == PiMultiple{ratio(1, 2), 1});
  CHECK(wallis(1) == PiMultiple{1, 0});
  CHECK(wallis(2) == PiMultiple{ratio(1, 4), 1});
  CHECK(wallis(3) == PiMultiple{ratio(2, 3), 0});
  for (int n = 0; n <= 40; ++n) {
    const long double pi = std::numbers::pi_v<long double>;
    long double integral = 0.0L;
    const int steps = 20000;
    for (int j = 0; j < steps; ++j) integral += std::pow(std::sin((j + 0.5L) * pi / 2 / steps), n);
    integral *= pi / 2 / steps;
    CHECK(static_cast<double>(wallis(n).value()) == doctest::Approx(static_cast<double>(integral)).epsilon(1e-9));
    CHECK(wallis(n) * wallis(n + 1) == PiMultiple{ratio(1, n + 1), 1} * PiMultiple{ratio(1, 2), 0});
    if (n % 2 == 0) CHECK(wallis(n) == PiMultiple{xi(n / 2) / 2, 1});
  }
}

TEST_CASE("xi and Wallis bounds hold up to n = 1000") {
  for (int n = 1; n <= 1000; ++n) {
    const auto checks = check_xi_bounds(n);
    CHECK(checks.size() == 5);
    CHECK(all_pass(checks));
    for (const auto& c : checks) CHECK(c.margin > 0.0L);
  }
  CHECK_THROWS_AS(check_xi_bounds(0), DomainError);
}

TEST_CASE("alpha envelope") {
  for (int n = 3; n <= 100; ++n) {
    const auto checks = check_alpha_envelope(n, analyze(n).alpha);
    for (const auto& c : checks) {
      if (c.name == "alpha_lower") {
        CHECK(c.verdict != Verdict::Fail);
      } else {
        CHECK(c.verdict == Verdict::Pass);
      }
    }
  }
  const auto bad = check_alpha_envelope(600, 0.0);
  CHECK(bad[2].name == "alpha_lower");
  CHECK(bad[2].verdict == Verdict::Fail);
  CHECK(check_alpha_envelope(10, 0.0)[2].verdict == Verdict::Warn);
  CHECK_FALSE(all_pass(bad));
}

TEST_CASE("threshold sequence") {
  for (int n = 4; n <= 200; n += 2) {
    const auto checks = check_dpa_threshold(n);
    REQUIRE(checks.size() == 2);
    CHECK(checks[1].verdict == Verdict::Pass);
  }
  CHECK_THROWS_AS(check_dpa_threshold(5), DomainError);
  CHECK_THROWS_AS(dpa_w(1), DomainError);
}

TEST_CASE("identity suite") {
  const auto checks = identity_suite(60, 5);
  CHECK_FALSE(checks.empty());
  CHECK(all_pass(checks));
  bool saw_l5 = false;
  for (const auto& c : checks) saw_l5 = saw_l5 || c.name == "falling_factorial_sum_l5";
  CHECK(saw_l5);
  CHECK(identity_suite(10, 2, 1).size() == identity_suite(10, 2, 2).size());
}

TEST_CASE("JSON rendering") {
  const auto j = to_json(check_xi_bounds(3)[0]);
  CHECK(j["name"] == "xi_lower");
  CHECK(j["n"] == 3);
  CHECK(j["verdict"] == "pass");
  CHECK(to_json(check_xi_bounds(3)).size() == 5);
}

TEST_CASE("weighted means follow the monotone sequence") {
  const std::vector<double> mu{1, 1, 1, 1, 1};
  const std::vector<double> nu{1, 2, 3, 4, 5};
  const std::vector<double> down{0.5, 0.4, 0.3, 0.2, 0.1};
  const std::vector<double> up{0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<double> flat(5, 0.3);
  CHECK(weighted_mean_inequality(mu, nu, down, 0, 4));
  CHECK(weighted_mean_inequality(mu, nu, up, 1, 4));
  CHECK(weighted_mean_inequality(mu, nu, flat, 0, 4));
  const std::vector<double> zigzag{0.1, 0.3, 0.2, 0.4, 0.5};
  CHECK_THROWS_AS(weighted_mean_inequality(mu, nu, zigzag, 0, 4), DomainError);
  CHECK_THROWS_AS(weighted_mean_inequality(nu, mu, down, 0, 4), DomainError);
  CHECK_THROWS_AS(weighted_mean_inequality(mu, nu, down, 0, 5), DomainError);
}
