#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gwmaj/errors.hpp"
#include "gwmaj/fixed_points.hpp"
#include "gwmaj/uniform.hpp"

using namespace gwmaj;

TEST_CASE("small-arity fixed points solve their quadratics") {
  // f_2(t) = t <=> 3t^2 - 4t + 1 = 0, f_3(t) = t <=> t (5t^2 - 6t + 1) = 0
  const auto r2 = analyze(2);
  const auto r3 = analyze(3);
  CHECK(std::abs(r2.alpha - (4.0 - std::sqrt(4.0)) / 6.0) < 1e-12);
  CHECK(std::abs(r3.alpha - (6.0 - std::sqrt(16.0)) / 10.0) < 1e-12);
  CHECK(r2.classification == Classification::LinearlyAttracting);
  CHECK(r3.classification == Classification::LinearlyAttracting);
  CHECK(r2.derivative_at_alpha == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r3.derivative_at_alpha == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r2.fixed_points.size() == 1);
}

TEST_CASE("classification band") {
  CHECK(classify(0.5) == Classification::LinearlyAttracting);
  CHECK(classify(-0.99) == Classification::LinearlyAttracting);
  CHECK(classify(1.0) == Classification::NeutralSuspect);
  CHECK(classify(-1.0 + 1e-10) == Classification::NeutralSuspect);
  CHECK(classify(1.1) == Classification::Repelling);
  CHECK(to_string(Classification::Repelling) == "Repelling");
  CHECK(to_string(BasinCertificate::MinMaxContraction) == "MinMaxContraction");
}

TEST_CASE("find_alpha skips a fixed point on the left endpoint") {
  const auto f = [](double t) { return eval_fn(5, t); };
  const auto df = [](double t) { return eval_fn_derivative(5, 1, t); };
  const auto root = find_alpha(f, df, 0.0, 1.0 - 1e-6);
  CHECK(root.value > 0.01);
  CHECK(std::abs(eval_fn(5, root.value) - root.value) < 1e-13);
  CHECK_THROWS_AS(find_alpha([](double t) { return 0.5 * t + 0.6; }, [](double) { return 0.5; }, 0.1, 0.9),
                  NoBracketError);
}

TEST_CASE("fixed points of f_n lie below one half with f_n(alpha) = alpha") {
  for (int n = 2; n <= 60; ++n) {
    const auto r = analyze(n);
    CHECK(r.alpha > 0.0);
    CHECK(r.alpha < 0.5);
    CHECK(std::abs(eval_fn(n, r.alpha) - r.alpha) < 1e-13);
    CHECK(r.fixed_points.size() == 1);
    CHECK(r.classification == Classification::LinearlyAttracting);
    CHECK(r.certificate != BasinCertificate::None);
    if (n % 2 == 1) CHECK(r.certificate == BasinCertificate::MonotoneIncreasing);
  }
}

TEST_CASE("argmin and preimages for even arities") {
  CHECK(std::abs(find_xhat(2) - 1.0 / 3.0) < 1e-12);
  const auto p2 = find_preimages(2);
  REQUIRE(p2.has_value());
  CHECK(p2->degenerate);
  CHECK(analyze(2).certificate == BasinCertificate::DerivPositiveAtAlpha);
  CHECK_THROWS_AS(find_xhat(3), DomainError);

  for (int n = 4; n <= 26; n += 2) {
    const double xhat = find_xhat(n);
    CHECK(std::abs(eval_fn_derivative(n, 1, xhat)) < 1e-12);
    const auto pre = find_preimages(n);
    REQUIRE(pre.has_value());
    CHECK_FALSE(pre->degenerate);
    CHECK(pre->a < xhat);
    CHECK(xhat < pre->b);
    CHECK(std::abs(eval_fn(n, pre->a) - xhat) < 1e-12);
    CHECK(std::abs(eval_fn(n, pre->b) - xhat) < 1e-12);
    const auto r = analyze(n);
    CHECK(pre->a < r.alpha);
    CHECK(r.alpha < xhat);
    CHECK(std::max(std::abs(eval_fn_derivative(n, 1, pre->a)), std::abs(eval_fn_derivative(n, 1, pre->b))) < 1.0);
    if (n > 2 && r.derivative_at_alpha <= 0.0) CHECK(r.certificate == BasinCertificate::MinMaxContraction);
  }
  for (int n : {28, 30}) {
    CHECK_FALSE(find_preimages(n).has_value());
    const auto r = analyze(n);
    CHECK(r.derivative_at_alpha > 0.0);
    CHECK(r.certificate == BasinCertificate::DerivPositiveAtAlpha);
  }
}

TEST_CASE("table rows") {
  const std::vector<int> ns{4, 28};
  const auto rows = table_rows(ns);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 4);
  CHECK(rows[0].a.has_value());
  CHECK_FALSE(rows[1].a.has_value());
  CHECK(rows[1].alpha == doctest::Approx(analyze(28).alpha).epsilon(1e-14));

  std::ostringstream os;
  write_table_csv(os, rows);
  const std::string csv = os.str();
  CHECK(csv.rfind("n,xhat,f_xhat,alpha,df_alpha,a,b,df_a,df_b\n4,", 0) == 0);
  CHECK(csv.find(",,,,\n") != std::string::npos);
  const std::vector<int> odd{5};
  CHECK_THROWS_AS(table_rows(odd), DomainError);
}

TEST_CASE("mixture maps") {
  const auto odd = OffspringDistribution::parse("pmf:3=0.5,5=0.5");
  const auto map = scalar_map(odd);
  CHECK(map.parity == SupportParity::AllOdd);
  const auto r = analyze(map);
  CHECK(r.fixed_points.size() == 1);
  CHECK(std::abs(map.f(r.alpha) - r.alpha) < 1e-13);
  CHECK(r.certificate == BasinCertificate::MonotoneIncreasing);
  CHECK(period_two_orbits(map, 50, 7) == 0);

  const auto n4 = scalar_map(OffspringDistribution::nary(4));
  REQUIRE(n4.arity.has_value());
  CHECK(*n4.arity == 4);
  CHECK(analyze(n4).alpha == analyze(4).alpha);
}

TEST_CASE("geometric fixed point") {
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    const double alpha = geometric_alpha_closed(p);
    CHECK(std::abs(geometric_f_closed(p, alpha) - alpha) < 1e-12);
    const auto r = analyze(scalar_map(OffspringDistribution::shifted_geometric(p)));
    CHECK(r.alpha == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(r.derivative_at_alpha >= 0.0);
    CHECK(r.certificate == BasinCertificate::DerivPositiveAtAlpha);
  }
  for (int n : {200, 2000}) {
    const double alpha = geometric_alpha_closed(1.0 / (n - 1));
    CHECK(std::abs(alpha * std::sqrt(2.0 * n) - 1.0) < (n == 200 ? 0.1 : 0.05));
  }
}

TEST_CASE("iterating f_n from anywhere reaches alpha") {
  for (int n : {2, 3, 4, 8, 20, 30}) {
    const double alpha = analyze(n).alpha;
    // f_n(0) = 0 for odd n
    for (double x : {n % 2 == 0 ? 0.0 : 1e-3, 0.05, 0.45, 0.9, 1.0 - 1e-9}) {
      for (int m = 0; m < 2000; ++m) x = eval_fn(n, x);
      CHECK(std::abs(x - alpha) < 1e-10);
    }
  }
}
