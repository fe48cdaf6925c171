#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "heatlab/specfun.hpp"

using namespace heatlab;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_SUITE("specfun") {

TEST_CASE("erfcx agrees with the direct product where erfc is healthy") {
  for (double x = 0.0; x <= 4.0; x += 0.17) {
    const double direct = std::exp(x * x) * std::erfc(x);
    CHECK(erfcx(x) == doctest::Approx(direct).epsilon(1e-13));
  }
  CHECK(erfcx(0.0) == 1.0);
}

TEST_CASE("erfcx matches its large-argument expansion") {
  for (double x : {6.0, 10.0, 50.0, 1e3, 1e6}) {
    const double inv2 = 1.0 / (2.0 * x * x);
    const double series = (1.0 - inv2 + 3.0 * inv2 * inv2) / (x * kSqrtPi);
    // the first omitted term bounds the truncation of the series itself
    const double tail = 15.0 / (8.0 * std::pow(x, 6));
    CHECK(erfcx(x) ==
          doctest::Approx(series).epsilon(std::max(1e-13, 2.0 * tail)));
  }
}

TEST_CASE("erfcx negative arguments satisfy the reflection identity") {
  for (double x : {0.25, 1.0, 2.5, 5.0}) {
    const double expected = 2.0 * std::exp(x * x) - erfcx(x);
    CHECK(erfcx(-x) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(std::isinf(erfcx(-30.0)));
}

TEST_CASE("erfcx is strictly decreasing") {
  double prev = erfcx(-5.0);
  for (double x = -4.75; x <= 8.0; x += 0.25) {
    const double cur = erfcx(x);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("lower incomplete gamma closed forms") {
  for (double x : {0.1, 0.7, 1.9, 4.0, 9.0}) {
    CHECK(lower_incomplete_gamma(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
    CHECK(lower_incomplete_gamma(0.5, x) ==
          doctest::Approx(kSqrtPi * std::erf(std::sqrt(x))).epsilon(1e-13));
  }
  // pinned value used by the collar weight at exponent 1/2
  CHECK(lower_incomplete_gamma(1.5, 4.0) ==
        doctest::Approx(0.8454501129849532).epsilon(1e-12));
}

TEST_CASE("lower incomplete gamma recurrence") {
  // gamma(a+1, x) = a gamma(a, x) - x^a e^(-x)
  for (double a : {0.5, 1.25, 3.0, 7.5}) {
    for (double x : {0.3, 2.0, 6.0, 15.0}) {
      const double lhs = lower_incomplete_gamma(a + 1.0, x);
      const double rhs =
          a * lower_incomplete_gamma(a, x) - std::pow(x, a) * std::exp(-x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("regularized gamma saturates and rejects bad arguments") {
  CHECK(regularized_gamma_p(2.0, 200.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(regularized_gamma_p(2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("collar weight coefficients are pinned") {
  CHECK(beta_coefficient(1.0) ==
        doctest::Approx(0.27692804543535515).epsilon(1e-12));
  CHECK(beta_coefficient(0.5) ==
        doctest::Approx(0.3422106074165801).epsilon(1e-12));
  CHECK(beta_coefficient(0.0) ==
        doctest::Approx(0.49766113250947636).epsilon(1e-12));
  for (double x : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(beta_coefficient(x) ==
          doctest::Approx(lower_incomplete_gamma((x + 1.0) / 2.0, 4.0) /
                          (2.0 * kSqrtPi))
              .epsilon(1e-14));
  }
}

TEST_CASE("gauss-legendre weights sum to 2 and nodes are symmetric") {
  for (int n : {2, 8, 16, 64}) {
    const QuadratureRule rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i) {
      CHECK(rule.nodes[i] ==
            doctest::Approx(-rule.nodes[n - 1 - i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss-legendre integrates monomials up to degree 2n-1 exactly") {
  const int n = 8;
  const QuadratureRule rule = gauss_legendre(n);
  for (int k = 0; k <= 2 * n - 1; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += rule.weights[i] * std::pow(rule.nodes[i], k);
    }
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("panel integration and NaN rejection") {
  const QuadratureRule rule = gauss_legendre(64);
  const double pi = 3.14159265358979323846;
  CHECK(integrate_panels([](double x) { return std::sin(x); }, 0.0, pi, rule,
                         4) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return x * x; }, -1.0, 2.0, rule) ==
        doctest::Approx(3.0).epsilon(1e-13));
  CHECK_THROWS_AS(
      integrate([](double) { return std::nan(""); }, 0.0, 1.0, rule),
      std::domain_error);
}

}  // TEST_SUITE
