#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "heatlab/geometry.hpp"
#include "heatlab/sausage.hpp"

using namespace heatlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("sausage") {

TEST_CASE("closed forms for square and circle") {
  const DomainGeometry square = make_square(1.0);
  CHECK(mu_analytic(square, 0.1) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(mu_analytic(square, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu_analytic(square, 0.8) == doctest::Approx(1.0).epsilon(1e-15));

  const DomainGeometry circle = make_circle(1.0);
  CHECK(mu_analytic(circle, 0.1) ==
        doctest::Approx(2.0 * kPi * 0.1 - kPi * 0.01).epsilon(1e-15));
  CHECK(mu_analytic(circle, 1.0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(mu_analytic(circle, 3.0) == doctest::Approx(kPi).epsilon(1e-15));

  CHECK(has_analytic_mu(square));
  CHECK(has_analytic_mu(circle));
  CHECK(!has_analytic_mu(make_minkowski_prefractal(2, 1.0)));
  CHECK_THROWS_AS(mu_analytic(make_minkowski_prefractal(2, 1.0), 0.1),
                  std::invalid_argument);
}

TEST_CASE("collar volume is monotone and saturates") {
  const DomainGeometry g = make_minkowski_prefractal(2, 1.0);
  MuGridOptions opt;
  opt.resolution = 512;
  opt.richardson = false;
  const std::vector<double> widths = {0.005, 0.01, 0.02, 0.05,
                                      0.1,   0.2,  0.5,  1.0};
  const auto estimates = mu_grid(g, widths, opt);
  REQUIRE(estimates.size() == widths.size());
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    CHECK(estimates[i].value >= estimates[i - 1].value - 1e-12);
  }
  // a width beyond any interior point swallows the whole area
  CHECK(estimates.back().value == doctest::Approx(g.area).epsilon(1e-3));
  // a grid estimate may overshoot the exact area by its own quantization:
  // one sub-cell layer along the boundary
  const double quant =
      2.0 * g.perimeter * 1.25 / (opt.resolution * opt.subsample);
  for (const auto& e : estimates) {
    CHECK(e.value >= 0.0);
    CHECK(e.value <= g.area + quant);
  }
}

TEST_CASE("grid estimates track the closed form on the square") {
  MuGridOptions opt;
  opt.resolution = 2048;
  opt.richardson = false;
  const std::vector<double> widths = {0.02, 0.05, 0.1, 0.2, 0.45};
  const auto estimates = mu_grid(make_square(1.0), widths, opt);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const double exact = mu_analytic(make_square(1.0), widths[i]);
    CHECK(estimates[i].value == doctest::Approx(exact).epsilon(1e-3));
  }
}

TEST_CASE("grid estimates track the closed form on the circle") {
  MuGridOptions opt;
  opt.resolution = 1024;
  opt.richardson = true;
  const DomainGeometry circle = make_circle(1.0);
  const std::vector<double> widths = {0.05, 0.1, 0.3};
  const auto estimates = mu_grid(circle, widths, opt);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const double exact = mu_analytic(circle, widths[i]);
    CHECK(estimates[i].value == doctest::Approx(exact).epsilon(1e-3));
    CHECK(estimates[i].est_error >= 0.0);
    CHECK(estimates[i].mode == MuMode::grid);
  }
}

TEST_CASE("grid pass is independent of the thread count") {
  const DomainGeometry g = make_minkowski_prefractal(1, 1.0);
  const std::vector<double> widths = {0.03, 0.11, 0.27};
  MuGridOptions one;
  one.resolution = 512;
  one.richardson = false;
  one.threads = 1;
  MuGridOptions four = one;
  four.threads = 4;
  const auto a = mu_grid(g, widths, one);
  const auto b = mu_grid(g, widths, four);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    CHECK(a[i].value == b[i].value);  // bitwise: deterministic reduction
  }
}

TEST_CASE("monte carlo agrees within its own error bar and is reproducible") {
  const DomainGeometry square = make_square(1.0);
  MuMonteCarloOptions opt;
  opt.samples = 2000000;
  opt.seed = 99;
  const MuEstimate e = mu_monte_carlo(square, 0.1, opt);
  CHECK(e.est_error > 0.0);
  CHECK(std::fabs(e.value - 0.36) <= 4.0 * e.est_error);

  const MuEstimate repeat = mu_monte_carlo(square, 0.1, opt);
  CHECK(e.value == repeat.value);

  MuMonteCarloOptions threaded = opt;
  threaded.threads = 3;
  const MuEstimate multi = mu_monte_carlo(square, 0.1, threaded);
  CHECK(e.value == multi.value);

  MuMonteCarloOptions other_seed = opt;
  other_seed.seed = 100;
  const MuEstimate different = mu_monte_carlo(square, 0.1, other_seed);
  CHECK(different.value != e.value);
}

TEST_CASE("scaling exponent recovers an exact power law") {
  std::vector<double> widths, values;
  for (int i = 0; i < 12; ++i) {
    const double w = 0.01 * std::pow(1.4, i);
    widths.push_back(w);
    values.push_back(3.7 * std::pow(w, 0.7));
  }
  CHECK(mu_scaling_exponent(widths, values) ==
        doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("deep prefractal collar scales with the limit exponent") {
  const DomainGeometry g = make_minkowski_prefractal(4, 1.0);
  const WidthWindow window = prefractal_scaling_window(g);
  CHECK(window.lo == doctest::Approx(1.0 / 256.0));
  CHECK(window.hi == doctest::Approx(0.25));
  std::vector<double> widths;
  for (int i = 0; i < 9; ++i) {
    widths.push_back(window.lo *
                     std::pow(window.hi / window.lo, i / 8.0));
  }
  MuGridOptions opt;
  opt.resolution = 2048;
  opt.richardson = false;
  const auto estimates = mu_grid(g, widths, opt);
  std::vector<double> values;
  for (const auto& e : estimates) values.push_back(e.value);
  // n - d = 2 - 1.5 = 0.5 for the limit set
  CHECK(mu_scaling_exponent(widths, values) ==
        doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("mu function wrappers") {
  const DomainGeometry square = make_square(1.0);
  const MuFunction analytic = make_mu_function(square, MuMode::analytic);
  CHECK(analytic.eval(0.1) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(analytic.mode == MuMode::analytic);

  MuGridOptions opt;
  opt.resolution = 1024;
  opt.richardson = false;
  const MuFunction grid =
      make_mu_function(square, MuMode::grid, 1e-4, 1.0, 64, opt);
  for (double w : {0.01, 0.05, 0.2, 0.4}) {
    CHECK(grid.eval(w) ==
          doctest::Approx(mu_analytic(square, w)).epsilon(5e-3));
  }
  // saturation above the table; positive growing extrapolation below it
  // (the extrapolation slope comes from the lowest table nodes, so anchor
  // the table where the grid resolves the node spacing)
  CHECK(grid.eval(2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(grid.eval(1e-5) > 0.0);
  const MuFunction coarse =
      make_mu_function(square, MuMode::grid, 0.01, 1.0, 32, opt);
  CHECK(coarse.eval(1e-3) > 0.0);
  CHECK(coarse.eval(1e-3) < coarse.eval(2e-3));
  CHECK(coarse.eval(2e-3) < coarse.eval(0.01) * 1.05);

  CHECK_THROWS_AS(make_mu_function(square, MuMode::monte_carlo),
                  std::invalid_argument);
}

}  // TEST_SUITE
