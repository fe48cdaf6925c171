#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "heatlab/asymptotics.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/sausage.hpp"
#include "heatlab/specfun.hpp"

using namespace heatlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrtPi = 1.7724538509055160273;

AsymptoticModel square_model(const TransmissionMedium& m, double lambda) {
  AsymptoticModel model;
  model.medium = m;
  model.mu = make_mu_function(make_square(1.0), MuMode::analytic);
  model.boundary_measure = 4.0;
  model.dim = 2;
  model.boundary_dim = 1.0;
  model.segments = {{4.0, lambda, 0.0}};
  model.smooth = false;
  model.assume_smooth = true;
  return model;
}

AsymptoticModel linear_collar_model(const TransmissionMedium& m,
                                    double lambda) {
  AsymptoticModel model = square_model(m, lambda);
  model.mu.eval = [](double w) { return 4.0 * w; };  // no saturation
  return model;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("expansion time constants are pinned") {
  CHECK(c0() == doctest::Approx(0.2217963491651799).epsilon(1e-12));
  CHECK(c1() == doctest::Approx(0.5206830025517029).epsilon(1e-12));
}

TEST_CASE("boundary-layer weight limits") {
  for (double z : {0.0, 0.3, 1.2}) {
    CHECK(f_sigma(0.0, 2.0, z, 1e-3) ==
          doctest::Approx(heatlab::erfc(z)).epsilon(1e-14));
    CHECK(f_sigma(kInf, 2.0, z, 1e-3) == 0.0);
  }
}

TEST_CASE("boundary-layer weight small-time series") {
  const double lambda = 17.0, alpha = 11.0, t = 1e-12;
  const double c = lambda * alpha * std::sqrt(t);
  for (double z : {0.0, 0.4, 1.5}) {
    const double series =
        heatlab::erfc(z) +
        c * std::exp(-z * z) * (2.0 * z * erfcx(z) - 2.0 / kSqrtPi);
    CHECK(f_sigma(lambda, alpha, z, t) ==
          doctest::Approx(series).epsilon(1e-6));
  }
}

TEST_CASE("collar weights reproduce the gaussian moments") {
  static const QuadratureRule rule = gauss_legendre(64);
  for (double nd : {0.0, 0.5, 1.0}) {
    // substitute z = u^2 so the fractional power is smooth at the origin
    const double moment = integrate_panels(
        [&](double u) {
          return 2.0 * std::pow(u, 2.0 * nd + 1.0) *
                 std::exp(-u * u * u * u) / kSqrtPi;
        },
        0.0, std::sqrt(2.0), rule, 8);
    CHECK(beta_coefficient(nd) == doctest::Approx(moment).epsilon(1e-12));
  }
}

TEST_CASE("equal-diffusivity heat content matches a hand integral") {
  const AsymptoticModel model = square_model({1.0, 1.0}, kInf);
  const double ell = 0.1;  // well below saturation over the whole window
  const double t = ell * ell / 4.0;
  // mu(l z) = 4 l z - 4 l^2 z^2 on [0, 2]; both gaussian moments are exact
  const double m1 = 0.5 * (1.0 - std::exp(-4.0));
  const double m2 = -std::exp(-4.0) + (kSqrtPi / 4.0) * heatlab::erf(2.0);
  const double expected = (4.0 * ell * m1 - 4.0 * ell * ell * m2) / kSqrtPi;
  CHECK(n_equal_diffusion(model, t, FormKind::full) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(n_equal_diffusion(model, t, FormKind::leading) ==
        doctest::Approx(beta_coefficient(1.0) * (4.0 * ell - 4.0 * ell * ell))
            .epsilon(1e-14));
}

TEST_CASE("full and leading forms coincide for a pure power-law collar") {
  const AsymptoticModel model = linear_collar_model({1.0, 1.0}, kInf);
  for (double t : {1e-6, 1e-4, 1e-2}) {
    CHECK(n_equal_diffusion(model, t, FormKind::full) ==
          doctest::Approx(n_equal_diffusion(model, t, FormKind::leading))
              .epsilon(1e-13));
  }
  const AsymptoticModel finite = linear_collar_model({0.01, 1.0}, 17.0);
  for (double t : {1e-6, 1e-4}) {
    CHECK(n_finite_lambda(finite, t, FormKind::full) ==
          doctest::Approx(n_finite_lambda(finite, t, FormKind::leading))
              .epsilon(1e-13));
  }
}

TEST_CASE("full form approaches the leading form at short times") {
  const AsymptoticModel model = square_model({1.0, 1.0}, kInf);
  const double t = 1e-7;
  const double ratio = n_equal_diffusion(model, t, FormKind::full) /
                       n_equal_diffusion(model, t, FormKind::leading);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("equal-diffusivity form rejects unequal media") {
  const AsymptoticModel model = square_model({0.5, 1.0}, kInf);
  CHECK_THROWS_AS(n_equal_diffusion(model, 1e-4, FormKind::full),
                  std::invalid_argument);
}

TEST_CASE("two-media perfect contact carries the transmission prefactor") {
  const TransmissionMedium m{0.4, 1.0};
  const AsymptoticModel model = square_model(m, kInf);
  const double t = 1e-5;
  const double ell = 2.0 * std::sqrt(m.d_plus * t);
  const double prefactor = 2.0 * std::sqrt(m.d_minus) /
                           (std::sqrt(m.d_minus) + std::sqrt(m.d_plus));
  const double expected =
      prefactor * beta_coefficient(1.0) * model.mu.eval(ell);
  CHECK(n_infinite_lambda(model, t, FormKind::leading) ==
        doctest::Approx(expected).epsilon(1e-14));

  // equal media: the prefactor is exactly one
  const AsymptoticModel equal = square_model({1.0, 1.0}, kInf);
  CHECK(n_infinite_lambda(equal, t, FormKind::full) ==
        doctest::Approx(n_equal_diffusion(equal, t, FormKind::full))
            .epsilon(1e-14));
}

TEST_CASE("finite-conductance form is linear at weak coupling, monotone") {
  const TransmissionMedium m{0.4, 1.0};
  const double t = 1e-5;
  AsymptoticModel weak = square_model(m, 1.0);
  AsymptoticModel weaker = square_model(m, 1e-8);
  const double ratio = n_finite_lambda(weaker, t, FormKind::full) /
                       n_finite_lambda(weak, t, FormKind::full);
  CHECK(ratio == doctest::Approx(1e-8).epsilon(0.5));

  double prev = 0.0;
  for (double lambda : {0.1, 10.0, 1e3}) {
    AsymptoticModel model = square_model(m, lambda);
    const double n = n_finite_lambda(model, t, FormKind::full);
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("finite-conductance form reduces to the smooth expansion") {
  const AsymptoticModel model = square_model({0.01, 1.0}, 17.0);
  const double r7 = n_finite_lambda(model, 1e-7, FormKind::full) /
                    n_regular_finite(model, 1e-7);
  const double r8 = n_finite_lambda(model, 1e-8, FormKind::full) /
                    n_regular_finite(model, 1e-8);
  CHECK(r7 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::fabs(r8 - 1.0) <= std::fabs(r7 - 1.0));
}

TEST_CASE("finite-conductance form rejects perfect segments") {
  AsymptoticModel model = square_model({1.0, 1.0}, kInf);
  CHECK_THROWS_AS(n_finite_lambda(model, 1e-4, FormKind::full),
                  std::invalid_argument);
}

TEST_CASE("segment weights must sum to the boundary measure") {
  AsymptoticModel model = square_model({1.0, 1.0}, 2.0);
  model.segments = {{1.0, 2.0, 0.0}};  // measure is 4
  CHECK_THROWS_AS(n_finite_lambda(model, 1e-4, FormKind::full),
                  std::domain_error);
}

TEST_CASE("mixed boundaries add their contributions") {
  const TransmissionMedium m{0.4, 1.0};
  const double t = 1e-5;
  AsymptoticModel all_finite = square_model(m, 17.0);
  AsymptoticModel all_perfect = square_model(m, kInf);
  CHECK(n_mixed(all_finite, t, FormKind::full) ==
        doctest::Approx(n_finite_lambda(all_finite, t, FormKind::full))
            .epsilon(1e-14));
  CHECK(n_mixed(all_perfect, t, FormKind::full) ==
        doctest::Approx(n_infinite_lambda(all_perfect, t, FormKind::full))
            .epsilon(1e-14));

  AsymptoticModel half = square_model(m, 17.0);
  half.segments = {{2.0, 17.0, 0.0}, {2.0, kInf, 0.0}};
  const double expected =
      0.5 * n_finite_lambda(all_finite, t, FormKind::full) +
      0.5 * n_infinite_lambda(all_perfect, t, FormKind::full);
  CHECK(n_mixed(half, t, FormKind::full) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("smooth perfect-contact expansion has the pinned coefficient") {
  const TransmissionMedium m{0.4, 1.0};
  AsymptoticModel model = square_model(m, kInf);
  const double t = 1e-4;
  const double expected = 2.0 * (1.0 - std::exp(-4.0)) / kSqrtPi *
                          std::sqrt(m.d_plus * m.d_minus) /
                          (std::sqrt(m.d_plus) + std::sqrt(m.d_minus)) * 4.0 *
                          std::sqrt(t);
  CHECK(n_regular_infinite(model, t) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(n_regular_infinite(model, 4.0 * t) ==
        doctest::Approx(2.0 * n_regular_infinite(model, t)).epsilon(1e-14));
}

TEST_CASE("smooth finite-contact expansion has the pinned coefficients") {
  const TransmissionMedium m{0.01, 1.0};
  const double lambda = 17.0, t = 1e-6;
  AsymptoticModel model = square_model(m, lambda);
  const double lam1 = 4.0 * lambda, lam2 = 4.0 * lambda * lambda;
  const double bracket =
      2.0 * (1.0 / std::sqrt(m.d_plus) + 1.0 / std::sqrt(m.d_minus)) * lam2;
  const double expected = 4.0 * c0() * t * lam1 -
                          (2.0 / 3.0) * c1() * std::pow(t, 1.5) * bracket;
  CHECK(n_regular_finite(model, t) == doctest::Approx(expected).epsilon(1e-14));

  // curvature enters through the mean-curvature moment
  AsymptoticModel curved = model;
  curved.smooth = true;
  curved.segments = {{4.0, lambda, 0.5}};
  const double curved_bracket =
      bracket - std::sqrt(m.d_plus) * 1.0 * (4.0 * lambda * 0.5);
  const double curved_expected =
      4.0 * c0() * t * lam1 -
      (2.0 / 3.0) * c1() * std::pow(t, 1.5) * curved_bracket;
  CHECK(n_regular_finite(curved, t) ==
        doctest::Approx(curved_expected).epsilon(1e-14));
}

TEST_CASE("smooth forms refuse rough boundaries unless told otherwise") {
  AsymptoticModel rough = square_model({1.0, 1.0}, kInf);
  rough.assume_smooth = false;
  CHECK_THROWS_AS(n_regular_infinite(rough, 1e-4), std::invalid_argument);
  rough.assume_smooth = true;
  CHECK(n_regular_infinite(rough, 1e-4) > 0.0);
}

TEST_CASE("scaling overlay replaces the collar volume") {
  const TransmissionMedium m{1.0, 1.0};
  AsymptoticModel model = square_model(m, kInf);
  model.boundary_dim = 1.5;
  model.fractal_prefactor = 2.5;
  const double t = 1e-5;
  const double ell = 2.0 * std::sqrt(m.d_plus * t);
  const double expected =
      beta_coefficient(0.5) * 2.5 * std::sqrt(ell);  // prefactor 1 at equal D
  CHECK(n_fractal_scaling(model, t) == doctest::Approx(expected).epsilon(1e-14));
  // quarter-power growth in time
  CHECK(n_fractal_scaling(model, 16.0 * t) ==
        doctest::Approx(2.0 * n_fractal_scaling(model, t)).epsilon(1e-14));

  AsymptoticModel finite = square_model({0.01, 1.0}, 17.0);
  finite.boundary_dim = 1.5;
  finite.fractal_prefactor = 2.5;
  CHECK(n_fractal_scaling(finite, t) > 0.0);

  AsymptoticModel mixed = model;
  mixed.segments = {{2.0, 17.0, 0.0}, {2.0, kInf, 0.0}};
  CHECK_THROWS_AS(n_fractal_scaling(mixed, t), std::invalid_argument);
}

TEST_CASE("formula ids round-trip through their names") {
  const auto ids = all_formula_ids();
  CHECK(ids.size() == 9);
  for (FormulaId id : ids) {
    const auto back = formula_id_from_name(formula_id_name(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK(!formula_id_from_name("no-such-formula").has_value());
}

TEST_CASE("formula dispatch matches the direct calls") {
  const AsymptoticModel model = square_model({1.0, 1.0}, kInf);
  const double t = 1e-5;
  CHECK(evaluate_formula(model, FormulaId::equal_diffusion_full, t) ==
        n_equal_diffusion(model, t, FormKind::full));
  CHECK(evaluate_formula(model, FormulaId::infinite_lambda_leading, t) ==
        n_infinite_lambda(model, t, FormKind::leading));
  CHECK(evaluate_formula(model, FormulaId::regular_infinite, t) ==
        n_regular_infinite(model, t));
  const AsymptoticModel finite = square_model({0.01, 1.0}, 17.0);
  CHECK(evaluate_formula(finite, FormulaId::finite_lambda_full, t) ==
        n_mixed(finite, t, FormKind::full));
}

TEST_CASE("validity warning trips once the layer fills the domain") {
  const AsymptoticModel model = square_model({1.0, 1.0}, kInf);
  CHECK(!validity_warning(model, 0.5, 1e-5).has_value());
  CHECK(validity_warning(model, 0.5, 1e-2).has_value());
}

TEST_CASE("time must be positive") {
  const AsymptoticModel model = square_model({1.0, 1.0}, kInf);
  CHECK_THROWS_AS(n_equal_diffusion(model, 0.0, FormKind::full),
                  std::domain_error);
  CHECK_THROWS_AS(n_regular_infinite(model, -1.0), std::domain_error);
}

}  // TEST_SUITE
