#include "heatlab/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "heatlab/specfun.hpp"

namespace heatlab {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

const QuadratureRule& rule64() {
  static const QuadratureRule rule = gauss_legendre(64);
  return rule;
}

void check_model_common(const AsymptoticModel& model, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::domain_error("asymptotics: time must be positive and finite");
  }
  if (!(model.boundary_measure > 0.0)) {
    throw std::domain_error("asymptotics: boundary measure must be > 0");
  }
  if (!model.mu.eval) {
    throw std::domain_error("asymptotics: model has no collar volume");
  }
  if (model.dim < 1) {
    throw std::domain_error("asymptotics: dimension must be >= 1");
  }
}

void check_segments(const AsymptoticModel& model) {
  if (model.segments.empty()) {
    throw std::domain_error("asymptotics: model has no boundary segments");
  }
  double total = 0.0;
  for (const auto& seg : model.segments) {
    if (!(seg.weight > 0.0)) {
      throw std::domain_error("asymptotics: segment weights must be > 0");
    }
    if (!(seg.lambda >= 0.0)) {
      throw std::domain_error("asymptotics: segment lambda must be >= 0");
    }
    total += seg.weight;
  }
  if (std::fabs(total - model.boundary_measure) >
      1e-9 * model.boundary_measure) {
    throw std::domain_error(
        "asymptotics: segment weights must sum to the boundary measure");
  }
}

void require_smooth(const AsymptoticModel& model) {
  if (!model.smooth && !model.assume_smooth) {
    throw std::invalid_argument(
        "asymptotics: smooth-boundary form needs a smooth (or explicitly "
        "assumed smooth) model");
  }
}

}  // namespace

double f_sigma(double lambda, double alpha, double z, double t) {
  if (!(t > 0.0)) throw std::domain_error("f_sigma: time must be positive");
  if (!(alpha > 0.0)) throw std::domain_error("f_sigma: alpha must be > 0");
  if (!(lambda >= 0.0)) throw std::domain_error("f_sigma: lambda must be >= 0");
  if (std::isinf(lambda)) return 0.0;
  const double c = lambda * alpha * std::sqrt(t);
  return std::exp(-z * z) * erfcx(z + c);
}

double c0() {
  return 1.0 + 1.5 * erf(1.0) - 2.25 * erf(2.0) +
         (std::exp(-1.0) - std::exp(-4.0)) / kSqrtPi;
}

double c1() {
  return 1.0 / kSqrtPi - 6.0 +
         (5.0 * std::exp(-4.0) - 4.0 * std::exp(-1.0)) / kSqrtPi -
         5.0 * erf(1.0) + 11.0 * erf(2.0);
}

double n_equal_diffusion(const AsymptoticModel& model, double t,
                         FormKind kind) {
  check_model_common(model, t);
  const double dp = model.medium.d_plus, dm = model.medium.d_minus;
  if (std::fabs(dp - dm) > 1e-12 * std::max(dp, dm)) {
    throw std::invalid_argument(
        "n_equal_diffusion: needs equal diffusivities on both sides");
  }
  const double ell = 2.0 * std::sqrt(dp * t);
  if (kind == FormKind::leading) {
    return beta_coefficient(model.dim - model.boundary_dim) *
           model.mu.eval(ell);
  }
  auto integrand = [&](double z) {
    return std::exp(-z * z) / kSqrtPi * model.mu.eval(ell * z);
  };
  return integrate_panels(integrand, 0.0, 2.0, rule64(), 8);
}

double n_infinite_lambda(const AsymptoticModel& model, double t,
                         FormKind kind) {
  check_model_common(model, t);
  const double dp = model.medium.d_plus, dm = model.medium.d_minus;
  const double prefactor =
      2.0 * std::sqrt(dm) / (std::sqrt(dm) + std::sqrt(dp));
  const double ell = 2.0 * std::sqrt(dp * t);
  if (kind == FormKind::leading) {
    return prefactor *
           beta_coefficient(model.dim - model.boundary_dim) *
           model.mu.eval(ell);
  }
  auto integrand = [&](double z) {
    return std::exp(-z * z) / kSqrtPi * model.mu.eval(ell * z);
  };
  return prefactor * integrate_panels(integrand, 0.0, 2.0, rule64(), 8);
}

double n_finite_lambda(const AsymptoticModel& model, double t, FormKind kind) {
  check_model_common(model, t);
  check_segments(model);
  for (const auto& seg : model.segments) {
    if (std::isinf(seg.lambda)) {
      throw std::invalid_argument(
          "n_finite_lambda: perfect-contact segments belong to "
          "n_infinite_lambda or n_mixed");
    }
  }
  const double dp = model.medium.d_plus;
  const double alpha = coupling_alpha(model.medium);
  const double ell = 2.0 * std::sqrt(dp * t);
  const double vol = model.boundary_measure;

  // sum over segments of w_i lambda_i f(lambda_i, z)
  auto lambda_f_sum = [&](double z) {
    double sum = 0.0;
    for (const auto& seg : model.segments) {
      if (seg.lambda == 0.0) continue;
      sum += seg.weight * seg.lambda * f_sigma(seg.lambda, alpha, z, t);
    }
    return sum;
  };
  // sum over segments of w_i lambda_i int_1^2 f(lambda_i, z) dz
  double lambda_tail = 0.0;
  for (const auto& seg : model.segments) {
    if (seg.lambda == 0.0) continue;
    const double lam = seg.lambda;
    lambda_tail += seg.weight * lam *
                   integrate_panels(
                       [&](double z) { return f_sigma(lam, alpha, z, t); },
                       1.0, 2.0, rule64(), 4);
  }

  const double nd = model.dim - model.boundary_dim;
  double term_flat, term_upper, term_lower;
  if (kind == FormKind::leading) {
    const double mu_ell = model.mu.eval(ell);
    term_flat = mu_ell * lambda_tail;
    term_upper = mu_ell * integrate_panels(
                              [&](double z) {
                                return std::pow(z - 1.0, nd) * lambda_f_sum(z);
                              },
                              1.0, 2.0, rule64(), 4);
    term_lower = mu_ell * integrate_panels(
                              [&](double z) {
                                return std::pow(z, nd) * lambda_f_sum(z);
                              },
                              0.0, 1.0, rule64(), 4);
  } else {
    term_flat = model.mu.eval(ell) * lambda_tail;
    term_upper = integrate_panels(
        [&](double z) { return model.mu.eval(ell * (z - 1.0)) * lambda_f_sum(z); },
        1.0, 2.0, rule64(), 4);
    term_lower = integrate_panels(
        [&](double z) { return model.mu.eval(ell * z) * lambda_f_sum(z); },
        0.0, 1.0, rule64(), 4);
  }
  return 2.0 * std::sqrt(t) / (std::sqrt(dp) * vol) *
         (term_flat - term_upper + term_lower);
}

double n_mixed(const AsymptoticModel& model, double t, FormKind kind) {
  check_model_common(model, t);
  check_segments(model);
  double finite_weight = 0.0, perfect_weight = 0.0;
  AsymptoticModel finite_part = model;
  finite_part.segments.clear();
  for (const auto& seg : model.segments) {
    if (std::isinf(seg.lambda)) {
      perfect_weight += seg.weight;
    } else {
      finite_part.segments.push_back(seg);
      finite_weight += seg.weight;
    }
  }
  double out = 0.0;
  if (finite_weight > 0.0) {
    // Evaluate the finite form on its own measure, then rescale so the
    // boundary average is taken over the full measure.
    finite_part.boundary_measure = finite_weight;
    out += finite_weight / model.boundary_measure *
           n_finite_lambda(finite_part, t, kind);
  }
  if (perfect_weight > 0.0) {
    out += perfect_weight / model.boundary_measure *
           n_infinite_lambda(model, t, kind);
  }
  return out;
}

double n_regular_infinite(const AsymptoticModel& model, double t) {
  check_model_common(model, t);
  require_smooth(model);
  const double dp = model.medium.d_plus, dm = model.medium.d_minus;
  return 2.0 * (1.0 - std::exp(-4.0)) / kSqrtPi * std::sqrt(dp * dm) /
         (std::sqrt(dp) + std::sqrt(dm)) * model.boundary_measure *
         std::sqrt(t);
}

double n_regular_finite(const AsymptoticModel& model, double t) {
  check_model_common(model, t);
  check_segments(model);
  require_smooth(model);
  const double dp = model.medium.d_plus, dm = model.medium.d_minus;
  double lam1 = 0.0, lam2 = 0.0, lam_h = 0.0;
  for (const auto& seg : model.segments) {
    if (std::isinf(seg.lambda)) {
      throw std::invalid_argument(
          "n_regular_finite: perfect-contact segments are outside this form");
    }
    lam1 += seg.weight * seg.lambda;
    lam2 += seg.weight * seg.lambda * seg.lambda;
    lam_h += seg.weight * seg.lambda * seg.curvature;
  }
  const double bracket =
      2.0 * (1.0 / std::sqrt(dp) + 1.0 / std::sqrt(dm)) * lam2 -
      std::sqrt(dp) * (model.dim - 1) * lam_h;
  return 4.0 * c0() * t * lam1 -
         (2.0 / 3.0) * c1() * std::pow(t, 1.5) * bracket;
}

double n_fractal_scaling(const AsymptoticModel& model, double t) {
  check_model_common(model, t);
  check_segments(model);
  const double nd = model.dim - model.boundary_dim;
  const double dp = model.medium.d_plus;
  const double ell = 2.0 * std::sqrt(dp * t);
  const double mu_overlay = model.fractal_prefactor * std::pow(ell, nd);
  bool any_finite = false, any_perfect = false;
  for (const auto& seg : model.segments) {
    (std::isinf(seg.lambda) ? any_perfect : any_finite) = true;
  }
  if (any_finite && any_perfect) {
    throw std::invalid_argument(
        "n_fractal_scaling: mixed regimes are not supported by the overlay");
  }
  if (any_perfect) {
    const double dm = model.medium.d_minus;
    const double prefactor =
        2.0 * std::sqrt(dm) / (std::sqrt(dm) + std::sqrt(dp));
    return prefactor * beta_coefficient(nd) * mu_overlay;
  }
  // finite regime: leading form with the collar volume replaced
  AsymptoticModel overlay = model;
  overlay.mu.eval = [mu_overlay](double) { return mu_overlay; };
  overlay.mu.mode = MuMode::analytic;
  overlay.mu.description = "fractal overlay";
  return n_finite_lambda(overlay, t, FormKind::leading);
}

const char* formula_id_name(FormulaId id) {
  switch (id) {
    case FormulaId::equal_diffusion_full: return "equal-diffusion-full";
    case FormulaId::equal_diffusion_leading: return "equal-diffusion-leading";
    case FormulaId::finite_lambda_full: return "finite-lambda-full";
    case FormulaId::finite_lambda_leading: return "finite-lambda-leading";
    case FormulaId::infinite_lambda_full: return "infinite-lambda-full";
    case FormulaId::infinite_lambda_leading: return "infinite-lambda-leading";
    case FormulaId::regular_infinite: return "regular-infinite";
    case FormulaId::regular_finite: return "regular-finite";
    case FormulaId::fractal_scaling: return "fractal-scaling";
  }
  return "unknown";
}

std::vector<FormulaId> all_formula_ids() {
  return {FormulaId::equal_diffusion_full,
          FormulaId::equal_diffusion_leading,
          FormulaId::finite_lambda_full,
          FormulaId::finite_lambda_leading,
          FormulaId::infinite_lambda_full,
          FormulaId::infinite_lambda_leading,
          FormulaId::regular_infinite,
          FormulaId::regular_finite,
          FormulaId::fractal_scaling};
}

std::optional<FormulaId> formula_id_from_name(const std::string& name) {
  for (FormulaId id : all_formula_ids()) {
    if (name == formula_id_name(id)) return id;
  }
  return std::nullopt;
}

double evaluate_formula(const AsymptoticModel& model, FormulaId id, double t) {
  switch (id) {
    case FormulaId::equal_diffusion_full:
      return n_equal_diffusion(model, t, FormKind::full);
    case FormulaId::equal_diffusion_leading:
      return n_equal_diffusion(model, t, FormKind::leading);
    case FormulaId::finite_lambda_full:
      return n_mixed(model, t, FormKind::full);
    case FormulaId::finite_lambda_leading:
      return n_mixed(model, t, FormKind::leading);
    case FormulaId::infinite_lambda_full:
      return n_infinite_lambda(model, t, FormKind::full);
    case FormulaId::infinite_lambda_leading:
      return n_infinite_lambda(model, t, FormKind::leading);
    case FormulaId::regular_infinite:
      return n_regular_infinite(model, t);
    case FormulaId::regular_finite:
      return n_regular_finite(model, t);
    case FormulaId::fractal_scaling:
      return n_fractal_scaling(model, t);
  }
  throw std::invalid_argument("evaluate_formula: unknown formula id");
}

std::optional<std::string> validity_warning(const AsymptoticModel& model,
                                            double center_clearance,
                                            double t) {
  if (!(center_clearance > 0.0)) return std::nullopt;
  const double ell = std::sqrt(4.0 * model.medium.d_plus * t);
  if (ell > 0.25 * center_clearance) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "diffusion length %.3g exceeds a quarter of the interior "
                  "clearance %.3g; the short-time forms degrade here",
                  ell, center_clearance);
    return std::string(buf);
  }
  return std::nullopt;
}

}  // namespace heatlab
