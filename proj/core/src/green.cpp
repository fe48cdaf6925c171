#include "heatlab/green.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "heatlab/specfun.hpp"

namespace heatlab {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void check_medium(const TransmissionMedium& m) {
  if (!(m.d_plus > 0.0) || !(m.d_minus > 0.0)) {
    throw std::domain_error("transmission medium: diffusivities must be > 0");
  }
}

void check_time(double t) {
  if (!(t > 0.0)) {
    throw std::domain_error(
        "transmission kernel: time must be positive (anything above "
        "1e-300 is representable)");
  }
  if (!std::isfinite(t)) {
    throw std::domain_error("transmission kernel: time must be finite");
  }
}

void check_lambda_finite(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error(
        "transmission kernel: lambda must be finite and >= 0");
  }
}

void check_source(double s1) {
  if (!(s1 >= 0.0)) {
    throw std::domain_error("transmission kernel: source must lie at s1 >= 0");
  }
}

// Raw branch formulas without argument-sign validation (the drift kernels
// evaluate them at shifted coordinates).
double gamma_pp_raw(const TransmissionMedium& m, double s, double s1,
                    double t) {
  const double dp = m.d_plus;
  const double a = reflection_amplitude(m);
  const double den = std::sqrt(4.0 * M_PI * dp * t);
  const double q = 4.0 * dp * t;
  return (std::exp(-(s - s1) * (s - s1) / q) +
          a * std::exp(-(s + s1) * (s + s1) / q)) /
         den;
}

double gamma_mp_raw(const TransmissionMedium& m, double s, double s1,
                    double t) {
  const double dp = m.d_plus, dm = m.d_minus;
  const double b = transmission_amplitude(m);
  const double arg = s - s1 * std::sqrt(dm / dp);
  return b / std::sqrt(M_PI * dp * t) *
         std::exp(-arg * arg / (4.0 * dm * t));
}

double g_pp_raw(const TransmissionMedium& m, double lambda, double s,
                double s1, double t) {
  const double dp = m.d_plus;
  const double den = std::sqrt(4.0 * M_PI * dp * t);
  const double q = 4.0 * dp * t;
  const double images = (std::exp(-(s - s1) * (s - s1) / q) +
                         std::exp(-(s + s1) * (s + s1) / q)) /
                        den;
  if (lambda == 0.0) return images;
  const double xi = (s + s1) / (2.0 * std::sqrt(dp * t));
  const double c = lambda * coupling_alpha(m) * std::sqrt(t);
  return images - (lambda / dp) * std::exp(-xi * xi) * erfcx(xi + c);
}

double g_mp_raw(const TransmissionMedium& m, double lambda, double s,
                double s1, double t) {
  if (lambda == 0.0) return 0.0;
  const double dp = m.d_plus, dm = m.d_minus;
  const double eta = (-s + s1 * std::sqrt(dm / dp)) / (2.0 * std::sqrt(dm * t));
  const double c = lambda * coupling_alpha(m) * std::sqrt(t);
  return lambda / std::sqrt(dm * dp) * std::exp(-eta * eta) * erfcx(eta + c);
}

}  // namespace

double coupling_alpha(const TransmissionMedium& m) {
  check_medium(m);
  return 1.0 / std::sqrt(m.d_minus) + 1.0 / std::sqrt(m.d_plus);
}

double reflection_amplitude(const TransmissionMedium& m) {
  check_medium(m);
  const double sp = std::sqrt(m.d_plus), sm = std::sqrt(m.d_minus);
  return (sp - sm) / (sp + sm);
}

double transmission_amplitude(const TransmissionMedium& m) {
  check_medium(m);
  const double sp = std::sqrt(m.d_plus), sm = std::sqrt(m.d_minus);
  return sp / (sp + sm);
}

double gamma_pp(const TransmissionMedium& m, double s, double s1, double t) {
  check_medium(m);
  check_time(t);
  check_source(s1);
  if (!(s >= 0.0)) {
    throw std::domain_error("gamma_pp: evaluation point must lie at s >= 0");
  }
  return gamma_pp_raw(m, s, s1, t);
}

double gamma_mp(const TransmissionMedium& m, double s, double s1, double t) {
  check_medium(m);
  check_time(t);
  check_source(s1);
  if (!(s <= 0.0)) {
    throw std::domain_error("gamma_mp: evaluation point must lie at s <= 0");
  }
  return gamma_mp_raw(m, s, s1, t);
}

double g_pp(const TransmissionMedium& m, double lambda, double s, double s1,
            double t) {
  check_medium(m);
  check_time(t);
  check_lambda_finite(lambda);
  check_source(s1);
  if (!(s >= 0.0)) {
    throw std::domain_error("g_pp: evaluation point must lie at s >= 0");
  }
  return g_pp_raw(m, lambda, s, s1, t);
}

double g_mp(const TransmissionMedium& m, double lambda, double s, double s1,
            double t) {
  check_medium(m);
  check_time(t);
  check_lambda_finite(lambda);
  check_source(s1);
  if (!(s <= 0.0)) {
    throw std::domain_error("g_mp: evaluation point must lie at s <= 0");
  }
  return g_mp_raw(m, lambda, s, s1, t);
}

double gamma_reg_pp(const TransmissionMedium& m, double k, double s, double s1,
                    double t) {
  check_medium(m);
  check_time(t);
  check_source(s1);
  if (!(s >= 0.0)) {
    throw std::domain_error("gamma_reg_pp: evaluation point must lie at s >= 0");
  }
  if (!std::isfinite(k)) {
    throw std::domain_error("gamma_reg_pp: drift must be finite");
  }
  return gamma_pp_raw(m, s - t * m.d_plus * k, s1, t);
}

double gamma_reg_mp(const TransmissionMedium& m, double k, double s, double s1,
                    double t) {
  check_medium(m);
  check_time(t);
  check_source(s1);
  if (!(s <= 0.0)) {
    throw std::domain_error("gamma_reg_mp: evaluation point must lie at s <= 0");
  }
  if (!std::isfinite(k)) {
    throw std::domain_error("gamma_reg_mp: drift must be finite");
  }
  return gamma_mp_raw(m, s - t * m.d_minus * k, s1, t);
}

double h_plus(const TransmissionMedium& m, ContactRegime regime, double lambda,
              double s1, double s2, double t, double drift) {
  check_medium(m);
  check_time(t);
  if (!(s1 >= 0.0) || !(s2 >= 0.0)) {
    throw std::domain_error("h_plus: both points must lie at s >= 0");
  }
  if (regime == ContactRegime::finite && !(lambda > 0.0)) {
    throw std::domain_error(
        "h_plus: finite regime needs lambda > 0 (zero conductance is not a "
        "boundary layer)");
  }
  const double dp = m.d_plus;
  const double a =
      regime == ContactRegime::finite ? 1.0 : reflection_amplitude(m);
  const double shift = t * dp * drift;
  const double den = std::sqrt(4.0 * M_PI * dp * t);
  const double q = 4.0 * dp * t;
  const double d1 = s1 - s2 - shift;
  const double d2 = s1 + s2 - shift;
  return (std::exp(-d1 * d1 / q) + a * std::exp(-d2 * d2 / q)) / den;
}

double f_plus(const TransmissionMedium& m, ContactRegime regime, double lambda,
              double s1, double s2, double t, double drift) {
  check_medium(m);
  check_time(t);
  if (!(s1 >= 0.0) || !(s2 >= 0.0)) {
    throw std::domain_error("f_plus: both points must lie at s >= 0");
  }
  if (regime == ContactRegime::perfect) return 0.0;
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error(
        "f_plus: finite regime needs a positive finite lambda");
  }
  const double dp = m.d_plus;
  const double zeta =
      (s1 + s2 - t * dp * drift) / (2.0 * std::sqrt(dp * t));
  const double c = lambda * coupling_alpha(m) * std::sqrt(t);
  return (lambda / dp) * std::exp(-zeta * zeta) * erfcx(zeta + c);
}

double kernel_nd(const TransmissionMedium& m, ContactRegime regime,
                 double lambda, int n, double s, double s1,
                 double tangential_sq, double t) {
  check_medium(m);
  check_time(t);
  check_source(s1);
  if (n < 1) throw std::domain_error("kernel_nd: need dimension n >= 1");
  if (!(tangential_sq >= 0.0)) {
    throw std::domain_error("kernel_nd: tangential_sq must be >= 0");
  }
  if (n == 1 && tangential_sq != 0.0) {
    throw std::domain_error("kernel_nd: no tangential offset in one dimension");
  }
  double longitudinal;
  if (s >= 0.0) {
    longitudinal = regime == ContactRegime::perfect
                       ? gamma_pp_raw(m, s, s1, t)
                       : (check_lambda_finite(lambda),
                          g_pp_raw(m, lambda, s, s1, t));
  } else {
    longitudinal = regime == ContactRegime::perfect
                       ? gamma_mp_raw(m, s, s1, t)
                       : (check_lambda_finite(lambda),
                          g_mp_raw(m, lambda, s, s1, t));
  }
  if (n == 1) return longitudinal;
  const double d_side = s >= 0.0 ? m.d_plus : m.d_minus;
  const double spread = 4.0 * M_PI * d_side * t;
  const double tangential = std::exp(-tangential_sq / (4.0 * d_side * t)) /
                            std::pow(spread, 0.5 * (n - 1));
  return longitudinal * tangential;
}

namespace {

// (1 - erfcx(c)) / (2c), stable at small c.
double one_minus_erfcx_over_2c(double c) {
  if (c < 1e-3) {
    // erfcx(c) = 1 - 2c/sqrt(pi) + c^2 - 4c^3/(3 sqrt(pi)) + ...
    return 1.0 / kSqrtPi - 0.5 * c + (2.0 / (3.0 * kSqrtPi)) * c * c -
           0.25 * c * c * c;
  }
  return (1.0 - erfcx(c)) / (2.0 * c);
}

}  // namespace

double u_plus_exact(const TransmissionMedium& m, double lambda, double s,
                    double t) {
  check_medium(m);
  check_time(t);
  if (!(s >= 0.0)) throw std::domain_error("u_plus_exact: need s >= 0");
  if (!(lambda >= 0.0)) throw std::domain_error("u_plus_exact: need lambda >= 0");
  const double alpha = coupling_alpha(m);
  const double xi = s / std::sqrt(4.0 * m.d_plus * t);
  if (std::isinf(lambda)) {
    return 1.0 - erfc(xi) / (alpha * std::sqrt(m.d_plus));
  }
  const double c = lambda * alpha * std::sqrt(t);
  return 1.0 -
         (erfc(xi) - std::exp(-xi * xi) * erfcx(xi + c)) /
             (alpha * std::sqrt(m.d_plus));
}

double u_minus_exact(const TransmissionMedium& m, double lambda, double s,
                     double t) {
  check_medium(m);
  check_time(t);
  if (!(s <= 0.0)) throw std::domain_error("u_minus_exact: need s <= 0");
  if (!(lambda >= 0.0)) throw std::domain_error("u_minus_exact: need lambda >= 0");
  const double alpha = coupling_alpha(m);
  const double eta = -s / std::sqrt(4.0 * m.d_minus * t);
  if (std::isinf(lambda)) {
    return erfc(eta) / (alpha * std::sqrt(m.d_minus));
  }
  const double c = lambda * alpha * std::sqrt(t);
  return (erfc(eta) - std::exp(-eta * eta) * erfcx(eta + c)) /
         (alpha * std::sqrt(m.d_minus));
}

double heat_content_1d_exact(const TransmissionMedium& m, double lambda,
                             double t) {
  check_medium(m);
  check_time(t);
  if (!(lambda >= 0.0)) {
    throw std::domain_error("heat_content_1d_exact: need lambda >= 0");
  }
  const double alpha = coupling_alpha(m);
  if (std::isinf(lambda)) {
    return 2.0 * std::sqrt(t) / (alpha * kSqrtPi);
  }
  const double c = lambda * alpha * std::sqrt(t);
  return 2.0 * std::sqrt(t) / alpha *
         (1.0 / kSqrtPi - one_minus_erfcx_over_2c(c));
}

}  // namespace heatlab
