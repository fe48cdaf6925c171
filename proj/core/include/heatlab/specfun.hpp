#pragma once

#include <functional>
#include <vector>

namespace heatlab {

// Error function and complement (delegates to the standard library).
double erf(double x);
double erfc(double x);

// Scaled complement erfcx(x) = exp(x^2) * erfc(x).
// Accurate for the full double range; avoids underflow of erfc for large x
// and overflow of exp for moderate negative x (returns +inf below ~-26.6).
double erfcx(double x);

// Lower incomplete gamma function, gamma(a, x) = int_0^x s^(a-1) e^(-s) ds,
// for a > 0, x >= 0. Throws std::domain_error outside that domain.
double lower_incomplete_gamma(double a, double x);

// Regularized P(a, x) = gamma(a, x) / Gamma(a).
double regularized_gamma_p(double a, double x);

// beta_x = gamma((x+1)/2, 4) / (2 sqrt(pi)); the weight multiplying a
// sausage volume in the leading short-time heat-content forms.
double beta_coefficient(double x);

// Gauss-Legendre quadrature rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int npoints);

// Integrate f over [a, b] with a single application of the rule.
// Throws std::domain_error if the integrand evaluates to NaN.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule);

// Integrate over [a, b] split into `panels` equal panels.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, const QuadratureRule& rule, int panels);

}  // namespace heatlab
