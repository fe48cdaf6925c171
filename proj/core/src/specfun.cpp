#include "heatlab/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace heatlab {

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Continued fraction for erfcx(x), x large:
//   erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
double erfcx_continued_fraction(double x) {
  const double tiny = 1e-300;
  double f = x;
  if (f == 0.0) f = tiny;
  double c = f, d = 0.0;
  for (int n = 1; n <= 200; ++n) {
    const double an = 0.5 * n;
    d = x + an * d;
    if (d == 0.0) d = tiny;
    c = x + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 / (kSqrtPi * f);
}

}  // namespace

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x >= 0.0) {
    // Below the crossover the direct product is accurate; erfc is correctly
    // rounded and exp(x^2) loses only O(x^2) ulps.
    if (x <= 4.0) return std::exp(x * x) * std::erfc(x);
    return erfcx_continued_fraction(x);
  }
  // Reflection: erfcx(-x) = 2 exp(x^2) - erfcx(x). Overflows to +inf for
  // x < -26.64, which is the correct limiting behaviour.
  const double e = std::exp(x * x);
  if (std::isinf(e)) return e;
  return 2.0 * e - erfcx(-x);
}

namespace {

// Series for the lower function, valid (fast) for x < a + 1:
//   gamma(a,x) = x^a e^-x * sum_{n>=0} x^n / (a (a+1) ... (a+n))
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n <= 600; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return std::exp(a * std::log(x) - x) * sum;
}

// Modified Lentz continued fraction for the upper function, x >= a + 1:
//   Gamma(a,x) = x^a e^-x / (x + 1 - a - 1(1-a)/(x + 3 - a - 2(2-a)/(...)))
double upper_gamma_continued_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double f = d;
  for (int n = 1; n <= 600; ++n) {
    const double an = -n * (n - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(a * std::log(x) - x) * f;
}

}  // namespace

double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0) || std::isnan(x)) {
    throw std::domain_error("lower_incomplete_gamma: need a > 0, x >= 0");
  }
  if (x < 0.0) {
    throw std::domain_error("lower_incomplete_gamma: need x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return std::tgamma(a) - upper_gamma_continued_fraction(a, x);
}

double regularized_gamma_p(double a, double x) {
  return lower_incomplete_gamma(a, x) / std::tgamma(a);
}

double beta_coefficient(double x) {
  return lower_incomplete_gamma(0.5 * (x + 1.0), 4.0) / (2.0 * kSqrtPi);
}

QuadratureRule gauss_legendre(int npoints) {
  if (npoints < 1) {
    throw std::domain_error("gauss_legendre: need at least one point");
  }
  QuadratureRule rule;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  const int m = (npoints + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(M_PI * (i + 0.75) / (npoints + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npoints; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
      }
      pp = npoints * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[npoints - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[npoints - 1 - i] = w;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = mid + half * rule.nodes[i];
    const double v = f(x);
    if (std::isnan(v)) {
      throw std::domain_error("integrate: integrand returned NaN at x = " +
                              std::to_string(x));
    }
    sum += rule.weights[i] * v;
  }
  return half * sum;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, const QuadratureRule& rule, int panels) {
  if (panels < 1) throw std::domain_error("integrate_panels: need panels >= 1");
  double sum = 0.0;
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    sum += integrate(f, a + p * w, a + (p + 1) * w, rule);
  }
  return sum;
}

}  // namespace heatlab
