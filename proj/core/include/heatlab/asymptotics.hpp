#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatlab/green.hpp"
#include "heatlab/sausage.hpp"

namespace heatlab {

// Piecewise-constant boundary data: weights are arc measures summing to the
// boundary measure; lambda may be infinity on perfect-contact pieces.
struct BoundarySegment {
  double weight = 0.0;
  double lambda = 0.0;
  double curvature = 0.0;
};

struct AsymptoticModel {
  TransmissionMedium medium;
  MuFunction mu;                 // inner collar volume of the domain
  double boundary_measure = 0.0;
  int dim = 2;                   // ambient dimension n
  double boundary_dim = 1.0;     // exponent d with mu(l) ~ l^(n-d) in window
  std::vector<BoundarySegment> segments;
  bool smooth = false;           // boundary is C^3
  bool assume_smooth = false;    // apply smooth-boundary forms anyway
  double fractal_prefactor = 1.0;  // c in the overlay mu(l) -> c l^(n-d)
};

enum class FormKind { full, leading };

// Boundary-layer weight e^(-z^2) erfcx(z + lambda alpha sqrt(t)); equals
// erfc(z) at lambda = 0 and vanishes as lambda -> infinity.
double f_sigma(double lambda, double alpha, double z, double t);

// Time constants of the smooth-boundary finite-conductance expansion
//   N(t) = 4 c0 t int lambda - (2/3) c1 t^(3/2) [...]
double c0();
double c1();

// Short-time heat content of the equal-diffusivity, perfect-contact family:
//   full:    int_0^2 (e^(-z^2)/sqrt(pi)) mu(2 sqrt(D t) z) dz
//   leading: beta_(n-d) mu(2 sqrt(D t))
double n_equal_diffusion(const AsymptoticModel& model, double t, FormKind kind);

// Different diffusivities, perfect contact everywhere.
double n_infinite_lambda(const AsymptoticModel& model, double t, FormKind kind);

// Finite conductance everywhere (rejects perfect-contact segments; zero
// conductance segments contribute nothing).
double n_finite_lambda(const AsymptoticModel& model, double t, FormKind kind);

// Mixture: finite and perfect segments add their contributions.
double n_mixed(const AsymptoticModel& model, double t, FormKind kind);

// Smooth-boundary (C^3) leading forms; throw unless the model is smooth or
// explicitly assumed smooth.
double n_regular_infinite(const AsymptoticModel& model, double t);
double n_regular_finite(const AsymptoticModel& model, double t);

// Leading form with the collar volume replaced by the scaling overlay
// c (4 D+ t)^((n-d)/2); the regime (finite/perfect) follows the segments.
double n_fractal_scaling(const AsymptoticModel& model, double t);

enum class FormulaId {
  equal_diffusion_full,
  equal_diffusion_leading,
  finite_lambda_full,
  finite_lambda_leading,
  infinite_lambda_full,
  infinite_lambda_leading,
  regular_infinite,
  regular_finite,
  fractal_scaling,
};

const char* formula_id_name(FormulaId id);
std::optional<FormulaId> formula_id_from_name(const std::string& name);
std::vector<FormulaId> all_formula_ids();

double evaluate_formula(const AsymptoticModel& model, FormulaId id, double t);

// The short-time window check: warn once sqrt(4 D+ t) exceeds a quarter of
// the domain's center clearance.
std::optional<std::string> validity_warning(const AsymptoticModel& model,
                                            double center_clearance, double t);

}  // namespace heatlab
