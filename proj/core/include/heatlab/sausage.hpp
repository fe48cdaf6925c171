#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heatlab/geometry.hpp"

namespace heatlab {

// mu(width) is the area of the inner collar {x in Omega : dist(x, boundary)
// < width}; it saturates at the domain area once the collar swallows the
// whole interior.

enum class MuMode { analytic, grid, monte_carlo };

const char* mu_mode_name(MuMode m);

struct MuEstimate {
  double width = 0.0;
  double value = 0.0;
  MuMode mode = MuMode::analytic;
  double est_error = 0.0;  // 0 analytic; grid-halving delta; 1-sigma for MC
};

// Closed forms: square 4*a*w - 4*w^2 (w <= a/2), circle 2*pi*R*w - pi*w^2
// (w <= R), both saturating at the full area. Throws for the prefractal.
double mu_analytic(const DomainGeometry& g, double width);
bool has_analytic_mu(const DomainGeometry& g);

struct MuGridOptions {
  int resolution = 2048;  // cells across the longer bounding-box side
  int subsample = 16;     // per-axis refinement near the two contours
  int threads = 1;
  bool richardson = true;  // re-run at half resolution for est_error
};

// One shared grid pass evaluates every width; widths need not be sorted.
std::vector<MuEstimate> mu_grid(const DomainGeometry& g,
                                const std::vector<double>& widths,
                                const MuGridOptions& opt = {});

struct MuMonteCarloOptions {
  std::int64_t samples = 10000000;
  std::uint64_t seed = 20260814;
  int threads = 1;
};

MuEstimate mu_monte_carlo(const DomainGeometry& g, double width,
                          const MuMonteCarloOptions& opt = {});

// Least-squares slope of log(mu) against log(width).
double mu_scaling_exponent(const std::vector<double>& widths,
                           const std::vector<double>& mus);

// Width window where the prefractal collar scales with the limit-set
// exponent: [side/4^generation, side/4].
struct WidthWindow {
  double lo = 0.0;
  double hi = 0.0;
};
WidthWindow prefractal_scaling_window(const DomainGeometry& g);

// A reusable width -> mu callable for the asymptotic formulas. Analytic
// shapes evaluate exactly; the grid mode tabulates log-spaced widths over
// [width_lo, width_hi] once and interpolates log-log linearly (log-log
// extrapolation below the table, saturation value above it).
struct MuFunction {
  std::function<double(double)> eval;
  MuMode mode = MuMode::analytic;
  std::string description;
};

MuFunction make_mu_function(const DomainGeometry& g, MuMode mode,
                            double width_lo = 1e-4, double width_hi = 1.0,
                            int table_points = 96,
                            const MuGridOptions& opt = {});

}  // namespace heatlab
