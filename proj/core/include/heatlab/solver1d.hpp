#pragma once

#include <limits>
#include <vector>

#include "heatlab/green.hpp"

namespace heatlab {

enum class Coupling { monolithic, picard };

const char* coupling_name(Coupling c);

struct SolveSample {
  double t = 0.0;
  double heat_content = 0.0;
  double mass = 0.0;
  int picard_iters = 0;
};

// Crank-Nicolson finite-volume solve of the two-sided transmission problem
// on a line segment around the interface at s = 0: hot side (u = 1) at
// s > 0 with d_plus, cold side at s < 0 with d_minus, zero-flux outer walls.
// The interface enters through the face conductance
//   g = 1 / (h/(2 D+) + h/(2 D-) + 1/lambda),
// which degenerates to the harmonic mean for perfect contact and to an
// insulating wall for lambda = 0.
struct Solve1dConfig {
  TransmissionMedium medium;
  double lambda = std::numeric_limits<double>::infinity();
  double h = 1e-3;
  double dt = 1e-5;
  double t_end = 1e-2;
  double theta = 0.5;         // implicitness; 0.5 = Crank-Nicolson
  double margin = 8.0;        // half-length in units of sqrt(4 D t_end)
  double half_length = 0.0;   // explicit half-length (0 = from margin)
  Coupling coupling = Coupling::monolithic;
  double picard_tol = 1e-8;
  int picard_max = 50;
  double picard_relax = 0.7;
  std::vector<double> sample_times;  // always sampled at t_end too
};

struct Solve1dResult {
  std::vector<double> s;  // cell centers, cold side first
  std::vector<double> u;  // final field
  int n_minus = 0, n_plus = 0;
  double h = 0.0;
  double t_final = 0.0;
  std::vector<SolveSample> samples;
};

Solve1dResult solve_1d(const Solve1dConfig& config);

}  // namespace heatlab
