#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "heatlab/geometry.hpp"
#include "heatlab/green.hpp"
#include "heatlab/solver1d.hpp"

namespace heatlab {

// One fully-specified experiment: a domain, a transmission medium, the
// closed-form expressions to evaluate, and the reference-solver settings.
struct ExperimentConfig {
  std::string name = "custom";

  // geometry
  GeometryKind kind = GeometryKind::square;
  double side = 1.0;
  double radius = 0.5;
  int generation = 0;

  // medium
  TransmissionMedium medium{1.0, 1.0};
  double lambda = std::numeric_limits<double>::infinity();

  // closed-form expression ids to evaluate (see formula_id_name)
  std::vector<std::string> formulas;

  // reference solver
  double h = 1.0 / 256.0;
  double dt = 1e-6;
  double t_end = 1e-3;
  double container_factor = 4.0;
  double ramp = 50.0;
  std::vector<double> sample_times;
  Coupling coupling = Coupling::picard;

  // power-law overlay for boundary-layer volume, value * width^(n - d)
  double fractal_d = 0.0;  // 0 means: use the exact layer volume, no overlay
  double fractal_c = 1.0;

  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  int threads = 1;
};

// Log-spaced grid from a to b inclusive (n >= 2).
std::vector<double> log_spaced(double a, double b, int n);

// Built-in experiment presets; preset() throws std::invalid_argument for an
// unknown name and its message lists the valid ones.
std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

// Parse / validate a JSON config document.  Unknown keys are rejected so
// typos fail loudly.  "lambda" accepts a number or the string "infinite".
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical (sorted-key, fixed-format) JSON rendering; hash of that text.
std::string canonical_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

// Instantiate the domain described by the geometry section.
DomainGeometry make_geometry(const ExperimentConfig& config);

}  // namespace heatlab
