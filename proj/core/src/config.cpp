#include "heatlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "heatlab/asymptotics.hpp"
#include "heatlab/csvio.hpp"

namespace heatlab {

namespace {

using nlohmann::json;

std::string kind_name(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::square: return "square";
    case GeometryKind::circle: return "circle";
    case GeometryKind::minkowski_island: return "minkowski-island";
  }
  throw std::logic_error("unreachable geometry kind");
}

GeometryKind kind_from_name(const std::string& name) {
  if (name == "square") return GeometryKind::square;
  if (name == "circle") return GeometryKind::circle;
  if (name == "minkowski-island") return GeometryKind::minkowski_island;
  throw std::invalid_argument(
      "config: unknown geometry kind '" + name +
      "' (expected square, circle, or minkowski-island)");
}

Coupling coupling_from_name(const std::string& name) {
  if (name == "monolithic") return Coupling::monolithic;
  if (name == "picard") return Coupling::picard;
  throw std::invalid_argument("config: unknown coupling '" + name +
                              "' (expected monolithic or picard)");
}

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw std::invalid_argument(std::string("config: unknown key '") +
                                  it.key() + "' in " + where);
    }
  }
}

double require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("config: ") + what +
                                " must be a positive finite number");
  }
  return value;
}

double parse_lambda(const json& value) {
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "infinite" || s == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument(
        "config: lambda must be a number >= 0 or the string \"infinite\"");
  }
  const double lambda = value.get<double>();
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("config: lambda must be >= 0");
  }
  return lambda;
}

void validate(const ExperimentConfig& cfg) {
  require_positive(cfg.side, "geometry.side");
  require_positive(cfg.radius, "geometry.radius");
  if (cfg.generation < 0 || cfg.generation > 6) {
    throw std::invalid_argument("config: geometry.generation must be in [0, 6]");
  }
  require_positive(cfg.medium.d_plus, "medium.d_plus");
  require_positive(cfg.medium.d_minus, "medium.d_minus");
  if (!(cfg.lambda >= 0.0)) {
    throw std::invalid_argument("config: lambda must be >= 0");
  }
  require_positive(cfg.h, "solver.h");
  require_positive(cfg.dt, "solver.dt");
  require_positive(cfg.t_end, "solver.t_end");
  require_positive(cfg.container_factor, "solver.container_factor");
  if (!(cfg.ramp >= 0.0)) {
    throw std::invalid_argument("config: solver.ramp must be >= 0");
  }
  double prev = 0.0;
  for (double t : cfg.sample_times) {
    if (!(t > prev)) {
      throw std::invalid_argument(
          "config: solver.sample_times must be positive and strictly "
          "ascending");
    }
    prev = t;
  }
  if (!cfg.sample_times.empty() &&
      cfg.sample_times.back() > cfg.t_end * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "config: solver.sample_times must not exceed solver.t_end");
  }
  for (const std::string& id : cfg.formulas) {
    if (!formula_id_from_name(id)) {
      std::string message = "config: unknown formula id '" + id + "'; available:";
      for (FormulaId f : all_formula_ids()) {
        message += std::string(" ") + formula_id_name(f);
      }
      throw std::invalid_argument(message);
    }
  }
  if (cfg.fractal_d != 0.0 &&
      (cfg.fractal_d < 1.0 || cfg.fractal_d >= 2.0)) {
    throw std::invalid_argument("config: fractal.d must lie in [1, 2)");
  }
  require_positive(cfg.fractal_c, "fractal.c");
  if (cfg.threads < 1 || cfg.threads > 64) {
    throw std::invalid_argument("config: threads must be in [1, 64]");
  }
}

}  // namespace

std::vector<double> log_spaced(double a, double b, int n) {
  if (!(a > 0.0) || !(b > a) || n < 2) {
    throw std::invalid_argument("log_spaced: need 0 < a < b and n >= 2");
  }
  std::vector<double> out(n);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) {
    out[i] = std::exp(la + (lb - la) * i / (n - 1));
  }
  out.front() = a;
  out.back() = b;
  return out;
}

std::vector<std::string> preset_names() {
  return {"square-equal-diffusion",     "square-infinite-lambda",
          "square-finite-lambda",       "prefractal-equal-diffusion",
          "prefractal-infinite-lambda", "prefractal-finite-lambda"};
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "square-equal-diffusion") {
    cfg.kind = GeometryKind::square;
    cfg.medium = {1.0, 1.0};
    cfg.lambda = std::numeric_limits<double>::infinity();
    cfg.formulas = {"equal-diffusion-full", "equal-diffusion-leading"};
    cfg.h = 1.0 / 256.0;
    cfg.dt = 1e-6;
    cfg.t_end = 1e-3;
    cfg.sample_times = log_spaced(1e-4, 1e-3, 9);
  } else if (name == "square-infinite-lambda") {
    cfg.kind = GeometryKind::square;
    cfg.medium = {0.4, 1.0};
    cfg.lambda = std::numeric_limits<double>::infinity();
    cfg.formulas = {"infinite-lambda-full", "infinite-lambda-leading",
                    "regular-infinite"};
    cfg.h = 1.0 / 256.0;
    cfg.dt = 1e-6;
    cfg.t_end = 1e-3;
    cfg.sample_times = log_spaced(1e-4, 1e-3, 9);
  } else if (name == "square-finite-lambda") {
    cfg.kind = GeometryKind::square;
    cfg.medium = {0.01, 1.0};
    cfg.lambda = 17.0;
    cfg.formulas = {"finite-lambda-full", "finite-lambda-leading",
                    "regular-finite"};
    cfg.h = 1.0 / 256.0;
    cfg.dt = 1e-6;
    cfg.t_end = 1e-2;
    cfg.sample_times = log_spaced(1e-4, 1e-2, 17);
  } else if (name == "prefractal-equal-diffusion") {
    cfg.kind = GeometryKind::minkowski_island;
    cfg.generation = 2;
    cfg.medium = {1.0, 1.0};
    cfg.lambda = std::numeric_limits<double>::infinity();
    cfg.formulas = {"equal-diffusion-leading", "fractal-scaling"};
    cfg.fractal_d = 1.5;
    cfg.fractal_c = 1.0;
    cfg.h = 1.0 / 512.0;
    cfg.dt = 1e-7;
    cfg.t_end = 1e-4;
    cfg.sample_times = log_spaced(1e-5, 1e-4, 9);
  } else if (name == "prefractal-infinite-lambda") {
    cfg.kind = GeometryKind::minkowski_island;
    cfg.generation = 3;
    cfg.medium = {0.4, 1.0};
    cfg.lambda = std::numeric_limits<double>::infinity();
    cfg.formulas = {"infinite-lambda-leading", "fractal-scaling"};
    cfg.fractal_d = 1.5;
    cfg.fractal_c = 2.5;
    cfg.h = 1.0 / 256.0;
    cfg.dt = 1e-6;
    cfg.t_end = 1e-3;
    cfg.sample_times = log_spaced(1e-4, 1e-3, 9);
  } else if (name == "prefractal-finite-lambda") {
    cfg.kind = GeometryKind::minkowski_island;
    cfg.generation = 3;
    cfg.medium = {0.01, 1.0};
    cfg.lambda = 17.0;
    cfg.formulas = {"finite-lambda-leading"};
    cfg.h = 1.0 / 256.0;
    cfg.dt = 1e-6;
    cfg.t_end = 1e-3;
    cfg.sample_times = log_spaced(1e-4, 1e-3, 9);
  } else {
    std::string message = "unknown preset '" + name + "'; available:";
    for (const std::string& p : preset_names()) message += " " + p;
    throw std::invalid_argument(message);
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                err.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config: top level must be a JSON object");
  }
  reject_unknown_keys(doc, "top level",
                      {"name", "preset", "geometry", "medium", "formulas",
                       "solver", "fractal", "seed", "threads"});

  ExperimentConfig cfg;
  if (doc.contains("preset")) {
    cfg = preset(doc.at("preset").get<std::string>());
  }
  if (doc.contains("name")) cfg.name = doc.at("name").get<std::string>();

  if (doc.contains("geometry")) {
    const json& g = doc.at("geometry");
    reject_unknown_keys(g, "geometry",
                        {"kind", "side", "radius", "generation"});
    if (g.contains("kind")) {
      cfg.kind = kind_from_name(g.at("kind").get<std::string>());
    }
    if (g.contains("side")) cfg.side = g.at("side").get<double>();
    if (g.contains("radius")) cfg.radius = g.at("radius").get<double>();
    if (g.contains("generation")) {
      cfg.generation = g.at("generation").get<int>();
    }
  }
  if (doc.contains("medium")) {
    const json& m = doc.at("medium");
    reject_unknown_keys(m, "medium", {"d_plus", "d_minus", "lambda"});
    if (m.contains("d_plus")) cfg.medium.d_plus = m.at("d_plus").get<double>();
    if (m.contains("d_minus")) {
      cfg.medium.d_minus = m.at("d_minus").get<double>();
    }
    if (m.contains("lambda")) cfg.lambda = parse_lambda(m.at("lambda"));
  }
  if (doc.contains("formulas")) {
    cfg.formulas = doc.at("formulas").get<std::vector<std::string>>();
  }
  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    reject_unknown_keys(s, "solver",
                        {"h", "dt", "t_end", "container_factor", "ramp",
                         "sample_times", "coupling"});
    if (s.contains("h")) cfg.h = s.at("h").get<double>();
    if (s.contains("dt")) cfg.dt = s.at("dt").get<double>();
    if (s.contains("t_end")) cfg.t_end = s.at("t_end").get<double>();
    if (s.contains("container_factor")) {
      cfg.container_factor = s.at("container_factor").get<double>();
    }
    if (s.contains("ramp")) cfg.ramp = s.at("ramp").get<double>();
    if (s.contains("sample_times")) {
      cfg.sample_times = s.at("sample_times").get<std::vector<double>>();
    }
    if (s.contains("coupling")) {
      cfg.coupling = coupling_from_name(s.at("coupling").get<std::string>());
    }
  }
  if (doc.contains("fractal")) {
    const json& f = doc.at("fractal");
    reject_unknown_keys(f, "fractal", {"d", "c"});
    if (f.contains("d")) cfg.fractal_d = f.at("d").get<double>();
    if (f.contains("c")) cfg.fractal_c = f.at("c").get<double>();
  }
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["geometry"] = {{"kind", kind_name(cfg.kind)},
                     {"side", cfg.side},
                     {"radius", cfg.radius},
                     {"generation", cfg.generation}};
  json lambda;
  if (std::isinf(cfg.lambda)) {
    lambda = "infinite";
  } else {
    lambda = cfg.lambda;
  }
  doc["medium"] = {{"d_plus", cfg.medium.d_plus},
                   {"d_minus", cfg.medium.d_minus},
                   {"lambda", lambda}};
  doc["formulas"] = cfg.formulas;
  doc["solver"] = {{"h", cfg.h},
                   {"dt", cfg.dt},
                   {"t_end", cfg.t_end},
                   {"container_factor", cfg.container_factor},
                   {"ramp", cfg.ramp},
                   {"sample_times", cfg.sample_times},
                   {"coupling", coupling_name(cfg.coupling)}};
  doc["fractal"] = {{"d", cfg.fractal_d}, {"c", cfg.fractal_c}};
  doc["seed"] = cfg.seed;
  // threads is an execution resource, not part of the experiment identity
  return doc.dump();  // object keys are emitted in sorted order
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return fnv1a_64(canonical_json(cfg));
}

DomainGeometry make_geometry(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case GeometryKind::square: return make_square(cfg.side);
    case GeometryKind::circle: return make_circle(cfg.radius);
    case GeometryKind::minkowski_island:
      return make_minkowski_prefractal(cfg.generation, cfg.side);
  }
  throw std::logic_error("unreachable geometry kind");
}

}  // namespace heatlab
