// Command-line laboratory for transmission heat content: domain geometry,
// inner-collar volumes, closed-form short-time expansions, and the
// finite-volume reference solver, with cross comparisons.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heatlab/asymptotics.hpp"
#include "heatlab/config.hpp"
#include "heatlab/csvio.hpp"
#include "heatlab/edge_index.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/sausage.hpp"
#include "heatlab/solver1d.hpp"
#include "heatlab/solver2d.hpp"
#include "heatlab/specfun.hpp"

namespace {

using namespace heatlab;

constexpr int kExitCheckFailure = 2;
constexpr int kExitNumericalFailure = 3;

struct CommonOpts {
  std::string preset_name = "square-equal-diffusion";
  std::string config_path;
  std::string out_path;
  int threads = 0;              // 0: keep config value
  std::uint64_t seed = 0;       // only applied when seed_set
  bool seed_set = false;
};

void add_common(CLI::App* sub, CommonOpts& opts, bool with_out = true) {
  sub->add_option("--preset", opts.preset_name,
                  "experiment preset (see `heatlab presets`)");
  sub->add_option("--config", opts.config_path,
                  "JSON config file; overrides --preset");
  if (with_out) {
    sub->add_option("--out", opts.out_path, "write a CSV to this path");
  }
  sub->add_option("--threads", opts.threads, "worker threads (overrides config)");
  auto* s = sub->add_option("--seed", opts.seed, "RNG seed (overrides config)");
  s->each([&opts](const std::string&) { opts.seed_set = true; });
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
  ExperimentConfig cfg = opts.config_path.empty()
                             ? preset(opts.preset_name)
                             : load_config_file(opts.config_path);
  if (opts.threads > 0) cfg.threads = opts.threads;
  if (opts.seed_set) cfg.seed = opts.seed;
  return cfg;
}

std::vector<std::string> standard_comments(const ExperimentConfig& cfg) {
  return {"experiment " + cfg.name, "config_hash " + hash_hex(config_hash(cfg))};
}

MuMode parse_mu_mode(const std::string& name) {
  if (name == "analytic") return MuMode::analytic;
  if (name == "grid") return MuMode::grid;
  if (name == "monte-carlo") return MuMode::monte_carlo;
  throw std::invalid_argument("unknown mu mode '" + name +
                              "' (expected analytic, grid, or monte-carlo)");
}

MuMode default_mu_mode(const DomainGeometry& geom) {
  return has_analytic_mu(geom) ? MuMode::analytic : MuMode::grid;
}

AsymptoticModel make_model(const ExperimentConfig& cfg,
                           const DomainGeometry& geom, MuMode mode,
                           int resolution) {
  AsymptoticModel model;
  model.medium = cfg.medium;
  MuGridOptions grid_opts;
  grid_opts.resolution = resolution;
  grid_opts.threads = cfg.threads;
  grid_opts.richardson = false;
  model.mu = make_mu_function(geom, mode, 1e-4, 1.0, 96, grid_opts);
  model.boundary_measure = geom.perimeter;
  model.dim = 2;
  if (cfg.fractal_d != 0.0) {
    model.boundary_dim = cfg.fractal_d;
  } else if (geom.kind == GeometryKind::minkowski_island &&
             geom.generation > 0) {
    model.boundary_dim = geom.hausdorff_dim_limit;
  } else {
    model.boundary_dim = 1.0;
  }
  model.fractal_prefactor = cfg.fractal_c;
  model.segments = {{geom.perimeter, cfg.lambda, geom.mean_curvature}};
  model.smooth = geom.smooth;
  // Straight-edge polygons use the curvature-zero smooth forms; corner
  // corrections are outside the expansion order kept here.
  model.assume_smooth = geom.kind == GeometryKind::square;
  return model;
}

void emit(const CsvTable& table, const std::string& path) {
  if (path.empty()) {
    write_csv(std::cout, table);
  } else {
    write_csv_file(path, table);
    std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
  }
}

// ---------------------------------------------------------------- constants

int cmd_constants(const CommonOpts& opts) {
  CsvTable table;
  table.comments = {"short-time expansion constants"};
  table.columns = {"name", "value"};
  const std::pair<const char*, double> rows[] = {
      {"c0", c0()},
      {"c1", c1()},
      {"beta_0", beta_coefficient(0.0)},
      {"beta_half", beta_coefficient(0.5)},
      {"beta_1", beta_coefficient(1.0)},
  };
  for (const auto& [name, value] : rows) {
    table.rows.push_back({name, format_double(value)});
  }
  emit(table, opts.out_path);
  return 0;
}

// ----------------------------------------------------------------- geometry

int cmd_geometry(const CommonOpts& opts, bool check) {
  const ExperimentConfig cfg = resolve_config(opts);
  const DomainGeometry geom = make_geometry(cfg);
  std::printf("kind=%s\n", geom.kind == GeometryKind::square ? "square"
                           : geom.kind == GeometryKind::circle
                               ? "circle"
                               : "minkowski-island");
  std::printf("generation=%d\n", geom.generation);
  std::printf("perimeter=%s\n", format_double(geom.perimeter).c_str());
  std::printf("area=%s\n", format_double(geom.area).c_str());
  std::printf("boundary_dim_limit=%s\n",
              format_double(geom.hausdorff_dim_limit).c_str());
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + opts.out_path);
    out << boundary_csv(geom);
    std::cout << "wrote " << opts.out_path << "\n";
  }
  if (check) {
    bool ok = true;
    if (!boundary_is_simple(geom)) {
      std::fprintf(stderr, "check failed: boundary is not simple\n");
      ok = false;
    }
    if (geom.kind != GeometryKind::circle) {
      const double shoelace = polygon_area(geom.loops);
      if (std::fabs(shoelace - geom.area) > 1e-12 * geom.area) {
        std::fprintf(stderr, "check failed: area %.17g vs loops %.17g\n",
                     geom.area, shoelace);
        ok = false;
      }
    }
    if (!ok) return kExitCheckFailure;
    std::printf("geometry checks passed\n");
  }
  return 0;
}

// ------------------------------------------------------------------ sausage

struct SausageOpts {
  std::vector<double> widths;
  double wmin = 0.0, wmax = 0.0;
  int count = 25;
  std::string mode;
  int resolution = 2048;
  int subsample = 16;
  std::int64_t samples = 10000000;
  bool check = false;
};

int cmd_sausage(const CommonOpts& opts, const SausageOpts& so) {
  const ExperimentConfig cfg = resolve_config(opts);
  const DomainGeometry geom = make_geometry(cfg);
  std::vector<double> widths = so.widths;
  if (widths.empty()) {
    const double lo = so.wmin > 0.0 ? so.wmin : geom.side / 1000.0;
    const double hi = so.wmax > 0.0 ? so.wmax : geom.side;
    widths = log_spaced(lo, hi, so.count);
  }
  std::sort(widths.begin(), widths.end());
  const MuMode mode =
      so.mode.empty() ? default_mu_mode(geom) : parse_mu_mode(so.mode);

  std::vector<MuEstimate> estimates;
  if (mode == MuMode::analytic) {
    for (double w : widths) {
      estimates.push_back({w, mu_analytic(geom, w), MuMode::analytic, 0.0});
    }
  } else if (mode == MuMode::grid) {
    MuGridOptions gopt;
    gopt.resolution = so.resolution;
    gopt.subsample = so.subsample;
    gopt.threads = cfg.threads;
    estimates = mu_grid(geom, widths, gopt);
  } else {
    MuMonteCarloOptions mopt;
    mopt.samples = so.samples;
    mopt.seed = cfg.seed;
    mopt.threads = cfg.threads;
    for (double w : widths) {
      estimates.push_back(mu_monte_carlo(geom, w, mopt));
    }
  }

  CsvTable table;
  table.comments = standard_comments(cfg);
  table.columns = {"width", "mu", "mode", "est_error"};
  for (const MuEstimate& e : estimates) {
    table.rows.push_back({format_double(e.width), format_double(e.value),
                          mu_mode_name(e.mode), format_double(e.est_error)});
  }
  emit(table, opts.out_path);

  if (geom.kind == GeometryKind::minkowski_island && geom.generation > 0) {
    const WidthWindow window = prefractal_scaling_window(geom);
    std::vector<double> ws, ms;
    for (const MuEstimate& e : estimates) {
      if (e.width >= window.lo && e.width <= window.hi && e.value > 0.0) {
        ws.push_back(e.width);
        ms.push_back(e.value);
      }
    }
    if (ws.size() >= 3) {
      std::printf("scaling_window=[%s,%s]\n", format_double(window.lo).c_str(),
                  format_double(window.hi).c_str());
      std::printf("scaling_exponent=%s\n",
                  format_double(mu_scaling_exponent(ws, ms)).c_str());
    }
  }

  if (so.check) {
    if (!has_analytic_mu(geom)) {
      std::fprintf(stderr,
                   "check failed: no closed form available for this shape\n");
      return kExitCheckFailure;
    }
    // The grid estimate quantizes both collar contours on the subcell
    // lattice; near-aligned edges make that a systematic error of order
    // one lattice spacing per unit boundary length.
    const BBox box = bounding_box(geom);
    const double extent = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
    const double quant = extent / (static_cast<double>(so.resolution) *
                                   static_cast<double>(so.subsample));
    double worst = 0.0;
    for (const MuEstimate& e : estimates) {
      const double exact = mu_analytic(geom, e.width);
      const double tol = mode == MuMode::monte_carlo
                             ? std::max(4.0 * e.est_error, 1e-12)
                             : std::max(2e-3 * exact, 2.0 * quant * geom.perimeter);
      const double dev = std::fabs(e.value - exact);
      worst = std::max(worst, exact > 0.0 ? dev / exact : dev);
      if (dev > tol) {
        std::fprintf(stderr,
                     "check failed: width %.6g: value %.17g vs exact %.17g\n",
                     e.width, e.value, exact);
        return kExitCheckFailure;
      }
    }
    std::printf("collar checks passed (worst relative deviation %s)\n",
                format_double(worst).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------- asymptote

int cmd_asymptote(const CommonOpts& opts, const std::string& mu_mode,
                  int resolution) {
  const ExperimentConfig cfg = resolve_config(opts);
  if (cfg.formulas.empty()) {
    throw std::invalid_argument("no formulas listed in the configuration");
  }
  const DomainGeometry geom = make_geometry(cfg);
  const MuMode mode =
      mu_mode.empty() ? default_mu_mode(geom) : parse_mu_mode(mu_mode);
  const AsymptoticModel model = make_model(cfg, geom, mode, resolution);
  const std::vector<double> times =
      cfg.sample_times.empty() ? log_spaced(cfg.t_end / 10.0, cfg.t_end, 9)
                               : cfg.sample_times;

  const EdgeIndex index(geom);
  const double clearance = index.distance({0.0, 0.0});
  CsvTable table;
  table.comments = standard_comments(cfg);
  table.comments.push_back("mu_mode " + std::string(mu_mode_name(mode)));
  table.columns = {"t", "N", "formula_id"};
  bool warned = false;
  for (const std::string& name : cfg.formulas) {
    const FormulaId id = *formula_id_from_name(name);
    for (double t : times) {
      const double value = evaluate_formula(model, id, t);
      table.rows.push_back({format_double(t), format_double(value), name});
      if (!warned) {
        if (auto warning = validity_warning(model, clearance, t)) {
          std::fprintf(stderr, "warning: %s\n", warning->c_str());
          warned = true;
        }
      }
    }
  }
  emit(table, opts.out_path);
  return 0;
}

// -------------------------------------------------------------------- solve

struct SolveOpts {
  int dim = 2;
  std::vector<double> snapshot_times;
  std::string snapshot_prefix;
  bool check = false;
};

Solve2dConfig make_solver_config(const ExperimentConfig& cfg,
                                 const DomainGeometry& geom) {
  Solve2dConfig sc;
  sc.geometry = geom;
  sc.medium = cfg.medium;
  sc.lambda = cfg.lambda;
  sc.h = cfg.h;
  sc.dt = cfg.dt;
  sc.ramp = cfg.ramp;
  sc.t_end = cfg.t_end;
  sc.container_factor = cfg.container_factor;
  sc.sample_times = cfg.sample_times;
  sc.coupling = cfg.coupling;
  sc.threads = cfg.threads;
  return sc;
}

int cmd_solve(const CommonOpts& opts, const SolveOpts& so) {
  const ExperimentConfig cfg = resolve_config(opts);
  CsvTable table;
  table.comments = standard_comments(cfg);
  table.columns = {"t", "N", "mass", "picard_iters"};

  std::vector<SolveSample> samples;
  bool max_principle_ok = true;
  if (so.dim == 1) {
    Solve1dConfig sc;
    sc.medium = cfg.medium;
    sc.lambda = cfg.lambda;
    sc.h = cfg.h;
    sc.dt = cfg.dt;
    sc.t_end = cfg.t_end;
    sc.coupling = cfg.coupling;
    sc.sample_times = cfg.sample_times;
    const Solve1dResult result = solve_1d(sc);
    samples = result.samples;
    for (double v : result.u) {
      max_principle_ok = max_principle_ok && v > -1e-10 && v < 1.0 + 1e-10;
    }
  } else if (so.dim == 2) {
    const DomainGeometry geom = make_geometry(cfg);
    Solve2dConfig sc = make_solver_config(cfg, geom);
    sc.snapshot_times = so.snapshot_times;
    sc.snapshot_prefix = so.snapshot_prefix;
    const Solve2dResult result = solve_2d(sc);
    samples = result.samples;
    for (double v : result.u) {
      max_principle_ok = max_principle_ok && v > -1e-10 && v < 1.0 + 1e-10;
    }
  } else {
    throw std::invalid_argument("--dim must be 1 or 2");
  }

  for (const SolveSample& s : samples) {
    table.rows.push_back({format_double(s.t), format_double(s.heat_content),
                          format_double(s.mass),
                          std::to_string(s.picard_iters)});
  }
  emit(table, opts.out_path);

  if (so.check) {
    bool ok = max_principle_ok;
    if (!max_principle_ok) {
      std::fprintf(stderr, "check failed: final field escapes [0, 1]\n");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].heat_content < samples[i - 1].heat_content - 1e-12) {
        std::fprintf(stderr, "check failed: heat content not nondecreasing\n");
        ok = false;
        break;
      }
    }
    if (!ok) return kExitCheckFailure;
    std::printf("solver checks passed\n");
  }
  return 0;
}

// ------------------------------------------------------------------ compare

struct CompareOpts {
  std::string mu_mode;
  int resolution = 2048;
  bool check = false;
  double tol = 0.1;
  std::string formula;  // empty: first configured formula
  double t_min = 0.0, t_max = 0.0;
};

struct CompareRow {
  double t;
  double numeric;
  double formula;
  std::string id;
  double rel_dev;
};

std::vector<CompareRow> run_comparison(const ExperimentConfig& cfg,
                                       const std::string& mu_mode,
                                       int resolution,
                                       std::vector<SolveSample>* samples_out) {
  if (cfg.formulas.empty()) {
    throw std::invalid_argument("no formulas listed in the configuration");
  }
  if (cfg.sample_times.empty()) {
    throw std::invalid_argument("comparison needs solver.sample_times");
  }
  const DomainGeometry geom = make_geometry(cfg);
  const MuMode mode =
      mu_mode.empty() ? default_mu_mode(geom) : parse_mu_mode(mu_mode);
  const AsymptoticModel model = make_model(cfg, geom, mode, resolution);
  const Solve2dResult result = solve_2d(make_solver_config(cfg, geom));
  if (samples_out) *samples_out = result.samples;

  std::vector<CompareRow> rows;
  for (const std::string& name : cfg.formulas) {
    const FormulaId id = *formula_id_from_name(name);
    for (const SolveSample& s : result.samples) {
      const double predicted = evaluate_formula(model, id, s.t);
      const double rel =
          predicted != 0.0 ? (s.heat_content - predicted) / predicted
                           : std::numeric_limits<double>::infinity();
      rows.push_back({s.t, s.heat_content, predicted, name, rel});
    }
  }
  return rows;
}

int cmd_compare(const CommonOpts& opts, const CompareOpts& co) {
  const ExperimentConfig cfg = resolve_config(opts);
  const std::vector<CompareRow> rows =
      run_comparison(cfg, co.mu_mode, co.resolution, nullptr);

  CsvTable table;
  table.comments = standard_comments(cfg);
  table.columns = {"t", "N_numeric", "N_formula", "formula_id", "rel_dev"};
  for (const CompareRow& r : rows) {
    table.rows.push_back({format_double(r.t), format_double(r.numeric),
                          format_double(r.formula), r.id,
                          format_double(r.rel_dev)});
  }
  emit(table, opts.out_path);

  if (co.check) {
    const std::string target =
        co.formula.empty() ? cfg.formulas.front() : co.formula;
    double worst = 0.0;
    int counted = 0;
    for (const CompareRow& r : rows) {
      if (r.id != target) continue;
      if (co.t_min > 0.0 && r.t < co.t_min * (1.0 - 1e-12)) continue;
      if (co.t_max > 0.0 && r.t > co.t_max * (1.0 + 1e-12)) continue;
      worst = std::max(worst, std::fabs(r.rel_dev));
      ++counted;
    }
    if (counted == 0) {
      std::fprintf(stderr, "check failed: no rows matched formula '%s'\n",
                   target.c_str());
      return kExitCheckFailure;
    }
    std::printf("max |rel_dev| for %s: %s (tolerance %s, %d samples)\n",
                target.c_str(), format_double(worst).c_str(),
                format_double(co.tol).c_str(), counted);
    if (worst > co.tol) {
      std::fprintf(stderr, "check failed: deviation above tolerance\n");
      return kExitCheckFailure;
    }
    std::printf("comparison check passed\n");
  }
  return 0;
}

// ---------------------------------------------------------------------- run

int cmd_run(const CommonOpts& opts, const std::string& out_dir,
            int resolution) {
  const ExperimentConfig cfg = resolve_config(opts);
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const char* leaf) {
    return (std::filesystem::path(out_dir) / leaf).string();
  };

  CommonOpts sub = opts;
  sub.out_path = path("boundary.csv");
  {
    const DomainGeometry geom = make_geometry(cfg);
    std::ofstream out(sub.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + sub.out_path);
    out << boundary_csv(geom);
  }

  sub.out_path = path("sausage.csv");
  SausageOpts so;
  so.resolution = std::min(resolution, 1024);
  int rc = cmd_sausage(sub, so);
  if (rc != 0) return rc;

  sub.out_path = path("asymptote.csv");
  rc = cmd_asymptote(sub, "", resolution);
  if (rc != 0) return rc;

  std::vector<SolveSample> samples;
  const std::vector<CompareRow> rows =
      run_comparison(cfg, "", resolution, &samples);

  CsvTable solve_table;
  solve_table.comments = standard_comments(cfg);
  solve_table.columns = {"t", "N", "mass", "picard_iters"};
  for (const SolveSample& s : samples) {
    solve_table.rows.push_back(
        {format_double(s.t), format_double(s.heat_content),
         format_double(s.mass), std::to_string(s.picard_iters)});
  }
  write_csv_file(path("solve.csv"), solve_table);

  CsvTable compare_table;
  compare_table.comments = standard_comments(cfg);
  compare_table.columns = {"t", "N_numeric", "N_formula", "formula_id",
                           "rel_dev"};
  for (const CompareRow& r : rows) {
    compare_table.rows.push_back({format_double(r.t), format_double(r.numeric),
                                  format_double(r.formula), r.id,
                                  format_double(r.rel_dev)});
  }
  write_csv_file(path("compare.csv"), compare_table);

  std::printf("experiment %s -> %s\n", cfg.name.c_str(), out_dir.c_str());
  for (const std::string& name : cfg.formulas) {
    double worst = 0.0;
    for (const CompareRow& r : rows) {
      if (r.id == name) worst = std::max(worst, std::fabs(r.rel_dev));
    }
    std::printf("  %-28s max |rel_dev| = %s\n", name.c_str(),
                format_double(worst).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transmission heat-content laboratory"};
  app.set_version_flag("--version", "heatlab 0.1.0");
  app.require_subcommand(1);

  CommonOpts constants_opts;
  auto* constants_cmd =
      app.add_subcommand("constants", "print expansion constants");
  constants_cmd->add_option("--out", constants_opts.out_path, "CSV path");

  auto* presets_cmd =
      app.add_subcommand("presets", "list built-in experiment presets");

  CommonOpts geom_opts;
  bool geom_check = false;
  auto* geom_cmd =
      app.add_subcommand("geometry", "describe a domain, export its boundary");
  add_common(geom_cmd, geom_opts);
  geom_cmd->add_flag("--check", geom_check, "run self-consistency checks");

  CommonOpts sausage_opts;
  SausageOpts so;
  auto* sausage_cmd = app.add_subcommand(
      "sausage", "inner collar volume mu(width) of the domain");
  add_common(sausage_cmd, sausage_opts);
  sausage_cmd->add_option("--widths", so.widths, "explicit width list")
      ->delimiter(',');
  sausage_cmd->add_option("--wmin", so.wmin, "smallest width (log grid)");
  sausage_cmd->add_option("--wmax", so.wmax, "largest width (log grid)");
  sausage_cmd->add_option("--count", so.count, "number of widths");
  sausage_cmd->add_option("--mode", so.mode,
                          "analytic | grid | monte-carlo (default by shape)");
  sausage_cmd->add_option("--resolution", so.resolution, "grid resolution");
  sausage_cmd->add_option("--subsample", so.subsample,
                          "per-axis refinement near contours");
  sausage_cmd->add_option("--samples", so.samples, "Monte Carlo samples");
  sausage_cmd->add_flag("--check", so.check, "compare against closed form");

  CommonOpts asym_opts;
  std::string asym_mu_mode;
  int asym_resolution = 2048;
  auto* asym_cmd = app.add_subcommand(
      "asymptote", "evaluate configured closed-form expressions");
  add_common(asym_cmd, asym_opts);
  asym_cmd->add_option("--mu-mode", asym_mu_mode, "analytic | grid");
  asym_cmd->add_option("--resolution", asym_resolution,
                       "grid resolution for tabulated collar volumes");

  CommonOpts solve_opts;
  SolveOpts sv;
  auto* solve_cmd =
      app.add_subcommand("solve", "run the finite-volume reference solver");
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_option("--dim", sv.dim, "1 (line) or 2 (plane, default)");
  solve_cmd->add_option("--snapshot-times", sv.snapshot_times,
                        "write field snapshots at these times")
      ->delimiter(',');
  solve_cmd->add_option("--snapshot-prefix", sv.snapshot_prefix,
                        "snapshot file prefix");
  solve_cmd->add_flag("--check", sv.check, "run solver sanity checks");

  CommonOpts compare_opts;
  CompareOpts co;
  auto* compare_cmd = app.add_subcommand(
      "compare", "solver heat content against the closed forms");
  add_common(compare_cmd, compare_opts);
  compare_cmd->add_option("--mu-mode", co.mu_mode, "analytic | grid");
  compare_cmd->add_option("--resolution", co.resolution,
                          "grid resolution for tabulated collar volumes");
  compare_cmd->add_flag("--check", co.check, "fail when deviation > --tol");
  compare_cmd->add_option("--tol", co.tol, "relative tolerance for --check");
  compare_cmd->add_option("--formula", co.formula,
                          "formula id the check applies to");
  compare_cmd->add_option("--t-min", co.t_min, "check window lower edge");
  compare_cmd->add_option("--t-max", co.t_max, "check window upper edge");

  CommonOpts run_opts;
  std::string out_dir = "out";
  int run_resolution = 2048;
  auto* run_cmd = app.add_subcommand(
      "run", "full experiment: boundary, collar, formulas, solver, comparison");
  add_common(run_cmd, run_opts, /*with_out=*/false);
  run_cmd->add_option("--out-dir", out_dir, "output directory");
  run_cmd->add_option("--resolution", run_resolution,
                      "grid resolution for tabulated collar volumes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (constants_cmd->parsed()) return cmd_constants(constants_opts);
    if (presets_cmd->parsed()) {
      for (const std::string& name : preset_names()) {
        std::printf("%s\n", name.c_str());
      }
      return 0;
    }
    if (geom_cmd->parsed()) return cmd_geometry(geom_opts, geom_check);
    if (sausage_cmd->parsed()) return cmd_sausage(sausage_opts, so);
    if (asym_cmd->parsed()) {
      return cmd_asymptote(asym_opts, asym_mu_mode, asym_resolution);
    }
    if (solve_cmd->parsed()) return cmd_solve(solve_opts, sv);
    if (compare_cmd->parsed()) return cmd_compare(compare_opts, co);
    if (run_cmd->parsed()) return cmd_run(run_opts, out_dir, run_resolution);
  } catch (const std::logic_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitCheckFailure;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitNumericalFailure;
  }
  return 0;
}
