#include "heatlab/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "heatlab/edge_index.hpp"
#include "heatlab/parallel.hpp"

namespace heatlab {

namespace {

std::string format_residual_trace(const std::vector<double>& trace) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.3e", i ? ", " : "", trace[i]);
    out += buf;
  }
  return out;
}

double kahan_dot(const std::vector<double>& a, const std::vector<double>* b) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double term = b ? a[i] * (*b)[i] : a[i];
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

class PlaneSolver {
 public:
  explicit PlaneSolver(const Solve2dConfig& cfg) : cfg_(cfg) {
    validate();
    build_grid();
    classify();
    build_faces();
  }

  Solve2dResult run() {
    std::vector<double> events = cfg_.sample_times;
    for (double s : cfg_.snapshot_times) events.push_back(s);
    events.push_back(cfg_.t_end);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (double e : events) {
      if (!(e > 0.0) || e > cfg_.t_end * (1.0 + 1e-12)) {
        throw std::domain_error(
            "solve_2d: sample and snapshot times must lie in (0, t_end]");
      }
    }

    Solve2dResult result;
    result.nx = nx_;
    result.ny = ny_;
    result.h = cfg_.h;
    result.origin_x = x0_;
    result.origin_y = y0_;
    result.container_side = container_;
    result.coverage = cov_;
    result.inside = mask_;
    result.domain_volume = volume_;
    result.medium = cfg_.medium;
    result.lambda = cfg_.lambda;

    const double mass0 = kahan_dot(u_, nullptr) * cfg_.h * cfg_.h;
    double t = 0.0;
    int pending_iters = 0;
    int snapshot_counter = 0;
    double previous_content = -1e-300;
    for (double target : events) {
      while (t < target * (1.0 - 1e-14)) {
        const double dt = std::min(step_size(t), target - t);
        pending_iters = std::max(pending_iters, advance(dt));
        t += dt;
        ++result.steps;
      }
      t = target;
      const double mass = kahan_dot(u_, nullptr) * cfg_.h * cfg_.h;
      if (!std::isfinite(mass)) {
        throw std::runtime_error("solve_2d: field became non-finite");
      }
      const double drift = std::fabs(mass - mass0) / (mass0 * t);
      if (drift > cfg_.mass_drift_tol) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "solve_2d: mass drift rate %.3e exceeds %.3e per unit "
                      "time at t = %.3e; aborting",
                      drift, cfg_.mass_drift_tol, t);
        throw std::runtime_error(buf);
      }
      SolveSample sample;
      sample.t = t;
      sample.mass = mass;
      sample.heat_content = volume_ - kahan_dot(u_, &cov_) * cfg_.h * cfg_.h;
      sample.picard_iters = pending_iters;
      result.picard_iters_max =
          std::max(result.picard_iters_max, pending_iters);
      pending_iters = 0;
      if (sample.heat_content < previous_content - 1e-12 * volume_) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "solve_2d: heat content decreased at t = %.3e "
                      "(%.6e after %.6e)",
                      t, sample.heat_content, previous_content);
        throw std::runtime_error(buf);
      }
      previous_content = sample.heat_content;
      const bool is_sample =
          std::find(cfg_.sample_times.begin(), cfg_.sample_times.end(), t) !=
              cfg_.sample_times.end() ||
          t == cfg_.t_end;
      if (is_sample) result.samples.push_back(sample);
      if (!cfg_.snapshot_prefix.empty() &&
          std::find(cfg_.snapshot_times.begin(), cfg_.snapshot_times.end(),
                    t) != cfg_.snapshot_times.end()) {
        write_snapshot(snapshot_counter++, t);
      }
    }
    result.t_final = t;
    result.u = u_;
    return result;
  }

 private:
  void validate() const {
    const auto& c = cfg_;
    if (!(c.medium.d_plus > 0.0) || !(c.medium.d_minus > 0.0)) {
      throw std::domain_error("solve_2d: diffusivities must be > 0");
    }
    if (!(c.lambda >= 0.0)) throw std::domain_error("solve_2d: lambda >= 0");
    if (!(c.h > 0.0)) throw std::domain_error("solve_2d: h must be > 0");
    if (!(c.dt > 0.0)) throw std::domain_error("solve_2d: dt must be > 0");
    if (!(c.ramp >= 0.0)) throw std::domain_error("solve_2d: ramp >= 0");
    if (!(c.t_end >= c.dt)) {
      throw std::domain_error("solve_2d: t_end must be at least dt");
    }
    if (!(c.mass_drift_tol > 0.0)) {
      throw std::domain_error("solve_2d: mass_drift_tol must be > 0");
    }
    if (!(c.picard_tol > 0.0) || c.picard_max < 1 ||
        !(c.picard_relax > 0.0 && c.picard_relax <= 1.0)) {
      throw std::domain_error("solve_2d: bad picard parameters");
    }
  }

  void build_grid() {
    const DomainGeometry& g = cfg_.geometry;
    const double base =
        g.kind == GeometryKind::circle ? 2.0 * g.radius : g.side;
    container_ = cfg_.container_factor * base;
    const BBox box = bounding_box(g);
    const double extent =
        std::max(box.xmax - box.xmin, box.ymax - box.ymin);
    if (container_ < 2.0 * extent) {
      throw std::domain_error(
          "solve_2d: container must span at least twice the domain extent");
    }
    nx_ = ny_ = std::max(8, static_cast<int>(std::llround(container_ / cfg_.h)));
    container_ = nx_ * cfg_.h;
    x0_ = -0.5 * container_;
    y0_ = -0.5 * container_;
    ncells_ = static_cast<std::size_t>(nx_) * ny_;
  }

  void classify() {
    const EdgeIndex idx(cfg_.geometry);
    mask_.assign(ncells_, 0);
    cov_.assign(ncells_, 0.0);
    const double h = cfg_.h;
    const double near = 0.75 * h * 1.4142135623730951;
    const int sub = 8;
    parallel_for_blocks(
        static_cast<std::size_t>(ny_), cfg_.threads,
        [&](std::size_t jb, std::size_t je, int) {
          std::vector<double> xs;
          std::vector<double> sub_xs;
          for (std::size_t j = jb; j < je; ++j) {
            const double y = y0_ + (j + 0.5) * h;
            idx.crossings(y, xs);
            std::size_t ptr = 0;
            for (int i = 0; i < nx_; ++i) {
              const double x = x0_ + (i + 0.5) * h;
              while (ptr < xs.size() && xs[ptr] <= x) ++ptr;
              const bool in = ((xs.size() - ptr) & 1) != 0;
              const std::size_t c = j * nx_ + i;
              mask_[c] = in ? 1 : 0;
              const double dist = idx.distance_capped({x, y}, 2.0 * h);
              if (dist >= near) {
                cov_[c] = in ? 1.0 : 0.0;
                continue;
              }
              int hits = 0;
              for (int sy = 0; sy < sub; ++sy) {
                const double ys = y - 0.5 * h + (sy + 0.5) * h / sub;
                idx.crossings(ys, sub_xs);
                for (int sx = 0; sx < sub; ++sx) {
                  const double xsub = x - 0.5 * h + (sx + 0.5) * h / sub;
                  const auto it = std::upper_bound(sub_xs.begin(),
                                                   sub_xs.end(), xsub);
                  if (((sub_xs.end() - it) & 1) != 0) ++hits;
                }
              }
              cov_[c] = static_cast<double>(hits) / (sub * sub);
            }
          }
        });
    volume_ = kahan_dot(cov_, nullptr) * h * h;
    u_ = cov_;  // exact-coverage initial condition
  }

  void build_faces() {
    const double h = cfg_.h;
    const double dp = cfg_.medium.d_plus, dm = cfg_.medium.d_minus;
    double g_if;
    if (cfg_.lambda == 0.0) {
      g_if = 0.0;
    } else if (std::isinf(cfg_.lambda)) {
      g_if = 1.0 / (h / (2.0 * dp) + h / (2.0 * dm));
    } else {
      g_if = 1.0 / (h / (2.0 * dp) + h / (2.0 * dm) + 1.0 / cfg_.lambda);
    }
    gx_.assign(static_cast<std::size_t>(nx_ + 1) * ny_, 0.0);
    gy_.assign(static_cast<std::size_t>(nx_) * (ny_ + 1), 0.0);
    ifx_.assign(gx_.size(), 0);
    ify_.assign(gy_.size(), 0);
    for (int j = 0; j < ny_; ++j) {
      for (int i = 1; i < nx_; ++i) {
        const std::uint8_t a = mask_[static_cast<std::size_t>(j) * nx_ + i - 1];
        const std::uint8_t b = mask_[static_cast<std::size_t>(j) * nx_ + i];
        const std::size_t f = static_cast<std::size_t>(j) * (nx_ + 1) + i;
        if (a == b) {
          gx_[f] = (a ? dp : dm) / h;
        } else {
          gx_[f] = g_if;
          ifx_[f] = 1;
          iface_x_.push_back(f);
        }
      }
    }
    for (int j = 1; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) {
        const std::uint8_t a = mask_[static_cast<std::size_t>(j - 1) * nx_ + i];
        const std::uint8_t b = mask_[static_cast<std::size_t>(j) * nx_ + i];
        const std::size_t f = static_cast<std::size_t>(j) * nx_ + i;
        if (a == b) {
          gy_[f] = (a ? dp : dm) / h;
        } else {
          gy_[f] = g_if;
          ify_[f] = 1;
          iface_y_.push_back(f);
        }
      }
    }
    picard_mode_ = cfg_.coupling == Coupling::picard &&
                   std::isfinite(cfg_.lambda) && cfg_.lambda > 0.0 &&
                   !(iface_x_.empty() && iface_y_.empty());
    v_.assign(ncells_, 0.0);
    w_.assign(ncells_, 0.0);
    ustar_.assign(ncells_, 0.0);
    unew_.assign(ncells_, 0.0);
    if (picard_mode_) {
      prev_star_.assign(ncells_, 0.0);
      prev_new_.assign(ncells_, 0.0);
    }
  }

  double step_size(double t) const {
    if (cfg_.ramp <= 0.0 || t < 10.0 * cfg_.dt) return cfg_.dt;
    return std::max(cfg_.dt, t / cfg_.ramp);
  }

  // v = u + kappa * Ay u  (full coupling, explicit)
  void explicit_y(const std::vector<double>& u, std::vector<double>& out,
                  double kappa) const {
    const double w = kappa / cfg_.h;
    parallel_for_blocks(
        static_cast<std::size_t>(ny_), cfg_.threads,
        [&](std::size_t jb, std::size_t je, int) {
          for (std::size_t j = jb; j < je; ++j) {
            for (int i = 0; i < nx_; ++i) {
              const std::size_t c = j * nx_ + i;
              double flux = 0.0;
              if (j > 0) flux += gy_[j * nx_ + i] * (u[c - nx_] - u[c]);
              if (j + 1 < static_cast<std::size_t>(ny_)) {
                flux += gy_[(j + 1) * nx_ + i] * (u[c + nx_] - u[c]);
              }
              out[c] = u[c] + w * flux;
            }
          }
        });
  }

  // w = u + kappa * Ax u  (full coupling, explicit)
  void explicit_x(const std::vector<double>& u, std::vector<double>& out,
                  double kappa) const {
    const double w = kappa / cfg_.h;
    parallel_for_blocks(
        static_cast<std::size_t>(ny_), cfg_.threads,
        [&](std::size_t jb, std::size_t je, int) {
          for (std::size_t j = jb; j < je; ++j) {
            const std::size_t row = j * nx_;
            const std::size_t frow = j * (nx_ + 1);
            for (int i = 0; i < nx_; ++i) {
              const std::size_t c = row + i;
              double flux = 0.0;
              if (i > 0) flux += gx_[frow + i] * (u[c - 1] - u[c]);
              if (i + 1 < nx_) flux += gx_[frow + i + 1] * (u[c + 1] - u[c]);
              out[c] = u[c] + w * flux;
            }
          }
        });
  }

  // (I - kappa Ax) out = rhs; when lag is set, interface faces freeze the
  // cross-side neighbour at its lag value instead of coupling implicitly
  void implicit_x(const std::vector<double>& rhs, std::vector<double>& out,
                  double kappa, const std::vector<double>* lag) const {
    const double w = kappa / cfg_.h;
    parallel_for_blocks(
        static_cast<std::size_t>(ny_), cfg_.threads,
        [&](std::size_t jb, std::size_t je, int) {
          std::vector<double> lower(nx_), diag(nx_), upper(nx_), r(nx_),
              scratch(nx_);
          for (std::size_t j = jb; j < je; ++j) {
            const std::size_t row = j * nx_;
            const std::size_t frow = j * (nx_ + 1);
            for (int i = 0; i < nx_; ++i) {
              const double gl = gx_[frow + i];
              const double gr = gx_[frow + i + 1];
              double rr = rhs[row + i];
              double lo = -w * gl, up = -w * gr;
              if (lag && ifx_[frow + i]) {
                lo = 0.0;
                rr += w * gl * (*lag)[row + i - 1];
              }
              if (lag && ifx_[frow + i + 1]) {
                up = 0.0;
                rr += w * gr * (*lag)[row + i + 1];
              }
              lower[i] = lo;
              upper[i] = up;
              diag[i] = 1.0 + w * (gl + gr);
              r[i] = rr;
            }
            thomas(lower, diag, upper, r, scratch, out.data() + row, nx_);
          }
        });
  }

  void implicit_y(const std::vector<double>& rhs, std::vector<double>& out,
                  double kappa, const std::vector<double>* lag) const {
    const double w = kappa / cfg_.h;
    parallel_for_blocks(
        static_cast<std::size_t>(nx_), cfg_.threads,
        [&](std::size_t ib, std::size_t ie, int) {
          std::vector<double> lower(ny_), diag(ny_), upper(ny_), r(ny_),
              scratch(ny_), col(ny_);
          for (std::size_t i = ib; i < ie; ++i) {
            for (int j = 0; j < ny_; ++j) {
              const double gl = gy_[static_cast<std::size_t>(j) * nx_ + i];
              const double gr =
                  gy_[(static_cast<std::size_t>(j) + 1) * nx_ + i];
              double rr = rhs[static_cast<std::size_t>(j) * nx_ + i];
              double lo = -w * gl, up = -w * gr;
              if (lag && ify_[static_cast<std::size_t>(j) * nx_ + i]) {
                lo = 0.0;
                rr += w * gl * (*lag)[(static_cast<std::size_t>(j) - 1) * nx_ + i];
              }
              if (lag && ify_[(static_cast<std::size_t>(j) + 1) * nx_ + i]) {
                up = 0.0;
                rr += w * gr * (*lag)[(static_cast<std::size_t>(j) + 1) * nx_ + i];
              }
              lower[j] = lo;
              upper[j] = up;
              diag[j] = 1.0 + w * (gl + gr);
              r[j] = rr;
            }
            thomas(lower, diag, upper, r, scratch, col.data(), ny_);
            for (int j = 0; j < ny_; ++j) {
              out[static_cast<std::size_t>(j) * nx_ + i] = col[j];
            }
          }
        });
  }

  static void thomas(std::vector<double>& lower, std::vector<double>& diag,
                     std::vector<double>& upper, std::vector<double>& rhs,
                     std::vector<double>& scratch, double* out, int n) {
    scratch[0] = upper[0] / diag[0];
    out[0] = rhs[0] / diag[0];
    for (int i = 1; i < n; ++i) {
      const double m = 1.0 / (diag[i] - lower[i] * scratch[i - 1]);
      scratch[i] = upper[i] * m;
      out[i] = (rhs[i] - lower[i] * out[i - 1]) * m;
    }
    for (int i = n - 1; i-- > 0;) out[i] -= scratch[i] * out[i + 1];
  }

  int advance(double dt) {
    const double kappa = 0.5 * dt;
    explicit_y(u_, v_, kappa);
    if (!picard_mode_) {
      implicit_x(v_, ustar_, kappa, nullptr);
      explicit_x(ustar_, w_, kappa);
      implicit_y(w_, unew_, kappa, nullptr);
      u_.swap(unew_);
      return 0;
    }
    prev_star_ = u_;
    prev_new_ = u_;
    std::vector<double> residuals;
    for (int k = 1; k <= cfg_.picard_max; ++k) {
      implicit_x(v_, ustar_, kappa, &prev_star_);
      explicit_x(ustar_, w_, kappa);
      implicit_y(w_, unew_, kappa, &prev_new_);
      double r = 0.0;
      for (std::size_t f : iface_x_) {
        const std::size_t j = f / (nx_ + 1);
        const std::size_t i = f % (nx_ + 1);
        const std::size_t b = j * nx_ + i;
        const std::size_t a = b - 1;
        const double g = gx_[f];
        r = std::max(r, g * std::fabs(ustar_[a] - prev_star_[a]));
        r = std::max(r, g * std::fabs(ustar_[b] - prev_star_[b]));
        r = std::max(r, g * std::fabs(unew_[a] - prev_new_[a]));
        r = std::max(r, g * std::fabs(unew_[b] - prev_new_[b]));
      }
      for (std::size_t f : iface_y_) {
        const std::size_t b = f;  // cell (i, j) above the face
        const std::size_t a = f - nx_;
        const double g = gy_[f];
        r = std::max(r, g * std::fabs(ustar_[a] - prev_star_[a]));
        r = std::max(r, g * std::fabs(ustar_[b] - prev_star_[b]));
        r = std::max(r, g * std::fabs(unew_[a] - prev_new_[a]));
        r = std::max(r, g * std::fabs(unew_[b] - prev_new_[b]));
      }
      residuals.push_back(r);
      if (r < cfg_.picard_tol) {
        u_.swap(unew_);
        return k;
      }
      if (!std::isfinite(r) ||
          (residuals.size() >= 4 &&
           r > 10.0 * residuals[residuals.size() - 2])) {
        throw std::runtime_error(
            "solve_2d: picard iteration diverged; interface residual trace: " +
            format_residual_trace(residuals));
      }
      const double rho = cfg_.picard_relax;
      for (std::size_t c = 0; c < ncells_; ++c) {
        prev_star_[c] = rho * ustar_[c] + (1.0 - rho) * prev_star_[c];
        prev_new_[c] = rho * unew_[c] + (1.0 - rho) * prev_new_[c];
      }
    }
    throw std::runtime_error(
        "solve_2d: picard iteration failed to converge within " +
        std::to_string(cfg_.picard_max) +
        " iterations; interface residual trace: " +
        format_residual_trace(residuals));
  }

  void write_snapshot(int index, double time) const {
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "%03d", index);
    const std::string base = cfg_.snapshot_prefix + suffix;
    {
      std::ofstream bin(base + ".f64", std::ios::binary);
      if (!bin) {
        throw std::runtime_error("solve_2d: cannot write snapshot " + base);
      }
      bin.write(reinterpret_cast<const char*>(u_.data()),
                static_cast<std::streamsize>(u_.size() * sizeof(double)));
    }
    std::ofstream meta(base + ".json");
    if (!meta) {
      throw std::runtime_error("solve_2d: cannot write sidecar " + base);
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\n  \"nx\": %d,\n  \"ny\": %d,\n  \"h\": %.17g,\n"
                  "  \"origin\": [%.17g, %.17g],\n  \"time\": %.17g,\n"
                  "  \"layout\": \"row-major-float64\"\n}\n",
                  nx_, ny_, cfg_.h, x0_, y0_, time);
    meta << buf;
  }

  Solve2dConfig cfg_;
  int nx_ = 0, ny_ = 0;
  std::size_t ncells_ = 0;
  double container_ = 0.0, x0_ = 0.0, y0_ = 0.0, volume_ = 0.0;
  bool picard_mode_ = false;
  std::vector<double> u_, v_, w_, ustar_, unew_, prev_star_, prev_new_;
  std::vector<double> cov_, gx_, gy_;
  std::vector<std::uint8_t> mask_, ifx_, ify_;
  std::vector<std::size_t> iface_x_, iface_y_;
};

}  // namespace

Solve2dResult solve_2d(const Solve2dConfig& config) {
  PlaneSolver solver(config);
  return solver.run();
}

LocalizationReport localization_check(const Solve2dResult& result,
                                      const DomainGeometry& geometry,
                                      double eps) {
  if (!(eps > 0.0)) {
    throw std::domain_error("localization_check: eps must be > 0");
  }
  const EdgeIndex idx(geometry);
  LocalizationReport report;
  report.eps = eps;
  const double h = result.h;
  double vol = 0.0, defect = 0.0, comp_v = 0.0, comp_d = 0.0;
  for (int j = 0; j < result.ny; ++j) {
    for (int i = 0; i < result.nx; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * result.nx + i;
      if (!result.inside[c] || result.coverage[c] < 1.0) continue;
      const double x = result.origin_x + (i + 0.5) * h;
      const double y = result.origin_y + (j + 0.5) * h;
      if (idx.distance_capped({x, y}, eps * (1.0 + 1e-12)) < eps) continue;
      const double dv = h * h;
      double yv = dv - comp_v;
      double tv = vol + yv;
      comp_v = (tv - vol) - yv;
      vol = tv;
      const double dd = (1.0 - result.u[c]) * dv;
      double yd = dd - comp_d;
      double td = defect + yd;
      comp_d = (td - defect) - yd;
      defect = td;
    }
  }
  report.far_volume = vol;
  report.far_defect = defect;
  return report;
}

}  // namespace heatlab
