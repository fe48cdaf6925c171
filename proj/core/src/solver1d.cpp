#include "heatlab/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace heatlab {

const char* coupling_name(Coupling c) {
  return c == Coupling::monolithic ? "monolithic" : "picard";
}

namespace {

struct Tridiag {
  std::vector<double> lower, diag, upper, rhs, scratch;
  void resize(std::size_t n) {
    lower.assign(n, 0.0);
    diag.assign(n, 0.0);
    upper.assign(n, 0.0);
    rhs.assign(n, 0.0);
    scratch.assign(n, 0.0);
  }
  // Thomas elimination; writes the solution into out[0..n)
  void solve(double* out, std::size_t n) {
    scratch[0] = upper[0] / diag[0];
    out[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = 1.0 / (diag[i] - lower[i] * scratch[i - 1]);
      scratch[i] = upper[i] * m;
      out[i] = (rhs[i] - lower[i] * out[i - 1]) * m;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      out[i] -= scratch[i] * out[i + 1];
    }
  }
};

double kahan_sum(const std::vector<double>& v, std::size_t begin,
                 std::size_t end, const double* weight = nullptr) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double term = weight ? v[i] * weight[i] : v[i];
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::string format_residual_trace(const std::vector<double>& trace) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.3e", i ? ", " : "", trace[i]);
    out += buf;
  }
  return out;
}

class LineSolver {
 public:
  explicit LineSolver(const Solve1dConfig& cfg) : cfg_(cfg) {
    validate();
    const double dmax = std::max(cfg.medium.d_plus, cfg.medium.d_minus);
    const double diffusion_length = std::sqrt(4.0 * dmax * cfg.t_end);
    double half = cfg.half_length > 0.0 ? cfg.half_length
                                        : cfg.margin * diffusion_length;
    if (half < 6.0 * diffusion_length) {
      throw std::domain_error(
          "solve_1d: the half-length must cover at least six diffusion "
          "lengths so the outer walls stay invisible");
    }
    n_side_ = std::max(4, static_cast<int>(std::ceil(half / cfg.h)));
    n_ = 2 * n_side_;
    u_.assign(n_, 0.0);
    for (int i = n_side_; i < n_; ++i) u_[i] = 1.0;

    faces_.assign(n_ + 1, 0.0);
    const double dp = cfg.medium.d_plus, dm = cfg.medium.d_minus;
    for (int f = 1; f < n_; ++f) {
      if (f < n_side_) {
        faces_[f] = dm / cfg.h;
      } else if (f > n_side_) {
        faces_[f] = dp / cfg.h;
      } else if (cfg.lambda == 0.0) {
        faces_[f] = 0.0;
      } else if (std::isinf(cfg.lambda)) {
        faces_[f] = 1.0 / (cfg.h / (2.0 * dp) + cfg.h / (2.0 * dm));
      } else {
        faces_[f] =
            1.0 / (cfg.h / (2.0 * dp) + cfg.h / (2.0 * dm) + 1.0 / cfg.lambda);
      }
    }
    work_.resize(n_);
    iterate_.assign(n_, 0.0);
    previous_.assign(n_, 0.0);
  }

  Solve1dResult run() {
    std::vector<double> events = cfg_.sample_times;
    events.push_back(cfg_.t_end);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (double e : events) {
      if (!(e > 0.0) || e > cfg_.t_end * (1.0 + 1e-12)) {
        throw std::domain_error(
            "solve_1d: sample times must lie in (0, t_end]");
      }
    }

    Solve1dResult result;
    result.n_minus = n_side_;
    result.n_plus = n_side_;
    result.h = cfg_.h;
    result.s.resize(n_);
    for (int i = 0; i < n_; ++i) {
      result.s[i] = (i - n_side_ + 0.5) * cfg_.h;
    }

    double t = 0.0;
    int pending_iters = 0;
    std::size_t next_event = 0;
    while (next_event < events.size()) {
      const double target = events[next_event];
      while (t < target * (1.0 - 1e-14)) {
        const double dt = std::min(cfg_.dt, target - t);
        pending_iters = std::max(pending_iters, advance(dt));
        t += dt;
      }
      t = target;
      SolveSample sample;
      sample.t = t;
      sample.heat_content = heat_content();
      sample.mass = kahan_sum(u_, 0, n_) * cfg_.h;
      sample.picard_iters = pending_iters;
      result.samples.push_back(sample);
      pending_iters = 0;
      ++next_event;
    }
    result.t_final = t;
    result.u = u_;
    return result;
  }

 private:
  void validate() const {
    const auto& c = cfg_;
    if (!(c.medium.d_plus > 0.0) || !(c.medium.d_minus > 0.0)) {
      throw std::domain_error("solve_1d: diffusivities must be > 0");
    }
    if (!(c.lambda >= 0.0)) throw std::domain_error("solve_1d: lambda >= 0");
    if (!(c.h > 0.0)) throw std::domain_error("solve_1d: h must be > 0");
    if (!(c.dt > 0.0)) throw std::domain_error("solve_1d: dt must be > 0");
    if (!(c.t_end >= c.dt)) {
      throw std::domain_error("solve_1d: t_end must be at least dt");
    }
    if (!(c.theta >= 0.0 && c.theta <= 1.0)) {
      throw std::domain_error("solve_1d: theta must lie in [0, 1]");
    }
    if (c.dt / (c.h * c.h) > 1e4) {
      throw std::domain_error(
          "solve_1d: dt/h^2 above 1e4 trades all accuracy away; refuse");
    }
    if (c.coupling == Coupling::picard) {
      if (!(c.picard_tol > 0.0) || c.picard_max < 1 ||
          !(c.picard_relax > 0.0 && c.picard_relax <= 1.0)) {
        throw std::domain_error("solve_1d: bad picard parameters");
      }
    }
  }

  // One time step; returns the picard iteration count (0 for monolithic).
  int advance(double dt) {
    if (cfg_.coupling == Coupling::monolithic || faces_[n_side_] == 0.0) {
      step_monolithic(dt);
      return 0;
    }
    return step_picard(dt);
  }

  // explicit-part right-hand side: u + (1-theta) dt A u
  void explicit_rhs(double dt, const std::vector<double>& u,
                    std::vector<double>& rhs) const {
    const double w = (1.0 - cfg_.theta) * dt / cfg_.h;
    for (int i = 0; i < n_; ++i) {
      const double left = i > 0 ? faces_[i] * (u[i - 1] - u[i]) : 0.0;
      const double right =
          i + 1 < n_ ? faces_[i + 1] * (u[i + 1] - u[i]) : 0.0;
      rhs[i] = u[i] + w * (left + right);
    }
  }

  void step_monolithic(double dt) {
    const double w = cfg_.theta * dt / cfg_.h;
    explicit_rhs(dt, u_, work_.rhs);
    for (int i = 0; i < n_; ++i) {
      const double gl = faces_[i], gr = faces_[i + 1];
      work_.lower[i] = -w * gl;
      work_.diag[i] = 1.0 + w * (gl + gr);
      work_.upper[i] = -w * gr;
    }
    work_.solve(u_.data(), n_);
  }

  // Tridiagonal solve restricted to [begin, end) with the cross-interface
  // neighbour value frozen at `lagged`.
  void side_solve(double dt, int begin, int end, double lagged,
                  std::vector<double>& out) {
    const double w = cfg_.theta * dt / cfg_.h;
    const int len = end - begin;
    for (int i = begin; i < end; ++i) {
      double gl = faces_[i], gr = faces_[i + 1];
      double rhs = rhs_cache_[i];
      if (i == begin && begin != 0) {  // interface on the left
        rhs += w * gl * lagged;
        work_.lower[i - begin] = 0.0;
      } else {
        work_.lower[i - begin] = -w * gl;
      }
      if (i == end - 1 && end != n_) {  // interface on the right
        rhs += w * gr * lagged;
        work_.upper[i - begin] = 0.0;
      } else {
        work_.upper[i - begin] = -w * gr;
      }
      work_.diag[i - begin] = 1.0 + w * (gl + gr);
      work_.rhs[i - begin] = rhs;
    }
    work_.solve(out.data() + begin, len);
  }

  int step_picard(double dt) {
    rhs_cache_.assign(n_, 0.0);
    explicit_rhs(dt, u_, rhs_cache_);
    iterate_ = u_;  // initial guess
    const double g_if = faces_[n_side_];
    std::vector<double> residuals;
    for (int k = 1; k <= cfg_.picard_max; ++k) {
      previous_ = iterate_;
      // hot side first with the cold trace lagged, then the cold side
      // against the fresh hot trace
      side_solve(dt, n_side_, n_, previous_[n_side_ - 1], iterate_);
      side_solve(dt, 0, n_side_, iterate_[n_side_], iterate_);
      const double r =
          g_if * std::max(std::fabs(iterate_[n_side_] - previous_[n_side_]),
                          std::fabs(iterate_[n_side_ - 1] -
                                    previous_[n_side_ - 1]));
      residuals.push_back(r);
      if (r < cfg_.picard_tol) {
        u_ = iterate_;
        return k;
      }
      if (!std::isfinite(r) ||
          (residuals.size() >= 4 &&
           r > 10.0 * residuals[residuals.size() - 2])) {
        throw std::runtime_error(
            "solve_1d: picard iteration diverged; interface residual trace: " +
            format_residual_trace(residuals));
      }
      for (int i = 0; i < n_; ++i) {
        iterate_[i] = cfg_.picard_relax * iterate_[i] +
                      (1.0 - cfg_.picard_relax) * previous_[i];
      }
    }
    throw std::runtime_error(
        "solve_1d: picard iteration failed to converge within " +
        std::to_string(cfg_.picard_max) +
        " iterations; interface residual trace: " +
        format_residual_trace(residuals));
  }

  double heat_content() const {
    double sum = 0.0, comp = 0.0;
    for (int i = n_side_; i < n_; ++i) {
      const double y = (1.0 - u_[i]) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    return sum * cfg_.h;
  }

  Solve1dConfig cfg_;
  int n_side_ = 0, n_ = 0;
  std::vector<double> u_, faces_, iterate_, previous_, rhs_cache_;
  Tridiag work_;
};

}  // namespace

Solve1dResult solve_1d(const Solve1dConfig& config) {
  LineSolver solver(config);
  return solver.run();
}

}  // namespace heatlab
