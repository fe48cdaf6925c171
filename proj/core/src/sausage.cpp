#include "heatlab/sausage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heatlab/edge_index.hpp"
#include "heatlab/parallel.hpp"

namespace heatlab {

const char* mu_mode_name(MuMode m) {
  switch (m) {
    case MuMode::analytic: return "analytic";
    case MuMode::grid: return "grid";
    case MuMode::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

bool has_analytic_mu(const DomainGeometry& g) {
  return g.kind == GeometryKind::square || g.kind == GeometryKind::circle;
}

double mu_analytic(const DomainGeometry& g, double width) {
  if (!(width >= 0.0)) {
    throw std::domain_error("mu_analytic: width must be >= 0");
  }
  switch (g.kind) {
    case GeometryKind::square: {
      const double a = g.side;
      if (width >= 0.5 * a) return a * a;
      return 4.0 * a * width - 4.0 * width * width;
    }
    case GeometryKind::circle: {
      const double r = g.radius;
      if (width >= r) return M_PI * r * r;
      return 2.0 * M_PI * r * width - M_PI * width * width;
    }
    default:
      throw std::invalid_argument(
          "mu_analytic: no closed form for this geometry, use grid or "
          "monte_carlo");
  }
}

namespace {

// Parity of the number of crossings strictly right of x.
inline bool parity_inside(const std::vector<double>& xs, double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  return ((xs.end() - it) & 1) != 0;
}

std::vector<double> mu_grid_pass(const EdgeIndex& idx,
                                 const std::vector<double>& w_sorted,
                                 int resolution, int sub, int threads) {
  const BBox box = idx.bbox();
  const double bw = box.xmax - box.xmin;
  const double bh = box.ymax - box.ymin;
  const double h = std::max(bw, bh) / resolution;
  const int nx = std::max(1, static_cast<int>(std::ceil(bw / h - 1e-12)));
  const int ny = std::max(1, static_cast<int>(std::ceil(bh / h - 1e-12)));
  const std::size_t nwidths = w_sorted.size();
  const double wmax = w_sorted.back();
  const double cap = wmax + 2.0 * h;
  const double near_band = 0.75 * h;
  const double hs = h / sub;
  const double cell_area = h * h;
  const double sub_area = hs * hs;

  const int nblocks = std::max(1, threads);
  // area whose smallest qualifying width index is k, per block
  std::vector<std::vector<double>> first_k(
      nblocks, std::vector<double>(nwidths + 1, 0.0));

  parallel_for_blocks(
      static_cast<std::size_t>(ny), threads,
      [&](std::size_t row_begin, std::size_t row_end, int block) {
        std::vector<double>& acc = first_k[block];
        std::vector<double> xs;
        std::vector<std::vector<double>> sub_xs(sub);
        std::vector<char> sub_ready(sub, 0);
        for (std::size_t iy = row_begin; iy < row_end; ++iy) {
          const double y = box.ymin + (iy + 0.5) * h;
          idx.crossings(y, xs);
          std::fill(sub_ready.begin(), sub_ready.end(), 0);
          std::size_t ptr = 0;  // crossings left of or at current x
          for (int ix = 0; ix < nx; ++ix) {
            const double x = box.xmin + (ix + 0.5) * h;
            while (ptr < xs.size() && xs[ptr] <= x) ++ptr;
            const bool in = ((xs.size() - ptr) & 1) != 0;
            const double dist = idx.distance_capped({x, y}, cap);
            // refine when the cell can straddle the boundary or any width
            // level set
            bool near = dist < near_band;
            if (!near && dist < wmax + near_band) {
              auto it = std::lower_bound(w_sorted.begin(), w_sorted.end(),
                                         dist - near_band);
              near = it != w_sorted.end() && *it < dist + near_band;
            }
            if (!near) {
              if (in && dist < wmax) {
                const std::size_t k0 =
                    std::upper_bound(w_sorted.begin(), w_sorted.end(), dist) -
                    w_sorted.begin();
                acc[k0] += cell_area;
              }
              continue;
            }
            for (int jy = 0; jy < sub; ++jy) {
              if (!sub_ready[jy]) {
                idx.crossings(y - 0.5 * h + (jy + 0.5) * hs, sub_xs[jy]);
                sub_ready[jy] = 1;
              }
              const double ys = y - 0.5 * h + (jy + 0.5) * hs;
              for (int jx = 0; jx < sub; ++jx) {
                const double xsub = x - 0.5 * h + (jx + 0.5) * hs;
                if (!parity_inside(sub_xs[jy], xsub)) continue;
                const double ds = idx.distance_capped({xsub, ys}, cap);
                if (ds >= wmax) continue;
                const std::size_t k0 =
                    std::upper_bound(w_sorted.begin(), w_sorted.end(), ds) -
                    w_sorted.begin();
                acc[k0] += sub_area;
              }
            }
          }
        }
      });

  std::vector<double> mu(nwidths, 0.0);
  double running = 0.0;
  for (std::size_t k = 0; k < nwidths; ++k) {
    for (int b = 0; b < nblocks; ++b) running += first_k[b][k];
    mu[k] = running;
  }
  return mu;
}

}  // namespace

std::vector<MuEstimate> mu_grid(const DomainGeometry& g,
                                const std::vector<double>& widths,
                                const MuGridOptions& opt) {
  if (widths.empty()) return {};
  for (double w : widths) {
    if (!(w > 0.0)) throw std::domain_error("mu_grid: widths must be > 0");
  }
  if (opt.resolution < 16) {
    throw std::domain_error("mu_grid: resolution must be >= 16");
  }
  if (opt.subsample < 1) {
    throw std::domain_error("mu_grid: subsample must be >= 1");
  }
  std::vector<double> sorted = widths;
  std::sort(sorted.begin(), sorted.end());
  const EdgeIndex idx(g);
  const std::vector<double> fine =
      mu_grid_pass(idx, sorted, opt.resolution, opt.subsample, opt.threads);
  std::vector<double> coarse;
  if (opt.richardson) {
    coarse = mu_grid_pass(idx, sorted, opt.resolution / 2, opt.subsample,
                          opt.threads);
  }
  std::vector<MuEstimate> out(widths.size());
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const std::size_t k =
        std::lower_bound(sorted.begin(), sorted.end(), widths[i]) -
        sorted.begin();
    out[i].width = widths[i];
    out[i].value = fine[k];
    out[i].mode = MuMode::grid;
    out[i].est_error = opt.richardson ? std::fabs(fine[k] - coarse[k]) : 0.0;
  }
  return out;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline double to_unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

MuEstimate mu_monte_carlo(const DomainGeometry& g, double width,
                          const MuMonteCarloOptions& opt) {
  if (!(width > 0.0)) {
    throw std::domain_error("mu_monte_carlo: width must be > 0");
  }
  if (opt.samples < 1000) {
    throw std::domain_error("mu_monte_carlo: need at least 1000 samples");
  }
  const EdgeIndex idx(g);
  const BBox box = idx.bbox();
  const double bw = box.xmax - box.xmin;
  const double bh = box.ymax - box.ymin;
  const double box_area = bw * bh;

  // A fixed sub-stream count keeps the sample sequence independent of the
  // thread count.
  constexpr int kStreams = 64;
  const std::int64_t per = (opt.samples + kStreams - 1) / kStreams;
  std::vector<std::int64_t> hits(kStreams, 0);
  std::vector<std::int64_t> drawn(kStreams, 0);
  parallel_for_blocks(
      kStreams, opt.threads,
      [&](std::size_t s_begin, std::size_t s_end, int) {
        for (std::size_t s = s_begin; s < s_end; ++s) {
          std::uint64_t state = opt.seed ^ (0xabcdef1234567891ull * (s + 1));
          const std::int64_t lo = static_cast<std::int64_t>(s) * per;
          const std::int64_t hi =
              std::min<std::int64_t>(opt.samples, lo + per);
          std::int64_t h = 0;
          for (std::int64_t i = lo; i < hi; ++i) {
            const double x = box.xmin + bw * to_unit_double(splitmix64(state));
            const double y = box.ymin + bh * to_unit_double(splitmix64(state));
            if (idx.inside({x, y}) && idx.within({x, y}, width)) ++h;
          }
          hits[s] = h;
          drawn[s] = hi - lo;
        }
      });
  const std::int64_t total_hits =
      std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
  const std::int64_t total =
      std::accumulate(drawn.begin(), drawn.end(), std::int64_t{0});
  const double p = static_cast<double>(total_hits) / total;
  MuEstimate est;
  est.width = width;
  est.value = p * box_area;
  est.mode = MuMode::monte_carlo;
  est.est_error = box_area * std::sqrt(std::max(p * (1.0 - p), 0.0) / total);
  return est;
}

double mu_scaling_exponent(const std::vector<double>& widths,
                           const std::vector<double>& mus) {
  if (widths.size() != mus.size() || widths.size() < 2) {
    throw std::invalid_argument(
        "mu_scaling_exponent: need matching lists with at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(widths.size());
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0.0) || !(mus[i] > 0.0)) {
      throw std::domain_error("mu_scaling_exponent: values must be positive");
    }
    const double x = std::log(widths[i]);
    const double y = std::log(mus[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::domain_error("mu_scaling_exponent: widths are degenerate");
  }
  return (n * sxy - sx * sy) / denom;
}

WidthWindow prefractal_scaling_window(const DomainGeometry& g) {
  if (g.kind != GeometryKind::minkowski_island || g.generation < 1) {
    throw std::invalid_argument(
        "prefractal_scaling_window: needs a prefractal of generation >= 1");
  }
  return {g.side / std::pow(4.0, g.generation), g.side / 4.0};
}

MuFunction make_mu_function(const DomainGeometry& g, MuMode mode,
                            double width_lo, double width_hi,
                            int table_points, const MuGridOptions& opt) {
  MuFunction fn;
  fn.mode = mode;
  if (mode == MuMode::analytic) {
    if (!has_analytic_mu(g)) {
      throw std::invalid_argument(
          "make_mu_function: analytic mu unavailable for this geometry");
    }
    DomainGeometry geom = g;
    fn.eval = [geom](double w) { return mu_analytic(geom, w); };
    fn.description = "analytic";
    return fn;
  }
  if (mode != MuMode::grid) {
    throw std::invalid_argument(
        "make_mu_function: tabulated mu supports analytic and grid modes");
  }
  if (!(width_lo > 0.0) || !(width_hi > width_lo)) {
    throw std::domain_error("make_mu_function: need 0 < width_lo < width_hi");
  }
  if (table_points < 8) {
    throw std::domain_error("make_mu_function: need >= 8 table points");
  }
  std::vector<double> widths(table_points);
  const double llo = std::log(width_lo), lhi = std::log(width_hi);
  for (int i = 0; i < table_points; ++i) {
    widths[i] = std::exp(llo + (lhi - llo) * i / (table_points - 1));
  }
  MuGridOptions pass = opt;
  pass.richardson = false;
  const auto table = mu_grid(g, widths, pass);
  std::vector<double> lw(table_points), lm(table_points);
  for (int i = 0; i < table_points; ++i) {
    lw[i] = std::log(table[i].width);
    lm[i] = std::log(std::max(table[i].value, 1e-300));
  }
  const double saturation = table.back().value;
  fn.eval = [lw, lm, saturation](double w) -> double {
    if (!(w > 0.0)) return 0.0;
    const double x = std::log(w);
    if (x >= lw.back()) return saturation;
    std::size_t j;
    if (x <= lw.front()) {
      j = 0;  // extrapolate with the first segment's slope
    } else {
      j = std::upper_bound(lw.begin(), lw.end(), x) - lw.begin() - 1;
      j = std::min(j, lw.size() - 2);
    }
    const double t = (x - lw[j]) / (lw[j + 1] - lw[j]);
    return std::exp(lm[j] + t * (lm[j + 1] - lm[j]));
  };
  fn.description = "grid table";
  return fn;
}

}  // namespace heatlab
