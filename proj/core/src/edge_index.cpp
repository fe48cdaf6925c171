#include "heatlab/edge_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatlab {

namespace {

double segment_distance_sq(double px, double py, double ax, double ay,
                           double bx, double by) {
  const double abx = bx - ax, aby = by - ay;
  const double apx = px - ax, apy = py - ay;
  const double len2 = abx * abx + aby * aby;
  double t = len2 > 0.0 ? (apx * abx + apy * aby) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = apx - t * abx, dy = apy - t * aby;
  return dx * dx + dy * dy;
}

}  // namespace

EdgeIndex::EdgeIndex(const DomainGeometry& g, double cell_size_hint) {
  if (g.kind == GeometryKind::circle) {
    circle_ = true;
    radius_ = g.radius;
    box_ = bounding_box(g);
    return;
  }
  std::size_t nedges = 0;
  for (const auto& loop : g.loops) nedges += loop.size();
  if (nedges == 0) throw std::invalid_argument("EdgeIndex: empty geometry");
  ax_.reserve(nedges);
  ay_.reserve(nedges);
  bx_.reserve(nedges);
  by_.reserve(nedges);
  for (const auto& loop : g.loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec2 a = loop[i], b = loop[(i + 1) % loop.size()];
      ax_.push_back(a.x);
      ay_.push_back(a.y);
      bx_.push_back(b.x);
      by_.push_back(b.y);
    }
  }
  box_ = bounding_box(g);
  const double w = box_.xmax - box_.xmin;
  const double h = box_.ymax - box_.ymin;
  const double avg_edge = g.perimeter / static_cast<double>(nedges);
  cell_ = std::max(cell_size_hint, avg_edge);
  cell_ = std::max(cell_, std::max(w, h) / 1024.0);
  nx_ = std::max(1, static_cast<int>(std::ceil(w / cell_)));
  ny_ = std::max(1, static_cast<int>(std::ceil(h / cell_)));

  // CSR bucket lists of edges overlapping each cell (by edge bbox).
  auto cell_range = [&](std::size_t e, int& x0, int& x1, int& y0, int& y1) {
    const double exmin = std::min(ax_[e], bx_[e]);
    const double exmax = std::max(ax_[e], bx_[e]);
    const double eymin = std::min(ay_[e], by_[e]);
    const double eymax = std::max(ay_[e], by_[e]);
    x0 = std::clamp(static_cast<int>((exmin - box_.xmin) / cell_), 0, nx_ - 1);
    x1 = std::clamp(static_cast<int>((exmax - box_.xmin) / cell_), 0, nx_ - 1);
    y0 = std::clamp(static_cast<int>((eymin - box_.ymin) / cell_), 0, ny_ - 1);
    y1 = std::clamp(static_cast<int>((eymax - box_.ymin) / cell_), 0, ny_ - 1);
  };
  bucket_offsets_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  for (std::size_t e = 0; e < nedges; ++e) {
    int x0, x1, y0, y1;
    cell_range(e, x0, x1, y0, y1);
    for (int cy = y0; cy <= y1; ++cy) {
      for (int cx = x0; cx <= x1; ++cx) {
        ++bucket_offsets_[static_cast<std::size_t>(cy) * nx_ + cx + 1];
      }
    }
  }
  for (std::size_t i = 1; i < bucket_offsets_.size(); ++i) {
    bucket_offsets_[i] += bucket_offsets_[i - 1];
  }
  bucket_edges_.resize(bucket_offsets_.back());
  std::vector<int> cursor(bucket_offsets_.begin(), bucket_offsets_.end() - 1);
  for (std::size_t e = 0; e < nedges; ++e) {
    int x0, x1, y0, y1;
    cell_range(e, x0, x1, y0, y1);
    for (int cy = y0; cy <= y1; ++cy) {
      for (int cx = x0; cx <= x1; ++cx) {
        bucket_edges_[cursor[static_cast<std::size_t>(cy) * nx_ + cx]++] =
            static_cast<int>(e);
      }
    }
  }

  // y-band lists for crossing tests.
  band_y0_ = box_.ymin;
  band_h_ = cell_;
  nbands_ = ny_;
  band_offsets_.assign(nbands_ + 1, 0);
  auto band_range = [&](std::size_t e, int& b0, int& b1) {
    const double eymin = std::min(ay_[e], by_[e]);
    const double eymax = std::max(ay_[e], by_[e]);
    b0 = std::clamp(static_cast<int>((eymin - band_y0_) / band_h_), 0,
                    nbands_ - 1);
    b1 = std::clamp(static_cast<int>((eymax - band_y0_) / band_h_), 0,
                    nbands_ - 1);
  };
  for (std::size_t e = 0; e < nedges; ++e) {
    int b0, b1;
    band_range(e, b0, b1);
    for (int b = b0; b <= b1; ++b) ++band_offsets_[b + 1];
  }
  for (std::size_t i = 1; i < band_offsets_.size(); ++i) {
    band_offsets_[i] += band_offsets_[i - 1];
  }
  band_edges_.resize(band_offsets_.back());
  std::vector<int> bcursor(band_offsets_.begin(), band_offsets_.end() - 1);
  for (std::size_t e = 0; e < nedges; ++e) {
    int b0, b1;
    band_range(e, b0, b1);
    for (int b = b0; b <= b1; ++b) band_edges_[bcursor[b]++] = static_cast<int>(e);
  }
}

bool EdgeIndex::inside(Vec2 p) const {
  if (circle_) return p.x * p.x + p.y * p.y < radius_ * radius_;
  if (p.y < box_.ymin || p.y > box_.ymax) return false;
  const int b =
      std::clamp(static_cast<int>((p.y - band_y0_) / band_h_), 0, nbands_ - 1);
  bool in = false;
  for (int k = band_offsets_[b]; k < band_offsets_[b + 1]; ++k) {
    const int e = band_edges_[k];
    const double ay = ay_[e], by = by_[e];
    if ((ay <= p.y) != (by <= p.y)) {
      const double xc = ax_[e] + (p.y - ay) * (bx_[e] - ax_[e]) / (by - ay);
      if (xc > p.x) in = !in;
    }
  }
  return in;
}

double EdgeIndex::distance_impl(Vec2 p, double cap, bool indicator_only) const {
  if (circle_) return std::fabs(std::hypot(p.x, p.y) - radius_);
  const int cx =
      std::clamp(static_cast<int>((p.x - box_.xmin) / cell_), 0, nx_ - 1);
  const int cy =
      std::clamp(static_cast<int>((p.y - box_.ymin) / cell_), 0, ny_ - 1);
  double best2 = std::numeric_limits<double>::infinity();
  const int rmax = nx_ + ny_ + 2;
  for (int r = 0; r <= rmax; ++r) {
    // Any edge in a ring-r cell is at least (r-1)*cell away from p, so the
    // search is complete once that bound exceeds the best hit. A finite cap
    // also ends it once no edge can lie within cap (result >= cap then), and
    // in indicator mode additionally as soon as any edge below cap is found.
    const double lb = (r - 1) * cell_;
    if (lb > 0.0 && best2 <= lb * lb) break;
    if (cap > 0.0 && lb >= cap) break;
    if (indicator_only && cap > 0.0 && best2 < cap * cap) break;
    const int x0 = cx - r, x1 = cx + r, y0 = cy - r, y1 = cy + r;
    auto scan_cell = [&](int gx, int gy) {
      if (gx < 0 || gx >= nx_ || gy < 0 || gy >= ny_) return;
      const std::size_t c = static_cast<std::size_t>(gy) * nx_ + gx;
      for (int k = bucket_offsets_[c]; k < bucket_offsets_[c + 1]; ++k) {
        const int e = bucket_edges_[k];
        best2 = std::min(best2, segment_distance_sq(p.x, p.y, ax_[e], ay_[e],
                                                    bx_[e], by_[e]));
      }
    };
    if (r == 0) {
      scan_cell(cx, cy);
      continue;
    }
    for (int gx = x0; gx <= x1; ++gx) {
      scan_cell(gx, y0);
      scan_cell(gx, y1);
    }
    for (int gy = y0 + 1; gy <= y1 - 1; ++gy) {
      scan_cell(x0, gy);
      scan_cell(x1, gy);
    }
  }
  return std::sqrt(best2);
}

double EdgeIndex::distance(Vec2 p) const {
  return distance_impl(p, 0.0, false);
}

double EdgeIndex::distance_capped(Vec2 p, double cap) const {
  return distance_impl(p, cap, false);
}

bool EdgeIndex::within(Vec2 p, double cap) const {
  return distance_impl(p, cap, true) < cap;
}

void EdgeIndex::crossings(double y, std::vector<double>& out) const {
  out.clear();
  if (circle_) {
    if (std::fabs(y) < radius_) {
      const double half = std::sqrt(radius_ * radius_ - y * y);
      out.push_back(-half);
      out.push_back(half);
    }
    return;
  }
  if (y < box_.ymin || y > box_.ymax) return;
  const int b =
      std::clamp(static_cast<int>((y - band_y0_) / band_h_), 0, nbands_ - 1);
  for (int k = band_offsets_[b]; k < band_offsets_[b + 1]; ++k) {
    const int e = band_edges_[k];
    const double ay = ay_[e], by = by_[e];
    if ((ay <= y) != (by <= y)) {
      out.push_back(ax_[e] + (y - ay) * (bx_[e] - ax_[e]) / (by - ay));
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace heatlab
