#pragma once

#include <vector>

#include "heatlab/geometry.hpp"

namespace heatlab {

// Spatial acceleration structure over a domain boundary: a uniform bucket
// grid for nearest-edge distance queries and y-band edge lists for
// crossing-parity containment tests. The circle kind is answered
// analytically. Query results agree exactly with the brute-force
// signed_distance / contains functions.
class EdgeIndex {
 public:
  explicit EdgeIndex(const DomainGeometry& g, double cell_size_hint = 0.0);

  // Even-odd containment (half-open crossing rule, boundary not included).
  bool inside(Vec2 p) const;

  // Unsigned distance to the boundary.
  double distance(Vec2 p) const;

  // Exact distance when it is below `cap`; otherwise some value >= cap
  // (the search stops once no edge can lie within cap).
  double distance_capped(Vec2 p, double cap) const;

  // True when the boundary comes closer to p than `cap` (early-exit search
  // in both directions).
  bool within(Vec2 p, double cap) const;

  double signed_distance(Vec2 p) const {
    const double d = distance(p);
    if (d == 0.0) return 0.0;
    return inside(p) ? -d : d;
  }

  // Sorted x-coordinates where the boundary crosses the horizontal line at
  // height y (half-open rule); parity of crossings right of x gives
  // containment for every point of the line at once.
  void crossings(double y, std::vector<double>& out) const;

  const BBox& bbox() const { return box_; }

 private:
  double distance_impl(Vec2 p, double cap, bool indicator_only) const;

  bool circle_ = false;
  double radius_ = 0.0;

  std::vector<double> ax_, ay_, bx_, by_;
  BBox box_{};
  double cell_ = 1.0;
  int nx_ = 0, ny_ = 0;
  std::vector<int> bucket_offsets_;
  std::vector<int> bucket_edges_;
  double band_y0_ = 0.0, band_h_ = 1.0;
  int nbands_ = 0;
  std::vector<int> band_offsets_;
  std::vector<int> band_edges_;
};

}  // namespace heatlab
