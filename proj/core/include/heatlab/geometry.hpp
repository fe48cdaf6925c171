#pragma once

#include <string>
#include <vector>

namespace heatlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class GeometryKind { square, circle, minkowski_island };

// A planar domain: the unit-area reference shapes are centered at the
// origin. Polygon kinds carry explicit closed loops (counter-clockwise,
// last vertex implicitly connected back to the first); the circle kind is
// analytic and loops hold a sampled outline only for export.
struct DomainGeometry {
  GeometryKind kind = GeometryKind::square;
  double side = 1.0;        // square and island base side
  double radius = 1.0;      // circle
  int generation = 0;       // island construction depth
  std::vector<std::vector<Vec2>> loops;
  double perimeter = 0.0;
  double area = 0.0;        // exact enclosed area
  double hausdorff_dim_limit = 1.0;  // boundary dimension of the family limit
  bool smooth = false;      // boundary is C^3 (circle only)
  double mean_curvature = 0.0;  // constant boundary curvature (1/R), 0 for polygons
};

DomainGeometry make_square(double side = 1.0);
DomainGeometry make_circle(double radius = 1.0);

// Quadratic 8-segment island: every edge is replaced by an area-preserving
// out/in bump pair; perimeter doubles per generation, vertices land on the
// lattice of spacing side/4^generation. Supported up to generation 6.
DomainGeometry make_minkowski_prefractal(int generation, double side = 1.0);

// Exact distance with sign: negative inside, positive outside, zero on the
// boundary. Brute-force over edges (analytic for the circle).
double signed_distance(const DomainGeometry& g, Vec2 p);

// Even-odd containment; points exactly on the boundary count as inside.
bool contains(const DomainGeometry& g, Vec2 p);

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
};
BBox bounding_box(const DomainGeometry& g);

// Shoelace area of the polygon loops (signed, CCW positive).
double polygon_area(const std::vector<std::vector<Vec2>>& loops);

// True when no two non-adjacent boundary edges intersect.
bool boundary_is_simple(const DomainGeometry& g);

// "x,y" rows, one loop after another, blank line between loops. The circle
// outline is sampled with `circle_segments` points.
std::string boundary_csv(const DomainGeometry& g, int circle_segments = 720);

}  // namespace heatlab
