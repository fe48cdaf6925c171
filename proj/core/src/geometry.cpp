#include "heatlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace heatlab {

namespace {

std::vector<Vec2> square_loop(double side) {
  const double h = 0.5 * side;
  return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
}

// Replace edge p->q by the 8-segment bump pair. The outward normal of a CCW
// loop points to the right of the travel direction.
void subdivide_edge(Vec2 p, Vec2 q, std::vector<Vec2>& out) {
  const double tx = q.x - p.x, ty = q.y - p.y;
  const double nx = ty, ny = -tx;  // outward, same length as the edge
  auto at = [&](double u, double v) {
    return Vec2{p.x + u * tx + v * nx, p.y + u * ty + v * ny};
  };
  out.push_back(at(0.00, 0.00));
  out.push_back(at(0.25, 0.00));
  out.push_back(at(0.25, 0.25));
  out.push_back(at(0.50, 0.25));
  out.push_back(at(0.50, 0.00));
  out.push_back(at(0.50, -0.25));
  out.push_back(at(0.75, -0.25));
  out.push_back(at(0.75, 0.00));
}

double point_segment_distance_sq(Vec2 p, Vec2 a, Vec2 b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double apx = p.x - a.x, apy = p.y - a.y;
  const double len2 = abx * abx + aby * aby;
  double t = len2 > 0.0 ? (apx * abx + apy * aby) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = apx - t * abx, dy = apy - t * aby;
  return dx * dx + dy * dy;
}

// Even-odd crossing count with the half-open rule (an edge owns its lower
// endpoint), so shared vertices are counted once.
bool even_odd_inside(const std::vector<std::vector<Vec2>>& loops, Vec2 p) {
  bool inside = false;
  for (const auto& loop : loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = loop[i];
      const Vec2 b = loop[(i + 1) % n];
      if ((a.y <= p.y) != (b.y <= p.y)) {
        const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (xc > p.x) inside = !inside;
      }
    }
  }
  return inside;
}

double loops_distance(const std::vector<std::vector<Vec2>>& loops, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& loop : loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      best = std::min(best,
                      point_segment_distance_sq(p, loop[i], loop[(i + 1) % n]));
    }
  }
  return std::sqrt(best);
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto cross = [](Vec2 o, Vec2 u, Vec2 v) {
    return (u.x - o.x) * (v.y - o.y) - (u.y - o.y) * (v.x - o.x);
  };
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Vec2 s, Vec2 e, Vec2 q) {
    return std::min(s.x, e.x) <= q.x && q.x <= std::max(s.x, e.x) &&
           std::min(s.y, e.y) <= q.y && q.y <= std::max(s.y, e.y);
  };
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

DomainGeometry make_square(double side) {
  if (!(side > 0.0)) throw std::domain_error("make_square: side must be > 0");
  DomainGeometry g;
  g.kind = GeometryKind::square;
  g.side = side;
  g.loops = {square_loop(side)};
  g.perimeter = 4.0 * side;
  g.area = side * side;
  g.hausdorff_dim_limit = 1.0;
  return g;
}

DomainGeometry make_circle(double radius) {
  if (!(radius > 0.0)) throw std::domain_error("make_circle: radius must be > 0");
  DomainGeometry g;
  g.kind = GeometryKind::circle;
  g.radius = radius;
  g.perimeter = 2.0 * M_PI * radius;
  g.area = M_PI * radius * radius;
  g.hausdorff_dim_limit = 1.0;
  g.smooth = true;
  g.mean_curvature = 1.0 / radius;
  return g;
}

DomainGeometry make_minkowski_prefractal(int generation, double side) {
  if (generation < 0 || generation > 6) {
    throw std::domain_error(
        "make_minkowski_prefractal: generation must be in [0, 6]");
  }
  if (!(side > 0.0)) {
    throw std::domain_error("make_minkowski_prefractal: side must be > 0");
  }
  DomainGeometry g;
  g.kind = GeometryKind::minkowski_island;
  g.side = side;
  g.generation = generation;
  std::vector<Vec2> loop = square_loop(side);
  for (int gen = 0; gen < generation; ++gen) {
    std::vector<Vec2> next;
    next.reserve(loop.size() * 8);
    for (std::size_t i = 0; i < loop.size(); ++i) {
      subdivide_edge(loop[i], loop[(i + 1) % loop.size()], next);
    }
    loop = std::move(next);
  }
  g.loops = {std::move(loop)};
  g.perimeter = 4.0 * side * std::pow(2.0, generation);
  g.area = side * side;  // each bump pair moves equal area out and in
  g.hausdorff_dim_limit = 1.5;
  return g;
}

double signed_distance(const DomainGeometry& g, Vec2 p) {
  if (g.kind == GeometryKind::circle) {
    const double r = std::hypot(p.x, p.y);
    return r - g.radius;
  }
  const double d = loops_distance(g.loops, p);
  if (d == 0.0) return 0.0;
  return even_odd_inside(g.loops, p) ? -d : d;
}

bool contains(const DomainGeometry& g, Vec2 p) {
  return signed_distance(g, p) <= 0.0;
}

BBox bounding_box(const DomainGeometry& g) {
  if (g.kind == GeometryKind::circle) {
    return {-g.radius, -g.radius, g.radius, g.radius};
  }
  BBox b{std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity()};
  for (const auto& loop : g.loops) {
    for (const Vec2& v : loop) {
      b.xmin = std::min(b.xmin, v.x);
      b.ymin = std::min(b.ymin, v.y);
      b.xmax = std::max(b.xmax, v.x);
      b.ymax = std::max(b.ymax, v.y);
    }
  }
  return b;
}

double polygon_area(const std::vector<std::vector<Vec2>>& loops) {
  double twice = 0.0;
  for (const auto& loop : loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = loop[i], b = loop[(i + 1) % n];
      twice += a.x * b.y - b.x * a.y;
    }
  }
  return 0.5 * twice;
}

bool boundary_is_simple(const DomainGeometry& g) {
  if (g.kind == GeometryKind::circle) return true;
  // Gather all edges, then test non-adjacent pairs with a y-interval sort
  // to prune.
  struct Edge {
    Vec2 a, b;
    std::size_t loop, idx, n;
    double ymin, ymax;
  };
  std::vector<Edge> edges;
  for (std::size_t li = 0; li < g.loops.size(); ++li) {
    const auto& loop = g.loops[li];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec2 a = loop[i], b = loop[(i + 1) % loop.size()];
      edges.push_back({a, b, li, i, loop.size(), std::min(a.y, b.y),
                       std::max(a.y, b.y)});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& u, const Edge& v) { return u.ymin < v.ymin; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[j].ymin > edges[i].ymax) break;
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      if (e.loop == f.loop) {
        const std::size_t d = (e.idx + e.n - f.idx) % e.n;
        if (d == 1 || d == e.n - 1) continue;  // adjacent share one vertex
      }
      if (segments_intersect(e.a, e.b, f.a, f.b)) return false;
    }
  }
  return true;
}

std::string boundary_csv(const DomainGeometry& g, int circle_segments) {
  std::string out = "x,y\n";
  char buf[64];
  auto emit = [&](double x, double y) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", x, y);
    out += buf;
  };
  if (g.kind == GeometryKind::circle) {
    for (int i = 0; i < circle_segments; ++i) {
      const double a = 2.0 * M_PI * i / circle_segments;
      emit(g.radius * std::cos(a), g.radius * std::sin(a));
    }
    return out;
  }
  for (std::size_t li = 0; li < g.loops.size(); ++li) {
    if (li > 0) out += "\n";
    for (const Vec2& v : g.loops[li]) emit(v.x, v.y);
  }
  return out;
}

}  // namespace heatlab
