#pragma once

// Shared helpers for the test binaries: random convex polygons, point
// samplers and brute-force integrals used as independent oracles.

#include <algorithm>
#include <random>
#include <vector>

#include "wirecov/geometry.hpp"

namespace wirecov::testing {

inline ConvexPolygon unit_square() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

/// Convex hull of `n` uniform points in [0,1]^2, retried until it has at
/// least `min_vertices` vertices.
inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, std::size_t n = 8, std::size_t min_vertices = 4) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({U(rng), U(rng)});
    auto h = convex_hull(pts);
    if (h.size() < min_vertices) continue;
    try {
      return ConvexPolygon(h);
    } catch (...) {
    }
  }
}

/// Uniform sample in the closed polygon by rejection from its bounding box.
inline Point2 sample_in(const ConvexPolygon& P, std::mt19937_64& rng) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto v : P.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  std::uniform_real_distribution<double> Ux(xmin, xmax), Uy(ymin, ymax);
  for (;;) {
    Point2 p{Ux(rng), Uy(rng)};
    if (P.contains(p)) return p;
  }
}

inline Point2 sample_in_triangle(Point2 a, Point2 b, Point2 c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double r1 = U(rng), r2 = U(rng);
  if (r1 + r2 > 1.0) {
    r1 = 1.0 - r1;
    r2 = 1.0 - r2;
  }
  return a + r1 * (b - a) + r2 * (c - a);
}

/// Midpoint-rule Riemann sum of |x - q|^2 over the polygon on an n x n grid
/// of its bounding box.
inline double riemann_second_moment(const ConvexPolygon& P, Point2 q, int n) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto v : P.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double hx = (xmax - xmin) / n, hy = (ymax - ymin) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Point2 p{xmin + (i + 0.5) * hx, ymin + (j + 0.5) * hy};
      if (P.contains(p)) s += dot(p - q, p - q);
    }
  return s * hx * hy;
}

/// Scanline Riemann sum: midpoint rule in y, the chord integral in x done in
/// closed form. Independent of the fan-triangulation path.
inline double scanline_second_moment(const ConvexPolygon& P, Point2 q, int rows) {
  double ymin = 1e300, ymax = -1e300;
  for (auto v : P.vertices()) {
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double h = (ymax - ymin) / rows;
  double s = 0.0;
  for (int r = 0; r < rows; ++r) {
    const double y = ymin + (r + 0.5) * h;
    double x0 = 1e300, x1 = -1e300;
    for (std::size_t i = 0; i < P.size(); ++i) {
      const Segment e = P.edge(i);
      if ((e.a.y - y) * (e.b.y - y) > 0 || e.a.y == e.b.y) continue;
      const double x = e.a.x + (y - e.a.y) / (e.b.y - e.a.y) * (e.b.x - e.a.x);
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
    if (x1 <= x0) continue;
    const double a = x0 - q.x, b = x1 - q.x;
    s += (b * b * b - a * a * a) / 3.0 + (y - q.y) * (y - q.y) * (x1 - x0);
  }
  return s * h;
}

}  // namespace wirecov::testing
