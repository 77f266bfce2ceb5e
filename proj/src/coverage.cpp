#include "wirecov/coverage.hpp"

#include "wirecov/errors.hpp"

namespace wirecov {

VoronoiPartition voronoi_partition(const ConvexPolygon& X, std::span<const Point2> points,
                                   CoincidentGenerators policy) {
  const double tol = 1e-9 * X.diameter();
  const std::size_t n = points.size();
  VoronoiPartition out;
  out.owner.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.owner[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (out.owner[j] == j && distance(points[i], points[j]) <= tol) {
        if (policy == CoincidentGenerators::Reject)
          throw DuplicateGenerators("generators " + std::to_string(j) + " and " + std::to_string(i) +
                                    " coincide");
        out.owner[i] = j;
        break;
      }
    }
  }
  out.cells.resize(n);
  out.centroids.resize(n);
  out.masses.resize(n);
  out.polar_moments.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (out.owner[i] != i) continue;
    std::optional<ConvexPolygon> cell = X;
    for (std::size_t j = 0; j < n && cell; ++j) {
      if (j == i || out.owner[j] != j) continue;
      // |x - p_i| <= |x - p_j|  <=>  2 (p_j - p_i)·x <= |p_j|^2 - |p_i|^2
      const Vec2 d = points[j] - points[i];
      cell = clip_halfplane(*cell, 2.0 * d, dot(points[j], points[j]) - dot(points[i], points[i]));
    }
    if (!cell) throw ValidationError("generator " + std::to_string(i) + " has an empty Voronoi cell");
    const Moments m = polygon_moments(*cell);
    out.cells[i] = std::move(*cell);
    out.centroids[i] = m.centroid;
    out.masses[i] = m.area;
    out.polar_moments[i] = m.polar_about_centroid;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t o = out.owner[i];
    if (o == i) continue;
    out.cells[i] = out.cells[o];
    out.centroids[i] = out.centroids[o];
    out.masses[i] = out.masses[o];
    out.polar_moments[i] = out.polar_moments[o];
  }
  return out;
}

double locational_cost(const VoronoiPartition& partition, std::span<const Point2> points) {
  double J = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (partition.owner[i] != i) continue;
    const Vec2 d = partition.centroids[i] - points[i];
    J += partition.polar_moments[i] + partition.masses[i] * dot(d, d);
  }
  return J;
}

std::vector<Vec2> lloyd_control(const VoronoiPartition& partition, std::span<const Point2> points, double k_p) {
  std::vector<Vec2> u(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) u[i] = k_p * (partition.centroids[i] - points[i]);
  return u;
}

LloydRun lloyd_descent(const ConvexPolygon& X, std::vector<Point2> points, double k_p, double dt, double tol,
                       long max_steps) {
  LloydRun run;
  run.points = std::move(points);
  for (;;) {
    const VoronoiPartition V = voronoi_partition(X, run.points);
    run.costs.push_back(locational_cost(V, run.points));
    double gap = 0.0;
    for (std::size_t i = 0; i < run.points.size(); ++i) gap = std::max(gap, distance(V.centroids[i], run.points[i]));
    if (gap < tol) {
      run.converged = true;
      return run;
    }
    if (run.steps == max_steps) return run;
    const std::vector<Vec2> u = lloyd_control(V, run.points, k_p);
    for (std::size_t i = 0; i < u.size(); ++i) run.points[i] += dt * u[i];
    ++run.steps;
  }
}

}  // namespace wirecov
