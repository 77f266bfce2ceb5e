#pragma once

#include <span>
#include <vector>

#include "wirecov/geometry.hpp"

namespace wirecov {

/// Point-Voronoi partition of the workspace, one cell per generator.
struct VoronoiPartition {
  std::vector<ConvexPolygon> cells;
  std::vector<Point2> centroids;
  std::vector<double> masses;
  std::vector<double> polar_moments;  ///< ∫_{V_i} |x - centroid_i|^2 dx
  /// owner[i] == i for ordinary generators; a coincident generator points at
  /// the first generator at the same location and shares its cell.
  std::vector<std::size_t> owner;
};

enum class CoincidentGenerators { Reject, Share };

/// Throws DuplicateGenerators on coincident points unless `policy` is Share.
VoronoiPartition voronoi_partition(const ConvexPolygon& X, std::span<const Point2> points,
                                   CoincidentGenerators policy = CoincidentGenerators::Reject);

/// Σ_i ∫_{V_i} |x - p_i|^2 dx. Shared cells are counted once.
double locational_cost(const VoronoiPartition& partition, std::span<const Point2> points);

/// u_i = k_p (ρ_i - p_i)
std::vector<Vec2> lloyd_control(const VoronoiPartition& partition, std::span<const Point2> points, double k_p);

struct LloydRun {
  std::vector<Point2> points;
  std::vector<double> costs;  ///< cost before each step, then the final cost
  long steps = 0;
  bool converged = false;
};

/// Explicit Euler on ṗ = u until max_i |ρ_i - p_i| < tol or max_steps.
LloydRun lloyd_descent(const ConvexPolygon& X, std::vector<Point2> points, double k_p, double dt, double tol,
                       long max_steps);

}  // namespace wirecov
