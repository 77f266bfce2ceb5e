#pragma once

#include <optional>
#include <vector>

#include "wirecov/cowmap.hpp"
#include "wirecov/geometry.hpp"

namespace wirecov {

/// Position of a point above side l_kj: s along the base, h along the
/// inward normal as a fraction of the distance to a top chain.
struct NormalRayCoords {
  double s = 0.0;
  double h = 0.0;
};

/// Mapped point at time t. The image slides along ∂P_k by arclength from
/// the COW image of x (λ = 0) to the foot of x on its nearest side (λ = 1),
/// taking the shorter way round.
struct DeformedEval {
  RegionIndex region;  ///< side of P_k holding the image
  WirePoint image;
  CowEval base;        ///< the λ = 0 evaluation
  double delta = 0.0;  ///< signed arclength from the base image to the foot
  Vec2 tangent;        ///< unit tangent of ∂P_k at the image
  std::size_t foot_side = 0;
  bool foot_interior = false;  ///< foot strictly inside its side, so it moves with x
};

/// Homotopy from the triangle fan {T_kj} to the edge Voronoi cells {V_kj}
/// over [τ_f, τ_f + τ], λ linear in t.
///
/// Region chains blend the triangle tops into the Voronoi tops along inward
/// normals. Boundary arclength on each P_k runs CCW from its first vertex.
class DeformationSchedule {
 public:
  DeformationSchedule(const Tessellation& tess, double tau_f, double tau);

  double tau_f() const { return tau_f_; }
  double tau() const { return tau_; }
  double lambda(double t) const;
  double lambda_rate(double t) const;

  const std::vector<ConvexPolygon>& voronoi_cells(std::size_t k) const { return cells_[k]; }

  /// Exit points of the inward normal ray from the base point at fraction s
  /// through the triangle's top chain, through V_kj's top chain, and their
  /// blend at λ.
  Point2 top_triangle(RegionIndex r, double s) const;
  Point2 top_voronoi(RegionIndex r, double s) const;
  Point2 top_chain(RegionIndex r, double s, double lambda) const;
  std::optional<NormalRayCoords> normal_ray_coords(RegionIndex r, double lambda, Point2 x) const;

  double perimeter(std::size_t k) const { return perimeter_[k]; }
  /// Point at arclength σ (taken mod the perimeter); a vertex belongs to the
  /// lower-indexed side.
  Point2 boundary_point(std::size_t k, double sigma, std::size_t* side = nullptr, Vec2* tangent = nullptr) const;
  double arclength_of(std::size_t k, std::size_t side, Point2 p) const;

 private:

  const Tessellation* tess_;
  double tau_f_, tau_;
  std::vector<std::vector<ConvexPolygon>> cells_;
  std::vector<std::vector<double>> cum_;  ///< boundary arclength at each vertex
  std::vector<double> perimeter_;
};

/// Throws ValidationError for τ <= 0. The schedule refers to `tess`, which
/// must outlive it.
DeformationSchedule build_deformation(const Tessellation& tess, double tau_f, double tau);

/// `base`, when given, must be cow.evaluate(x) and is reused as is.
DeformedEval deformed_evaluate(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x,
                               const CowEval* base = nullptr, bool apex_fallback = false);
RegionIndex deformed_region(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x);
WirePoint deformed_map_point(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x);
/// Velocity of the mapped point when x moves with velocity u at time t.
Vec2 deformed_velocity(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x, Vec2 u);
Vec2 deformed_velocity_at(const CowMap& cow, const DeformationSchedule& sched, double t, const DeformedEval& at,
                          Vec2 u);

}  // namespace wirecov
