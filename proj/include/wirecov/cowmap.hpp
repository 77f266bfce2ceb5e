#pragma once

#include <optional>
#include <vector>

#include "wirecov/conformal.hpp"
#include "wirecov/geometry.hpp"

namespace wirecov {

/// A point of the wire set G with its segment and arclength from the
/// segment's start (WireSet::all_segments orientation).
struct WirePoint {
  Point2 position;
  std::size_t segment_id = 0;
  double arclength = 0.0;
};

/// Result of evaluating the COW map at one point, kept so a caller can
/// warm-start the next inversion.
struct CowEval {
  RegionIndex region;
  AnchoredPoint z;
  WirePoint image;
  bool clamped = false;
  Point2 evaluated_at;  ///< differs from the input only under the apex fallback
};

/// The continuous onto-wires map: the tessellation, its wires, and one
/// Schwarz–Christoffel map per triangle region T_kj. Immutable.
class CowMap {
 public:
  CowMap(WireSet wires, Tessellation tess);

  const WireSet& wires() const { return wires_; }
  const Tessellation& tessellation() const { return tess_; }
  const SCTriangleMap& triangle(RegionIndex r) const { return maps_[r.k][r.j]; }
  /// δ_apex of region (k, j) in absolute units.
  double apex_guard(RegionIndex r) const;

  /// Wire point of a point lying on side l_kj; snaps onto the segment.
  WirePoint on_side(RegionIndex r, Point2 p) const;
  /// Case split of the map for a preimage z of region r.
  WirePoint from_preimage(RegionIndex r, const AnchoredPoint& z, bool* clamped = nullptr) const;

  /// Full evaluation. With `apex_fallback`, points inside an apex guard are
  /// pushed radially out to twice the guard radius instead of throwing.
  CowEval evaluate(Point2 x, const CowEval* previous = nullptr, bool apex_fallback = false) const;
  /// Evaluation restricted to a known region (used by the deformation).
  CowEval evaluate_in(RegionIndex r, Point2 y, const CowEval* previous = nullptr) const;

 private:
  WireSet wires_;
  Tessellation tess_;
  std::vector<std::vector<SCTriangleMap>> maps_;
};

CowMap build_cow_map(const ConvexPolygon& X, std::span<const Wire> wires);

WirePoint cow_map_point(const CowMap& cow, Point2 x);
/// f'(Re z) / f'(z); zero in the clamped cases.
Complex cow_directional_factor(const CowMap& cow, Point2 x);
/// v = f'(Re z) · Re(u / f'(z)); parallel to the side, zero when clamped.
Vec2 mapped_velocity(const CowMap& cow, Point2 x, Vec2 u);
Vec2 mapped_velocity_at(const CowMap& cow, const CowEval& at, Vec2 u);

/// Nearest point of G (the discontinuous projection the COW map replaces).
WirePoint nearest_wire_point(const WireSet& wires, Point2 x);

}  // namespace wirecov
