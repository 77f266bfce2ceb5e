#include "wirecov/cowmap.hpp"

#include <algorithm>
#include <limits>

#include "wirecov/errors.hpp"

namespace wirecov {

CowMap::CowMap(WireSet wires, Tessellation tess) : wires_(std::move(wires)), tess_(std::move(tess)) {
  maps_.resize(tess_.polygons.size());
  for (std::size_t k = 0; k < tess_.polygons.size(); ++k) {
    maps_[k].reserve(tess_.sides[k].size());
    for (const Side& s : tess_.sides[k]) maps_[k].push_back(build_triangle_map(s.seg.a, s.seg.b, tess_.centroids[k]));
  }
}

CowMap build_cow_map(const ConvexPolygon& X, std::span<const Wire> wires) {
  auto [ws, tess] = build_tessellation(X, wires);
  return CowMap(std::move(ws), std::move(tess));
}

double CowMap::apex_guard(RegionIndex r) const { return SCTriangleMap::kApexGuard * triangle(r).diam(); }

WirePoint CowMap::on_side(RegionIndex r, Point2 p) const {
  const Side& side = tess_.sides[r.k][r.j];
  const Segment& seg = wires_.all_segments[side.segment_id];
  const double len = seg.length();
  const double s = std::clamp(dot(p - seg.a, seg.b - seg.a) / len, 0.0, len);
  WirePoint w;
  w.segment_id = side.segment_id;
  w.arclength = s;
  w.position = s == len ? seg.b : seg.a + (s / len) * (seg.b - seg.a);
  return w;
}

WirePoint CowMap::from_preimage(RegionIndex r, const AnchoredPoint& z, bool* clamped) const {
  const Side& side = tess_.sides[r.k][r.j];
  const bool left = z.real_minus(SCTriangleMap::kW1) <= 0.0;
  const bool right = z.real_minus(SCTriangleMap::kW2) >= 0.0;
  if (clamped) *clamped = left || right;
  if (left) return on_side(r, side.seg.a);
  if (right) return on_side(r, side.seg.b);
  return on_side(r, to_point(triangle(r).forward_at(z.real_part())));
}

CowEval CowMap::evaluate_in(RegionIndex r, Point2 y, const CowEval* previous) const {
  std::optional<AnchoredPoint> hint;
  if (previous && previous->region == r) hint = previous->z;
  CowEval e;
  e.region = r;
  e.evaluated_at = y;
  e.z = triangle(r).inverse_anchored(y, hint);
  e.image = from_preimage(r, e.z, &e.clamped);
  return e;
}

CowEval CowMap::evaluate(Point2 x, const CowEval* previous, bool apex_fallback) const {
  RegionIndex r;
  try {
    r = point_locate(tess_, x);
  } catch (const ApexExcluded&) {
    if (!apex_fallback) throw;
    const std::size_t k = polygon_locate(tess_, x);
    const Side& s0 = tess_.sides[k][0];
    const Point2 mid = 0.5 * (s0.seg.a + s0.seg.b);
    const Point2 G = tess_.centroids[k];
    const Vec2 d = mid - G;
    return evaluate(G + (2.0 * apex_guard({k, 0}) / norm(d)) * d, previous, false);
  }
  const Point2 G = tess_.centroids[r.k];
  const double guard = apex_guard(r);
  if (distance(x, G) < guard) {
    if (!apex_fallback) throw ApexExcluded("point inside the apex guard of its region");
    const Vec2 d = x - G;
    return evaluate(G + (2.0 * guard / norm(d)) * d, previous, false);
  }
  return evaluate_in(r, x, previous);
}

WirePoint cow_map_point(const CowMap& cow, Point2 x) { return cow.evaluate(x).image; }

Complex cow_directional_factor(const CowMap& cow, Point2 x) {
  const CowEval e = cow.evaluate(x);
  if (e.clamped) return 0.0;
  const SCTriangleMap& f = cow.triangle(e.region);
  return f.derivative_at(e.z.real_part()) / f.derivative_at(e.z);
}

Vec2 mapped_velocity_at(const CowMap& cow, const CowEval& at, Vec2 u) {
  if (at.clamped) return {0.0, 0.0};
  const SCTriangleMap& f = cow.triangle(at.region);
  const double re = (to_complex(u) / f.derivative_at(at.z)).real();
  return to_point(f.derivative_at(at.z.real_part()) * re);
}

Vec2 mapped_velocity(const CowMap& cow, Point2 x, Vec2 u) { return mapped_velocity_at(cow, cow.evaluate(x), u); }

WirePoint nearest_wire_point(const WireSet& wires, Point2 x) {
  WirePoint best;
  double bestd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < wires.all_segments.size(); ++i) {
    const Segment& seg = wires.all_segments[i];
    const SegmentProjection pr = nearest_point_on_segment(x, seg);
    if (pr.dist < bestd) {
      bestd = pr.dist;
      best.position = pr.point;
      best.segment_id = i;
      best.arclength = pr.param * seg.length();
    }
  }
  return best;
}

}  // namespace wirecov
