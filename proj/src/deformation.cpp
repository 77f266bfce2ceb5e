#include "wirecov/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wirecov/errors.hpp"

namespace wirecov {

namespace {

// Largest t with o + t·d inside the convex CCW polygon, and the edge hit.
double ray_exit(std::span<const Point2> poly, Point2 o, Vec2 d, std::size_t* edge = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t hit = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const Vec2 out = -perp_left(b - a);  // outward, unnormalized
    const double rate = dot(out, d);
    if (rate <= 0.0) continue;
    const double t = dot(out, a - o) / rate;
    if (t < best) {
      best = t;
      hit = i;
    }
  }
  if (edge) *edge = hit;
  return best;
}

}  // namespace

DeformationSchedule::DeformationSchedule(const Tessellation& tess, double tau_f, double tau)
    : tess_(&tess), tau_f_(tau_f), tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("deformation duration tau must be positive");
  for (std::size_t k = 0; k < tess.polygons.size(); ++k) {
    const ConvexPolygon& P = tess.polygons[k];
    cells_.push_back(edge_voronoi_cells(P));
    std::vector<double> cum{0.0};
    for (std::size_t j = 0; j < P.size(); ++j) cum.push_back(cum.back() + P.edge(j).length());
    perimeter_.push_back(cum.back());
    cum_.push_back(std::move(cum));
  }
}

DeformationSchedule build_deformation(const Tessellation& tess, double tau_f, double tau) {
  return DeformationSchedule(tess, tau_f, tau);
}

double DeformationSchedule::lambda(double t) const { return std::clamp((t - tau_f_) / tau_, 0.0, 1.0); }

double DeformationSchedule::lambda_rate(double t) const {
  return t >= tau_f_ && t <= tau_f_ + tau_ ? 1.0 / tau_ : 0.0;
}

Point2 DeformationSchedule::top_triangle(RegionIndex r, double s) const {
  const Segment& base = tess_->sides[r.k][r.j].seg;
  const std::vector<Point2> tri{base.a, base.b, tess_->centroids[r.k]};
  const Point2 o = base.at(s);
  const Vec2 n = perp_left(base.tangent());
  return o + ray_exit(tri, o, n) * n;
}

Point2 DeformationSchedule::top_voronoi(RegionIndex r, double s) const {
  const Segment& base = tess_->sides[r.k][r.j].seg;
  const Point2 o = base.at(s);
  const Vec2 n = perp_left(base.tangent());
  return o + ray_exit(cells_[r.k][r.j].vertices(), o, n) * n;
}

Point2 DeformationSchedule::top_chain(RegionIndex r, double s, double lambda) const {
  return (1.0 - lambda) * top_triangle(r, s) + lambda * top_voronoi(r, s);
}

std::optional<NormalRayCoords> DeformationSchedule::normal_ray_coords(RegionIndex r, double lambda, Point2 x) const {
  const Segment& base = tess_->sides[r.k][r.j].seg;
  const double len = base.length();
  const Vec2 t = base.tangent(), n = perp_left(t);
  const double tol = 1e-9;
  NormalRayCoords c;
  c.s = dot(x - base.a, t) / len;
  if (c.s < -tol || c.s > 1.0 + tol) return std::nullopt;
  c.s = std::clamp(c.s, 0.0, 1.0);
  const double h = dot(x - base.a, n);
  const double H = dot(top_chain(r, c.s, lambda) - base.at(c.s), n);
  if (H <= tol * tess_->diam) {
    if (std::abs(h) > tol * tess_->diam) return std::nullopt;
    c.h = 0.0;
    return c;
  }
  c.h = h / H;
  if (c.h < -tol || c.h > 1.0 + tol) return std::nullopt;
  c.h = std::clamp(c.h, 0.0, 1.0);
  return c;
}

double DeformationSchedule::arclength_of(std::size_t k, std::size_t side, Point2 p) const {
  const Segment e = tess_->polygons[k].edge(side);
  return cum_[k][side] + std::clamp(dot(p - e.a, e.tangent()), 0.0, e.length());
}

Point2 DeformationSchedule::boundary_point(std::size_t k, double sigma, std::size_t* side, Vec2* tangent) const {
  const double L = perimeter_[k];
  sigma = std::fmod(sigma, L);
  if (sigma < 0.0) sigma += L;
  const auto& cum = cum_[k];
  // side j holds [cum[j], cum[j+1]]; a vertex belongs to the lower index
  std::size_t j = static_cast<std::size_t>(std::lower_bound(cum.begin() + 1, cum.end(), sigma) - cum.begin()) - 1;
  j = std::min(j, tess_->polygons[k].size() - 1);
  const Segment e = tess_->polygons[k].edge(j);
  if (side) *side = j;
  if (tangent) *tangent = e.tangent();
  return e.a + (sigma - cum[j]) * e.tangent();
}

DeformedEval deformed_evaluate(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x,
                               const CowEval* base, bool apex_fallback) {
  DeformedEval d;
  d.base = base ? *base : cow.evaluate(x, nullptr, apex_fallback);
  const Tessellation& T = cow.tessellation();
  const std::size_t k = d.base.region.k;
  const ConvexPolygon& P = T.polygons[k];
  const std::size_t j0 = d.base.region.j;

  const std::size_t j1 = nearest_side(P, x);
  const Segment e1 = P.edge(j1);
  const Point2 foot = nearest_point_on_segment(x, e1).point;
  const double s1 = dot(x - e1.a, e1.tangent());
  d.foot_side = j1;
  d.foot_interior = s1 > 0.0 && s1 < e1.length();
  const double L = sched.perimeter(k);
  const double s0 = sched.arclength_of(k, j0, d.base.image.position);
  d.delta = sched.arclength_of(k, j1, foot) - s0;
  d.delta -= L * std::round(d.delta / L);

  const double lam = sched.lambda(t);
  if (lam == 0.0) {
    d.region = d.base.region;
    d.image = d.base.image;
    d.tangent = P.edge(j0).tangent();
    return d;
  }
  if (lam == 1.0) {
    d.region = {k, j1};
    d.image = cow.on_side(d.region, foot);
    d.tangent = P.edge(j1).tangent();
    return d;
  }
  std::size_t jt = 0;
  const Point2 p = sched.boundary_point(k, s0 + lam * d.delta, &jt, &d.tangent);
  d.region = {k, jt};
  d.image = cow.on_side(d.region, p);
  return d;
}

RegionIndex deformed_region(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x) {
  return deformed_evaluate(cow, sched, t, x).region;
}

WirePoint deformed_map_point(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x) {
  return deformed_evaluate(cow, sched, t, x).image;
}

Vec2 deformed_velocity_at(const CowMap& cow, const DeformationSchedule& sched, double t, const DeformedEval& at,
                          Vec2 u) {
  const ConvexPolygon& P = cow.tessellation().polygons[at.base.region.k];
  const double lam = sched.lambda(t);
  // rate of the base arclength, and of the foot's
  const double r0 = dot(mapped_velocity_at(cow, at.base, u), P.edge(at.base.region.j).tangent());
  const double r1 = at.foot_interior ? dot(u, P.edge(at.foot_side).tangent()) : 0.0;
  const double rate = (1.0 - lam) * r0 + lam * r1 + sched.lambda_rate(t) * at.delta;
  return rate * at.tangent;
}

Vec2 deformed_velocity(const CowMap& cow, const DeformationSchedule& sched, double t, Point2 x, Vec2 u) {
  return deformed_velocity_at(cow, sched, t, deformed_evaluate(cow, sched, t, x, nullptr, true), u);
}

}  // namespace wirecov
