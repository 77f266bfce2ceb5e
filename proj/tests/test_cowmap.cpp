#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wirecov/cowmap.hpp"
#include "wirecov/errors.hpp"

using namespace wirecov;
using wirecov::testing::unit_square;

namespace {

CowMap two_rectangles() {
  const std::vector<Wire> w{make_wire({1, 0}, -0.5)};
  return build_cow_map(unit_square(), w);
}

CowMap cross_square() {
  const std::vector<Wire> w{make_wire({1, 0}, -0.5), make_wire({0, 1}, -0.5)};
  return build_cow_map(unit_square(), w);
}

double distance_to_G(const WireSet& ws, Point2 p) {
  double d = 1e300;
  for (const Segment& s : ws.all_segments) d = std::min(d, nearest_point_on_segment(p, s).dist);
  return d;
}

bool outside_guards(const CowMap& cow, Point2 x, double factor) {
  for (Point2 G : cow.tessellation().centroids)
    if (distance(x, G) < factor * SCTriangleMap::kApexGuard * cow.tessellation().diam) return false;
  return true;
}

}  // namespace

TEST_CASE("cow_map_point examples") {
  const CowMap cow = two_rectangles();
  const Tessellation& T = cow.tessellation();
  REQUIRE(T.polygons.size() == 2);

  SUBCASE("identity on wire and boundary segments") {
    double worst = 0.0;
    for (const Segment& s : cow.wires().all_segments)
      for (double f : {0.01, 0.2, 0.5, 0.77, 0.99}) {
        const Point2 y = s.at(f);
        const WirePoint w = cow_map_point(cow, y);
        worst = std::max(worst, distance(w.position, y));
        CHECK(distance(cow.wires().all_segments[w.segment_id].at(w.arclength / s.length()), w.position) < 1e-12);
      }
    CHECK(worst < 1e-8);
  }
  SUBCASE("spoke towards a shared vertex maps to that vertex") {
    for (std::size_t k = 0; k < T.polygons.size(); ++k) {
      const Point2 G = T.centroids[k];
      for (const Side& s : T.sides[k])
        for (double f : {0.1, 0.5, 0.9}) {
          const Point2 x = G + f * (s.seg.b - G);
          CHECK(distance(cow_map_point(cow, x).position, s.seg.b) < 1e-9);
        }
    }
  }
  SUBCASE("point below both diagonals maps onto y = 0") {
    const Point2 x{0.25, 0.1};
    const WirePoint w = cow_map_point(cow, x);
    CHECK(std::abs(w.position.y) < 1e-12);
    CHECK(w.position.x > 0.0);
    CHECK(w.position.x < 0.5);
    // the case formula evaluated directly on the bottom triangle
    const auto f = build_triangle_map({0, 0}, {0.5, 0}, {0.25, 0.5});
    const Complex z = f.inverse(x);
    REQUIRE(z.real() > -1.0);
    REQUIRE(z.real() < 1.0);
    CHECK(distance(f.forward({z.real(), 0.0}), w.position) < 1e-10);
    // by symmetry of the isoceles triangle, the axis maps to the base midpoint
    CHECK(cow_map_point(cow, {0.25, 0.3}).position.x == doctest::Approx(0.25).epsilon(1e-10));
  }
  SUBCASE("apex") {
    CHECK_THROWS_AS(cow_map_point(cow, {0.25, 0.5}), ApexExcluded);
    CHECK_THROWS_AS(cow_map_point(cow, {0.25, 0.5 + 1e-8}), ApexExcluded);
    const CowEval e = cow.evaluate({0.25, 0.5 + 1e-8}, nullptr, true);
    CHECK(distance_to_G(cow.wires(), e.image.position) < 1e-12);
    const CowEval g = cow.evaluate({0.25, 0.5}, nullptr, true);
    CHECK(distance_to_G(cow.wires(), g.image.position) < 1e-12);
  }
}

TEST_CASE("cow map: onto the wires, piecewise by region") {
  std::mt19937_64 rng(31);
  std::vector<CowMap> maps{two_rectangles(), cross_square()};
  for (const CowMap& m : maps) {
    const CowMap* cow = &m;
    const Tessellation& T = cow->tessellation();
    for (int i = 0; i < 10000; ++i) {
      const Point2 x = wirecov::testing::sample_in(T.workspace, rng);
      if (!outside_guards(*cow, x, 1.0)) continue;
      const CowEval e = cow->evaluate(x);
      CHECK(distance_to_G(cow->wires(), e.image.position) < 1e-7 * T.diam);
      const Segment& side = T.sides[e.region.k][e.region.j].seg;
      CHECK(nearest_point_on_segment(e.image.position, side).dist < 1e-7 * T.diam);
    }
  }
}

TEST_CASE("cow map continuity across region boundaries") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  for (int scenario = 0; scenario < 2; ++scenario) {
    const CowMap cow = scenario == 0 ? two_rectangles() : cross_square();
    const Tessellation& T = cow.tessellation();
    const double delta = 1e-5 * T.diam;
    double worst = 0.0, L = 0.0;
    int pairs = 0;
    while (pairs < 1000) {
      // a point on a region boundary: a spoke G_k -> vertex, or a side
      const std::size_t k = static_cast<std::size_t>(U(rng) * T.polygons.size());
      const auto& sides = T.sides[k];
      const Side& s = sides[static_cast<std::size_t>(U(rng) * sides.size())];
      const Point2 G = T.centroids[k];
      const Point2 on = U(rng) < 0.5 ? G + (0.02 + 0.97 * U(rng)) * (s.seg.a - G) : s.seg.at(U(rng));
      const double th = 2 * M_PI * U(rng);
      const Vec2 dir{std::cos(th), std::sin(th)};
      const Point2 x = on - (0.5 * delta) * dir, xp = on + (0.5 * delta) * dir;
      if (!T.workspace.contains(x) || !T.workspace.contains(xp)) continue;
      if (!outside_guards(cow, x, 4.0) || !outside_guards(cow, xp, 4.0)) continue;
      if (point_locate(T, x) == point_locate(T, xp)) continue;
      ++pairs;
      const double jump = distance(cow_map_point(cow, x).position, cow_map_point(cow, xp).position);
      worst = std::max(worst, jump);
      L = std::max(L, jump / delta);
    }
    MESSAGE("scenario " << scenario << ": largest straddling jump " << worst << ", empirical L " << L);
    CHECK(worst < 1e-2 * T.diam);
  }
}

TEST_CASE("nearest-point projection jumps across the medial axis") {
  const CowMap cow = two_rectangles();
  const double delta = 1e-5 * cow.tessellation().diam;
  // the diagonal of the left rectangle through (0.25, 0.25) separates the
  // bottom edge from the left edge and the wire
  double worst = 0.0;
  for (double t : {0.1, 0.15, 0.2, 0.22}) {
    const Point2 on{t, t};
    const Point2 a = on + Point2{delta, -delta}, b = on + Point2{-delta, delta};
    worst = std::max(worst, distance(nearest_wire_point(cow.wires(), a).position,
                                     nearest_wire_point(cow.wires(), b).position));
    CHECK(distance(cow_map_point(cow, a).position, cow_map_point(cow, b).position) < 1e-3);
  }
  CHECK(worst > 0.1 * cow.tessellation().diam);
}

TEST_CASE("cow_directional_factor and mapped_velocity") {
  const CowMap cow = two_rectangles();
  const Tessellation& T = cow.tessellation();

  SUBCASE("clamped region gives zero") {
    // on the spoke toward (0,0) from G_0 the preimage is at Re z = -1 or 1
    const Point2 x = T.centroids[0] + 0.5 * (Point2{0, 0} - T.centroids[0]);
    CHECK(std::abs(cow_directional_factor(cow, x)) == 0.0);
    CHECK(norm(mapped_velocity(cow, x, {0.3, -0.2})) == 0.0);
  }
  SUBCASE("on a side the factor is one and tangent velocity passes through") {
    const Point2 x{0.2, 0.0};
    CHECK(std::abs(cow_directional_factor(cow, x) - 1.0) < 1e-9);
    const Vec2 v = mapped_velocity(cow, x, {0.7, 0.0});
    CHECK(distance(v, {0.7, 0.0}) < 1e-9);
    CHECK(norm(mapped_velocity(cow, {0.3, 0.3}, {0.0, 0.0})) == 0.0);
  }
  SUBCASE("factor equals the derivative ratio from finite differences") {
    std::mt19937_64 rng(3);
    int n = 0;
    while (n < 200) {
      const Point2 x = wirecov::testing::sample_in(T.workspace, rng);
      if (!outside_guards(cow, x, 100.0)) continue;
      const CowEval e = cow.evaluate(x);
      if (e.clamped) continue;
      ++n;
      const SCTriangleMap& f = cow.triangle(e.region);
      const AnchoredPoint z = e.z;
      const double h = 1e-6 * (z.anchor != 0 ? std::abs(z.offset)
                                             : std::min({1.0, std::abs(z.value() - 1.0), std::abs(z.value() + 1.0)}));
      const AnchoredPoint r = z.real_part();
      const Complex dz = (f.forward_at({z.anchor, z.offset + h}) - f.forward_at({z.anchor, z.offset - h})) / (2 * h);
      const Complex dr = (f.forward_at({r.anchor, r.offset + h}) - f.forward_at({r.anchor, r.offset - h})) / (2 * h);
      CHECK(std::abs(cow_directional_factor(cow, x) - dr / dz) < 1e-5 * std::abs(dr / dz));
    }
  }
  SUBCASE("velocity matches finite differences of the map and is parallel to the side") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    int n = 0, good = 0;
    while (n < 300) {
      const Point2 x = wirecov::testing::sample_in(T.workspace, rng);
      if (!outside_guards(cow, x, 1000.0)) continue;
      const CowEval e = cow.evaluate(x);
      if (e.clamped) continue;
      const Vec2 u{U(rng), U(rng)};
      const double h = 1e-6 * T.diam / norm(u);
      const Point2 xa = x + h * u, xb = x - h * u;
      const CowEval ea = cow.evaluate(xa), eb = cow.evaluate(xb);
      if (ea.clamped || eb.clamped || !(ea.region == e.region) || !(eb.region == e.region)) continue;
      ++n;
      const Vec2 fd = (ea.image.position - eb.image.position) / (2 * h);
      const Vec2 v = mapped_velocity_at(cow, e, u);
      const Segment& side = T.sides[e.region.k][e.region.j].seg;
      CHECK(std::abs(cross(v, side.tangent())) < 1e-6 * std::max(1.0, norm(v)));
      if (norm(v - fd) <= 1e-4 * std::max(norm(v), 1e-12)) ++good;
    }
    CHECK(good >= 295);
  }
}
