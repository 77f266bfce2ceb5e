#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wirecov/errors.hpp"
#include "wirecov/geometry.hpp"

using namespace wirecov;
using wirecov::testing::unit_square;

namespace {

bool same_vertices(const ConvexPolygon& P, std::vector<Point2> expected, double tol = 1e-12) {
  if (P.size() != expected.size()) return false;
  for (std::size_t shift = 0; shift < P.size(); ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < P.size() && ok; ++i) ok = distance(P[(i + shift) % P.size()], expected[i]) <= tol;
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("clip_halfplane") {
  const auto sq = unit_square();
  auto half = clip_halfplane(sq, {1, 0}, 0.5);
  REQUIRE(half);
  CHECK(same_vertices(*half, {{0, 0}, {0.5, 0}, {0.5, 1}, {0, 1}}));

  auto whole = clip_halfplane(sq, {1, 0}, 2.0);
  REQUIRE(whole);
  CHECK(same_vertices(*whole, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));

  CHECK_FALSE(clip_halfplane(sq, {1, 0}, -1.0));
  // touching along an edge has zero area
  CHECK_FALSE(clip_halfplane(sq, {1, 0}, 0.0));

  SUBCASE("idempotent on random cuts") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int i = 0; i < 200; ++i) {
      const auto P = wirecov::testing::random_convex_polygon(rng);
      const double th = U(rng) * M_PI;
      const Vec2 n{std::cos(th), std::sin(th)};
      const double c = dot(n, {0.5, 0.5}) + 0.3 * U(rng);
      auto once = clip_halfplane(P, n, c);
      if (!once) continue;
      auto twice = clip_halfplane(*once, n, c);
      REQUIRE(twice);
      CHECK(same_vertices(*twice, {once->vertices().begin(), once->vertices().end()}, 1e-12));
    }
  }
}

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), ValidationError);  // self-intersecting
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), ValidationError);  // clockwise
  CHECK_THROWS_WITH_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), doctest::Contains("strictly convex"),
                       ValidationError);
}

TEST_CASE("polygon_moments") {
  const auto m = polygon_moments(unit_square());
  CHECK(m.area == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.centroid.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.centroid.y == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.second_moment_about({0.5, 0.5}) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  SUBCASE("right triangle against a 2000^2 Riemann sum") {
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    const double oracle = wirecov::testing::riemann_second_moment(tri, {0, 0}, 2000);
    const double exact = polygon_moments(tri).second_moment_about({0, 0});
    CHECK(exact == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(std::abs(oracle - exact) / exact < 2e-3);
  }

  SUBCASE("random convex polygons against a dense Riemann sum") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
      const auto P = wirecov::testing::random_convex_polygon(rng, 10, 5);
      const Point2 q = wirecov::testing::sample_in(P, rng);
      const double oracle = wirecov::testing::scanline_second_moment(P, q, 4000);
      const double exact = polygon_moments(P).second_moment_about(q);
      CHECK(std::abs(oracle - exact) / exact < 1e-4);
    }
  }
}

TEST_CASE("nearest_point_on_segment") {
  const Segment s{{0, 0}, {1, 0}};
  auto a = nearest_point_on_segment({0.3, 0.7}, s);
  CHECK(a.point.x == doctest::Approx(0.3));
  CHECK(a.point.y == doctest::Approx(0.0));
  CHECK(a.dist == doctest::Approx(0.7));
  auto b = nearest_point_on_segment({2, 1}, s);
  CHECK(b.point == Point2{1, 0});
  CHECK(b.dist == doctest::Approx(std::sqrt(2.0)));
  auto c = nearest_point_on_segment({0.25, 0}, s);
  CHECK(c.point == Point2{0.25, 0});
  CHECK(c.dist == 0.0);
}

TEST_CASE("build_tessellation") {
  const auto sq = unit_square();
  SUBCASE("single vertical wire") {
    std::vector<Wire> wires{make_wire({1, 0}, -0.5)};
    auto [ws, T] = build_tessellation(sq, wires);
    REQUIRE(T.polygons.size() == 2);
    CHECK(ws.wires.size() == 1);
    CHECK(ws.all_segments.size() == 7);
    std::vector<Point2> cs = T.centroids;
    std::sort(cs.begin(), cs.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
    CHECK(cs[0].x == doctest::Approx(0.25));
    CHECK(cs[0].y == doctest::Approx(0.5));
    CHECK(cs[1].x == doctest::Approx(0.75));
    // the wire side is shared by both polygons
    std::size_t shared = 0;
    for (const auto& adj : T.side_adjacency) shared += adj.size() == 2;
    CHECK(shared == 1);
  }
  SUBCASE("no wires") {
    auto [ws, T] = build_tessellation(sq, {});
    REQUIRE(T.polygons.size() == 1);
    CHECK(T.polygons[0].size() == 4);
    CHECK(ws.all_segments.size() == 4);
  }
  SUBCASE("cross makes four squares") {
    std::vector<Wire> wires{make_wire({1, 0}, -0.5), make_wire({0, 1}, -0.5)};
    auto [ws, T] = build_tessellation(sq, wires);
    REQUIRE(T.polygons.size() == 4);
    for (const auto& P : T.polygons) CHECK(polygon_moments(P).area == doctest::Approx(0.25));
    CHECK(ws.all_segments.size() == 12);
  }
  SUBCASE("duplicate line") {
    std::vector<Wire> wires{make_wire({1, 0}, -0.5), make_wire({-2, 0}, 1.0)};
    CHECK_THROWS_AS(build_tessellation(sq, wires), DegenerateWire);
  }
  SUBCASE("line outside is dropped") {
    std::vector<Wire> wires{make_wire({1, 0}, -3.0), make_wire({0, 1}, -0.25)};
    auto [ws, T] = build_tessellation(sq, wires);
    CHECK(ws.dropped == std::vector<std::size_t>{0});
    CHECK(T.polygons.size() == 2);
  }
  SUBCASE("partition property on random arrangements") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto X = wirecov::testing::random_convex_polygon(rng, 12, 5);
      std::vector<Wire> wires;
      for (int w = 0; w < 3; ++w) {
        const double th = U(rng) * M_PI;
        const Vec2 n{std::cos(th), std::sin(th)};
        const Point2 through = wirecov::testing::sample_in(X, rng);
        wires.push_back(make_wire(n, -dot(n, through)));
      }
      auto [ws, T] = build_tessellation(X, wires);
      double area = 0.0;
      for (std::size_t k = 0; k < T.polygons.size(); ++k) {
        area += polygon_moments(T.polygons[k]).area;
        CHECK(T.polygons[k].contains(T.centroids[k], -1e-12));  // strictly interior
        for (const auto& s : T.sides[k]) {
          if (s.owner.kind == SideOwner::Kind::Wire) {
            const Wire& w = ws.wires[s.owner.index];
            CHECK(std::abs(w.eval(s.seg.a)) < 1e-9);
            CHECK(std::abs(w.eval(s.seg.b)) < 1e-9);
          }
        }
      }
      CHECK(std::abs(area - polygon_moments(X).area) <= 1e-9 * polygon_moments(X).area);
      // every sample lies in at least one polygon, and in exactly one interior
      for (int s = 0; s < 200; ++s) {
        const Point2 p = wirecov::testing::sample_in(X, rng);
        int closed = 0, open = 0;
        for (const auto& P : T.polygons) {
          closed += P.contains(p, 1e-12);
          open += P.contains(p, -1e-9);
        }
        CHECK(closed >= 1);
        CHECK(open <= 1);
      }
      // subdivided segments meet only at endpoints
      for (std::size_t a = 0; a < ws.all_segments.size(); ++a)
        for (std::size_t b = a + 1; b < ws.all_segments.size(); ++b) {
          const Segment& sa = ws.all_segments[a];
          const Segment& sb = ws.all_segments[b];
          const Point2 mid = sb.at(0.5);
          CHECK(nearest_point_on_segment(mid, sa).dist > 1e-9);
        }
    }
  }
}

TEST_CASE("edge_voronoi_cells") {
  SUBCASE("unit square") {
    const auto cells = edge_voronoi_cells(unit_square());
    REQUIRE(cells.size() == 4);
    CHECK(same_vertices(cells[0], {{0, 0}, {1, 0}, {0.5, 0.5}}));
    for (const auto& c : cells) CHECK(polygon_moments(c).area == doctest::Approx(0.25));
  }
  SUBCASE("equilateral triangle meets at the incenter") {
    const double h = std::sqrt(3.0) / 2.0;
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0.5, h}});
    const auto cells = edge_voronoi_cells(tri);
    const Point2 incenter{0.5, h / 3.0};
    for (const auto& c : cells) {
      REQUIRE(c.size() == 3);
      bool has = false;
      for (auto v : c.vertices()) has = has || distance(v, incenter) < 1e-12;
      CHECK(has);
    }
  }
  SUBCASE("random polygons: samples land in the cell of their nearest side") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
      const auto P = wirecov::testing::random_convex_polygon(rng, 12, 5);
      const auto cells = edge_voronoi_cells(P);
      double area = 0.0;
      for (const auto& c : cells) area += polygon_moments(c).area;
      CHECK(std::abs(area - polygon_moments(P).area) <= 1e-9 * area);
      for (std::size_t j = 0; j < P.size(); ++j) {
        // l_j is an edge of V_j
        CHECK(cells[j].contains(P.edge(j).at(0.5), 1e-12));
      }
      int mismatches = 0;
      for (int s = 0; s < 10000; ++s) {
        const Point2 p = wirecov::testing::sample_in(P, rng);
        // brute-force nearest side, then check the cell contains the point
        double best = 1e300;
        std::size_t arg = 0;
        for (std::size_t j = 0; j < P.size(); ++j) {
          const double d = nearest_point_on_segment(p, P.edge(j)).dist;
          if (d < best) {
            best = d;
            arg = j;
          }
        }
        mismatches += !cells[arg].contains(p, 1e-12);
        CHECK(nearest_side(P, p) == arg);
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("point_locate") {
  std::vector<Wire> wires{make_wire({1, 0}, -0.5)};
  auto [ws, T] = build_tessellation(unit_square(), wires);
  const std::size_t k = T.centroids[0].x < 0.5 ? 0 : 1;
  const RegionIndex r = point_locate(T, {0.25, 0.1});
  CHECK(r.k == k);
  const Side& s = T.sides[r.k][r.j];
  CHECK(s.seg.a.y == doctest::Approx(0.0));
  CHECK(s.seg.b.y == doctest::Approx(0.0));

  CHECK_THROWS_AS(point_locate(T, T.centroids[1]), ApexExcluded);
  CHECK_THROWS_AS(point_locate(T, {1.5, 0.5}), OutOfWorkspace);

  // a point on the shared wire belongs to both polygons; the smaller index wins
  const RegionIndex on_wire = point_locate(T, {0.5, 0.3});
  CHECK(on_wire.k == 0);
  // the spoke from a centroid to a vertex is shared by two fan triangles
  const Point2 G = T.centroids[0];
  const Point2 v = T.polygons[0][2];
  const RegionIndex spoke = point_locate(T, G + 0.5 * (v - G));
  CHECK(spoke.j == 1);
}
