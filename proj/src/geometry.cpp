#include "wirecov/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "wirecov/errors.hpp"

namespace wirecov {

namespace {

double bbox_diameter(std::span<const Point2> pts) {
  if (pts.empty()) return 0.0;
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

double signed_area(std::span<const Point2> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

/// Vertex list plus the label of the edge leaving each vertex. Labels >= 0
/// are wire indices; label -(e+1) marks boundary edge e of the workspace.
struct LabeledPolygon {
  std::vector<Point2> v;
  std::vector<long> label;
};

void simplify(LabeledPolygon& P, double eps) {
  bool changed = true;
  while (changed && P.v.size() >= 3) {
    changed = false;
    const std::size_t n = P.v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t nx = (i + 1) % n;
      if (distance(P.v[i], P.v[nx]) <= eps) {
        // edge i is degenerate: drop its start vertex, the incoming edge survives
        P.v.erase(P.v.begin() + static_cast<long>(i));
        P.label.erase(P.label.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
      const std::size_t pv = (i + n - 1) % n;
      const Vec2 e1 = P.v[i] - P.v[pv];
      const Vec2 e2 = P.v[nx] - P.v[i];
      if (std::abs(cross(e1, e2)) <= eps * (norm(e1) + norm(e2)) && dot(e1, e2) > 0) {
        P.v.erase(P.v.begin() + static_cast<long>(i));
        P.label.erase(P.label.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
}

std::optional<LabeledPolygon> clip_labeled(const LabeledPolygon& P, Vec2 n, double c, long new_label,
                                           double eps) {
  LabeledPolygon out;
  const std::size_t m = P.v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 p = P.v[i];
    const Point2 q = P.v[(i + 1) % m];
    const double dp = dot(n, p) - c;
    const double dq = dot(n, q) - c;
    const bool pin = dp <= eps;
    const bool qin = dq <= eps;
    if (pin) {
      out.v.push_back(p);
      out.label.push_back(P.label[i]);
    }
    if (pin != qin && std::abs(dp - dq) > 0.0) {
      const double t = dp / (dp - dq);
      const Point2 x = p + std::clamp(t, 0.0, 1.0) * (q - p);
      out.v.push_back(x);
      out.label.push_back(pin ? new_label : P.label[i]);
    }
  }
  simplify(out, eps);
  if (out.v.size() < 3) return std::nullopt;
  if (signed_area(out.v) <= eps * bbox_diameter(out.v)) return std::nullopt;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

SegmentProjection nearest_point_on_segment(Point2 p, const Segment& seg) {
  const Vec2 d = seg.b - seg.a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(p - seg.a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 q = t == 1.0 ? seg.b : seg.a + t * d;
  return {q, distance(p, q), t};
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
  for (const auto& p : vertices_)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError("non-finite vertex");
  const double scale = bbox_diameter(vertices_);
  if (!(scale > 0.0)) throw ValidationError("polygon has zero extent");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(vertices_[i], vertices_[j]) <= 1e-12 * scale)
        throw ValidationError("repeated vertex");
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (cross(e1, e2) <= -1e-12 * scale * scale)
      throw ValidationError("workspace must be strictly convex and counter-clockwise");
    turning += std::atan2(cross(e1, e2), dot(e1, e2));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6 || signed_area(vertices_) <= 0.0)
    throw ValidationError("workspace must be strictly convex and counter-clockwise");
}

std::optional<ConvexPolygon> make_polygon_unchecked(std::vector<Point2> vertices) {
  LabeledPolygon P{std::move(vertices), {}};
  P.label.assign(P.v.size(), 0);
  const double eps = 1e-12 * bbox_diameter(P.v);
  simplify(P, eps);
  if (P.v.size() < 3 || signed_area(P.v) <= eps * bbox_diameter(P.v)) return std::nullopt;
  return ConvexPolygon(std::move(P.v), ConvexPolygon::Unchecked{});
}

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, distance(vertices_[i], vertices_[j]));
  return d;
}

bool ConvexPolygon::contains(Point2 p, double tol) const {
  for (std::size_t i = 0; i < size(); ++i) {
    const Segment e = edge(i);
    const Vec2 d = e.b - e.a;
    if (cross(d, p - e.a) < -tol * norm(d)) return false;
  }
  return true;
}

std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, Vec2 n, double c) {
  LabeledPolygon P{{poly.vertices().begin(), poly.vertices().end()}, {}};
  P.label.assign(P.v.size(), 0);
  const double eps = 1e-12 * poly.diameter();
  auto out = clip_labeled(P, n, c, 0, eps * norm(n));
  if (!out) return std::nullopt;
  return make_polygon_unchecked(std::move(out->v));
}

Moments polygon_moments(std::span<const Point2> v) {
  Moments m;
  if (v.size() < 3) return m;
  const Point2 o = v[0];
  double area = 0.0;
  Vec2 first{0.0, 0.0};
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Vec2 a = v[i] - o, b = v[i + 1] - o;
    const double t = 0.5 * cross(a, b);
    area += t;
    first += (t / 3.0) * (a + b);
  }
  m.area = area;
  const Vec2 rel = area > 0.0 ? first / area : Vec2{};
  m.centroid = o + rel;
  // ∫_triangle |x|^2 = A/6 (|p|^2 + |q|^2 + |r|^2 + p·q + q·r + r·p), vertices relative to the centroid
  double polar = 0.0;
  const Point2 c = m.centroid;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Vec2 p = v[0] - c, q = v[i] - c, r = v[i + 1] - c;
    const double t = 0.5 * cross(q - p, r - p);
    polar += t / 6.0 * (dot(p, p) + dot(q, q) + dot(r, r) + dot(p, q) + dot(q, r) + dot(r, p));
  }
  m.polar_about_centroid = polar;
  return m;
}

// ---------------------------------------------------------------------------

Wire make_wire(Vec2 a, double b) {
  const double s = norm(a);
  if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(b))
    throw ValidationError("wire normal must be a finite non-zero vector");
  return Wire{a / s, b / s, {}};
}

Wire wire_through(Point2 p, Point2 q) {
  if (distance(p, q) <= 0.0) throw ValidationError("wire segment endpoints coincide");
  const Vec2 n = perp_left(q - p);
  return make_wire(n, -dot(n, p));
}

std::optional<Segment> clip_line(const ConvexPolygon& poly, const Wire& line) {
  const double eps = 1e-9 * poly.diameter();
  // The line misses the interior iff all vertices lie (weakly) on one side.
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = -dmin;
  for (const auto& v : poly.vertices()) {
    dmin = std::min(dmin, line.eval(v));
    dmax = std::max(dmax, line.eval(v));
  }
  if (!(dmin < -eps && dmax > eps)) return std::nullopt;
  std::vector<Point2> hits;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    const double da = line.eval(e.a), db = line.eval(e.b);
    if (std::abs(da) <= eps) {
      hits.push_back(e.a);
    } else if ((da < 0) != (db < 0) && std::abs(db) > eps) {
      hits.push_back(e.a + (da / (da - db)) * (e.b - e.a));
    }
  }
  if (hits.size() < 2) return std::nullopt;
  // order along the line direction so the segment is deterministic
  const Vec2 dir = perp_left(line.a);
  auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(),
                                      [&](Point2 p, Point2 q) { return dot(dir, p) < dot(dir, q); });
  return Segment{*hi, *lo}.length() > eps ? std::optional<Segment>(Segment{*lo, *hi}) : std::nullopt;
}

std::size_t Tessellation::region_count() const {
  std::size_t n = 0;
  for (const auto& s : sides) n += s.size();
  return n;
}

std::pair<WireSet, Tessellation> build_tessellation(const ConvexPolygon& X, std::span<const Wire> input) {
  WireSet ws;
  Tessellation T;
  T.workspace = X;
  T.diam = X.diameter();
  const double eps = 1e-12 * T.diam;

  // canonical sign for duplicate detection
  auto canonical = [](const Wire& w) {
    Wire c = make_wire(w.a, w.b);
    if (c.a.x < 0.0 || (c.a.x == 0.0 && c.a.y < 0.0)) {
      c.a = -c.a;
      c.b = -c.b;
    }
    return c;
  };
  std::vector<Wire> canon;
  for (std::size_t i = 0; i < input.size(); ++i) {
    Wire c = canonical(input[i]);
    for (const auto& o : canon)
      if (norm(o.a - c.a) <= 1e-9 && std::abs(o.b - c.b) <= 1e-9)
        throw DegenerateWire("wire " + std::to_string(i) + " duplicates an earlier wire line");
    canon.push_back(c);
    Wire w = make_wire(input[i].a, input[i].b);
    auto seg = clip_line(X, w);
    if (!seg) {
      ws.dropped.push_back(i);
      continue;
    }
    w.segments = {*seg};
    ws.wires.push_back(w);
    ws.input_index.push_back(i);
  }

  for (std::size_t e = 0; e < X.size(); ++e) ws.boundary_segments.push_back(X.edge(e));

  std::vector<LabeledPolygon> faces;
  {
    LabeledPolygon root{{X.vertices().begin(), X.vertices().end()}, {}};
    for (std::size_t e = 0; e < X.size(); ++e) root.label.push_back(-static_cast<long>(e) - 1);
    faces.push_back(std::move(root));
  }
  for (std::size_t wi = 0; wi < ws.wires.size(); ++wi) {
    const Wire& w = ws.wires[wi];
    std::vector<LabeledPolygon> next;
    for (auto& f : faces) {
      double dmin = std::numeric_limits<double>::infinity(), dmax = -dmin;
      for (const auto& v : f.v) {
        dmin = std::min(dmin, w.eval(v));
        dmax = std::max(dmax, w.eval(v));
      }
      const double tol = 1e-9 * T.diam;
      if (dmin < -tol && dmax > tol) {
        auto neg = clip_labeled(f, w.a, -w.b, static_cast<long>(wi), eps);
        auto pos = clip_labeled(f, -w.a, w.b, static_cast<long>(wi), eps);
        if (neg) next.push_back(std::move(*neg));
        if (pos) next.push_back(std::move(*pos));
      } else {
        next.push_back(std::move(f));
      }
    }
    faces = std::move(next);
  }

  const double seg_tol = 1e-9 * T.diam;
  auto find_segment = [&](const Segment& s) -> std::optional<std::pair<std::size_t, bool>> {
    for (std::size_t i = 0; i < ws.all_segments.size(); ++i) {
      const Segment& o = ws.all_segments[i];
      if (distance(o.a, s.a) <= seg_tol && distance(o.b, s.b) <= seg_tol) return std::pair{i, false};
      if (distance(o.a, s.b) <= seg_tol && distance(o.b, s.a) <= seg_tol) return std::pair{i, true};
    }
    return std::nullopt;
  };

  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& f = faces[k];
    auto poly = make_polygon_unchecked(f.v);
    if (!poly || poly->size() != f.v.size()) throw ValidationError("degenerate tessellation face");
    const Moments m = polygon_moments(*poly);
    T.polygons.push_back(*poly);
    T.centroids.push_back(m.centroid);
    std::vector<Side> sides;
    for (std::size_t j = 0; j < f.v.size(); ++j) {
      Side s;
      s.seg = {f.v[j], f.v[(j + 1) % f.v.size()]};
      const long lab = f.label[j];
      s.owner = lab >= 0 ? SideOwner{SideOwner::Kind::Wire, static_cast<std::size_t>(lab)}
                         : SideOwner{SideOwner::Kind::Boundary, static_cast<std::size_t>(-lab - 1)};
      if (auto hit = find_segment(s.seg)) {
        s.segment_id = hit->first;
        s.reversed = hit->second;
        T.side_adjacency[s.segment_id].push_back({k, j});
      } else {
        s.segment_id = ws.all_segments.size();
        s.reversed = false;
        ws.all_segments.push_back(s.seg);
        ws.segment_owner.push_back(s.owner);
        T.side_adjacency.push_back({RegionIndex{k, j}});
      }
      sides.push_back(s);
    }
    T.sides.push_back(std::move(sides));
  }
  return {std::move(ws), std::move(T)};
}

std::vector<ConvexPolygon> edge_voronoi_cells(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<Vec2> normal(n);
  std::vector<double> offset(n);  // d_i(x) = normal_i·x - offset_i >= 0 inside
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = poly.edge(i);
    normal[i] = perp_left(e.tangent());
    offset[i] = dot(normal[i], e.a);
  }
  std::vector<ConvexPolygon> cells;
  cells.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<ConvexPolygon> cell = poly;
    for (std::size_t i = 0; i < n && cell; ++i) {
      if (i == j) continue;
      // inside a convex polygon the nearest point of a closer side is its
      // line foot, so the segment-distance cell is the line-distance cell
      const Vec2 dn = normal[j] - normal[i];
      if (norm(dn) < 1e-14) continue;
      cell = clip_halfplane(*cell, dn, offset[j] - offset[i]);
    }
    if (!cell) throw ValidationError("empty edge Voronoi cell");
    cells.push_back(std::move(*cell));
  }
  return cells;
}

std::size_t nearest_side(const ConvexPolygon& poly, Point2 p) {
  std::size_t best = 0;
  double bestd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double d = nearest_point_on_segment(p, poly.edge(i)).dist;
    if (d < bestd) {
      bestd = d;
      best = i;
    }
  }
  return best;
}

bool triangle_contains(Point2 a, Point2 b, Point2 c, Point2 p, double tol) {
  const auto side_ok = [&](Point2 u, Point2 v) {
    const Vec2 d = v - u;
    return cross(d, p - u) >= -tol * norm(d);
  };
  return side_ok(a, b) && side_ok(b, c) && side_ok(c, a);
}

std::size_t polygon_locate(const Tessellation& T, Point2 p) {
  const double tol = T.tol();
  if (!T.workspace.contains(p, tol)) throw OutOfWorkspace("point outside the workspace");
  for (std::size_t k = 0; k < T.polygons.size(); ++k)
    if (T.polygons[k].contains(p, tol)) return k;
  // numerically between faces: pick the least-violated one
  std::size_t best = 0;
  double bestv = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < T.polygons.size(); ++k) {
    double v = 0.0;
    for (std::size_t j = 0; j < T.polygons[k].size(); ++j) {
      const Segment e = T.polygons[k].edge(j);
      v = std::max(v, -cross(e.b - e.a, p - e.a) / e.length());
    }
    if (v < bestv) {
      bestv = v;
      best = k;
    }
  }
  return best;
}

RegionIndex point_locate(const Tessellation& T, Point2 p) {
  const std::size_t k0 = polygon_locate(T, p);
  const double tol = T.tol();
  for (std::size_t k = k0; k < T.polygons.size(); ++k) {
    if (!T.polygons[k].contains(p, tol)) continue;
    const Point2 G = T.centroids[k];
    if (distance(p, G) <= 1e-12 * T.diam) throw ApexExcluded("point coincides with a polygon centroid");
    for (std::size_t j = 0; j < T.sides[k].size(); ++j) {
      const Segment& s = T.sides[k][j].seg;
      if (triangle_contains(s.a, s.b, G, p, tol)) return {k, j};
    }
  }
  // fallback for points numerically outside every fan triangle of k0
  const Point2 G = T.centroids[k0];
  if (distance(p, G) <= 1e-12 * T.diam) throw ApexExcluded("point coincides with a polygon centroid");
  std::size_t best = 0;
  double bestv = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < T.sides[k0].size(); ++j) {
    const Segment& s = T.sides[k0][j].seg;
    double v = 0.0;
    for (auto [u, w] : {std::pair{s.a, s.b}, std::pair{s.b, G}, std::pair{G, s.a}})
      v = std::max(v, -cross(w - u, p - u) / distance(u, w));
    if (v < bestv) {
      bestv = v;
      best = j;
    }
  }
  return {k0, best};
}

}  // namespace wirecov
