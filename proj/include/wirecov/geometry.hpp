#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wirecov {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

using Vec2 = Point2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
constexpr Vec2 perp_left(Vec2 a) { return {-a.y, a.x}; }

inline std::complex<double> to_complex(Point2 p) { return {p.x, p.y}; }
inline Point2 to_point(std::complex<double> z) { return {z.real(), z.imag()}; }

struct Segment {
  Point2 a;
  Point2 b;

  double length() const { return distance(a, b); }
  Point2 at(double s) const { return a + s * (b - a); }
  Vec2 tangent() const { return (b - a) / length(); }
};

struct SegmentProjection {
  Point2 point;
  double dist = 0.0;
  double param = 0.0;  ///< fraction along the segment in [0, 1]
};

SegmentProjection nearest_point_on_segment(Point2 p, const Segment& seg);

/// Counter-clockwise strictly convex polygon. Construction validates and
/// throws ValidationError ("strictly convex", ...) on bad input.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  Segment edge(std::size_t i) const { return {vertices_[i], vertices_[(i + 1) % size()]}; }

  double diameter() const;
  /// Closed-set membership with an absolute tolerance.
  bool contains(Point2 p, double tol = 0.0) const;

 private:
  struct Unchecked {};
  ConvexPolygon(std::vector<Point2> vertices, Unchecked) : vertices_(std::move(vertices)) {}
  friend std::optional<ConvexPolygon> make_polygon_unchecked(std::vector<Point2>);

  std::vector<Point2> vertices_;
};

/// Drops near-duplicate and collinear vertices; returns nullopt when the
/// remainder has no area.
std::optional<ConvexPolygon> make_polygon_unchecked(std::vector<Point2> vertices);

/// poly ∩ {x : n·x <= c}. nullopt when the intersection has zero area.
std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, Vec2 n, double c);

struct Moments {
  double area = 0.0;
  Point2 centroid;
  double polar_about_centroid = 0.0;  ///< ∫ |x - centroid|^2 dx

  /// ∫_poly |x - q|^2 dx via the parallel-axis theorem.
  double second_moment_about(Point2 q) const {
    const Vec2 d = centroid - q;
    return polar_about_centroid + area * dot(d, d);
  }
};

Moments polygon_moments(std::span<const Point2> vertices);
inline Moments polygon_moments(const ConvexPolygon& poly) { return polygon_moments(poly.vertices()); }

// ---------------------------------------------------------------------------
// Wires and the tessellation they induce.

/// The line {x : a·x + b = 0} with |a| = 1, clipped to the workspace.
struct Wire {
  Vec2 a;
  double b = 0.0;
  std::vector<Segment> segments;

  double eval(Point2 p) const { return dot(a, p) + b; }
};

/// Normalizes (a, b) so that |a| = 1. Throws ValidationError for a = 0.
Wire make_wire(Vec2 a, double b);

/// Supporting line of a segment, as a wire (unclipped).
Wire wire_through(Point2 p, Point2 q);

/// Clip of the line to the polygon interior; nullopt when the line misses
/// the interior (touching a vertex or running along an edge counts as a miss).
std::optional<Segment> clip_line(const ConvexPolygon& poly, const Wire& line);

struct SideOwner {
  enum class Kind { Wire, Boundary } kind = Kind::Boundary;
  std::size_t index = 0;  ///< wire index or boundary edge index

  friend bool operator==(const SideOwner&, const SideOwner&) = default;
};

struct WireSet {
  std::vector<Wire> wires;                ///< kept wires, indices used by SideOwner
  std::vector<std::size_t> input_index;   ///< wires[i] came from input wire input_index[i]
  std::vector<std::size_t> dropped;       ///< input indices of wires that missed the interior
  std::vector<Segment> boundary_segments;
  std::vector<Segment> all_segments;      ///< subdivided, deduplicated, interior-disjoint
  std::vector<SideOwner> segment_owner;
};

struct Side {
  Segment seg;               ///< p_kj^(1) -> p_kj^(2), polygon interior on the left
  SideOwner owner;
  std::size_t segment_id = 0;  ///< index into WireSet::all_segments
  bool reversed = false;       ///< seg runs opposite to all_segments[segment_id]
};

struct RegionIndex {
  std::size_t k = 0;
  std::size_t j = 0;
  friend auto operator<=>(const RegionIndex&, const RegionIndex&) = default;
};

struct Tessellation {
  std::vector<ConvexPolygon> polygons;
  std::vector<Point2> centroids;
  std::vector<std::vector<Side>> sides;
  std::vector<std::vector<RegionIndex>> side_adjacency;  ///< per all_segments id
  double diam = 0.0;                                     ///< diameter of the workspace
  ConvexPolygon workspace;

  double tol() const { return 1e-9 * diam; }
  std::size_t region_count() const;
};

/// Splits X by each wire line (recursive half-plane splitting). Wires that
/// miss the interior of X are dropped and reported in WireSet::dropped.
/// Throws DegenerateWire when two input lines coincide.
std::pair<WireSet, Tessellation> build_tessellation(const ConvexPolygon& X, std::span<const Wire> wires);

/// One cell per side of P (same indexing as the polygon's edges):
/// V_j = {x in P : d(x, l_j) <= d(x, l_i) for all i}.
std::vector<ConvexPolygon> edge_voronoi_cells(const ConvexPolygon& poly);

/// Side of `poly` nearest to p (segment distance, smallest index on ties).
std::size_t nearest_side(const ConvexPolygon& poly, Point2 p);

/// Triangle region T_kj = (p_kj^(1), p_kj^(2), G_k) containing p, smallest
/// (k, j) on shared boundaries. Throws OutOfWorkspace outside X and
/// ApexExcluded when p coincides with a polygon centroid.
RegionIndex point_locate(const Tessellation& T, Point2 p);

/// Polygon containing p (smallest index on shared sides).
std::size_t polygon_locate(const Tessellation& T, Point2 p);

bool triangle_contains(Point2 a, Point2 b, Point2 c, Point2 p, double tol);

}  // namespace wirecov
