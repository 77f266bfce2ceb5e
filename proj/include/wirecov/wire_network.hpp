#pragma once

#include <array>
#include <optional>
#include <vector>

#include "wirecov/cowmap.hpp"
#include "wirecov/geometry.hpp"

namespace wirecov {

/// G as a graph: nodes are segment endpoints (junctions and corners), edges
/// are WireSet::all_segments in the same order and orientation.
struct WireNetwork {
  std::vector<Point2> nodes;
  std::vector<Segment> edges;
  std::vector<std::array<std::size_t, 2>> ends;  ///< node at edge.a, node at edge.b
  std::vector<Vec2> tangents;
  std::vector<std::vector<std::size_t>> incident;
  double tol = 0.0;

  WirePoint point_on(std::size_t edge, double s) const;
  std::optional<std::size_t> node_at(const WirePoint& p) const;
  /// Unit direction leaving `node` along `edge`.
  Vec2 outgoing(std::size_t edge, std::size_t node) const;
  /// Nearest point of G.
  WirePoint project(Point2 x) const;
};

WireNetwork build_wire_network(const WireSet& wires, double diam);

/// Rate at which p can move under control u: |u·t̂| inside an edge, the best
/// positive outgoing rate at a node (0 when every edge leads uphill).
double tangential_speed(const WireNetwork& net, const WirePoint& p, Vec2 u);

/// One Euler step along the network. Inside an edge the point moves by
/// (u·t̂)dt and stops at the edge's end. At a node it takes the incident edge
/// with the largest positive u·t̂_out (lowest index on ties) or holds.
WirePoint advance_on_network(const WireNetwork& net, const WirePoint& p, Vec2 u, double dt);

}  // namespace wirecov
