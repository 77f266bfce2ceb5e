#include "wirecov/wire_network.hpp"

#include <algorithm>
#include <limits>

namespace wirecov {

namespace {

std::size_t intern(std::vector<Point2>& nodes, Point2 p, double tol) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (distance(nodes[i], p) <= tol) return i;
  nodes.push_back(p);
  return nodes.size() - 1;
}

}  // namespace

WireNetwork build_wire_network(const WireSet& wires, double diam) {
  WireNetwork net;
  net.tol = 1e-12 * diam;
  const double merge = 1e-9 * diam;
  for (const Segment& s : wires.all_segments) {
    const std::size_t a = intern(net.nodes, s.a, merge), b = intern(net.nodes, s.b, merge);
    net.edges.push_back(s);
    net.ends.push_back({a, b});
    net.tangents.push_back(s.tangent());
  }
  net.incident.resize(net.nodes.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    net.incident[net.ends[e][0]].push_back(e);
    net.incident[net.ends[e][1]].push_back(e);
  }
  return net;
}

WirePoint WireNetwork::point_on(std::size_t edge, double s) const {
  const Segment& seg = edges[edge];
  const double len = seg.length();
  WirePoint w;
  w.segment_id = edge;
  w.arclength = std::clamp(s, 0.0, len);
  if (w.arclength <= tol) {
    w.arclength = 0.0;
    w.position = seg.a;
  } else if (w.arclength >= len - tol) {
    w.arclength = len;
    w.position = seg.b;
  } else {
    w.position = seg.a + w.arclength * tangents[edge];
  }
  return w;
}

std::optional<std::size_t> WireNetwork::node_at(const WirePoint& p) const {
  if (p.arclength <= tol) return ends[p.segment_id][0];
  if (p.arclength >= edges[p.segment_id].length() - tol) return ends[p.segment_id][1];
  return std::nullopt;
}

Vec2 WireNetwork::outgoing(std::size_t edge, std::size_t node) const {
  return ends[edge][0] == node ? tangents[edge] : -tangents[edge];
}

WirePoint WireNetwork::project(Point2 x) const {
  double best = std::numeric_limits<double>::infinity();
  WirePoint out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const SegmentProjection pr = nearest_point_on_segment(x, edges[e]);
    if (pr.dist < best) {
      best = pr.dist;
      out = point_on(e, dot(pr.point - edges[e].a, tangents[e]));
    }
  }
  return out;
}

namespace {

// best outgoing edge at a node; rate <= 0 means hold
std::pair<std::size_t, double> best_exit(const WireNetwork& net, std::size_t node, Vec2 u) {
  std::size_t best = net.incident[node].front();
  double rate = -std::numeric_limits<double>::infinity();
  for (std::size_t e : net.incident[node]) {
    const double r = dot(u, net.outgoing(e, node));
    if (r > rate) {
      rate = r;
      best = e;
    }
  }
  return {best, rate};
}

}  // namespace

double tangential_speed(const WireNetwork& net, const WirePoint& p, Vec2 u) {
  if (const auto node = net.node_at(p)) return std::max(0.0, best_exit(net, *node, u).second);
  return std::abs(dot(u, net.tangents[p.segment_id]));
}

WirePoint advance_on_network(const WireNetwork& net, const WirePoint& p, Vec2 u, double dt) {
  if (const auto node = net.node_at(p)) {
    const auto [e, rate] = best_exit(net, *node, u);
    if (rate <= 0.0) return net.point_on(p.segment_id, p.arclength);
    const double len = net.edges[e].length();
    const double step = rate * dt;
    return net.point_on(e, net.ends[e][0] == *node ? step : len - step);
  }
  const std::size_t e = p.segment_id;
  return net.point_on(e, p.arclength + dot(u, net.tangents[e]) * dt);
}

}  // namespace wirecov
