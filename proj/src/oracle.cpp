#include "wirecov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wirecov/coverage.hpp"
#include "wirecov/errors.hpp"

namespace wirecov {

double StationarityReport::max_residual() const {
  double m = 0.0;
  for (double r : residual) m = std::max(m, r);
  return m;
}

StationarityReport stationarity_residual(const WireNetwork& net, const WireSet& wires, const ConvexPolygon& X,
                                         std::span<const WirePoint> positions) {
  std::vector<Point2> p;
  for (const WirePoint& w : positions) p.push_back(w.position);
  const VoronoiPartition part = voronoi_partition(X, p, CoincidentGenerators::Share);
  StationarityReport rep;
  rep.cost = locational_cost(part, p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 d = part.centroids[i] - p[i];
    const auto node = net.node_at(positions[i]);
    rep.at_node.push_back(node.has_value());
    if (node) {
      double best = 0.0;
      for (std::size_t e : net.incident[*node]) best = std::max(best, dot(d, net.outgoing(e, *node)));
      rep.residual.push_back(best);
    } else {
      rep.residual.push_back(std::abs(dot(d, net.tangents[positions[i].segment_id])));
    }
    double c = 1.0;
    for (const Wire& w : wires.wires) c *= w.eval(p[i]);
    rep.constraint_value.push_back(c);
  }
  return rep;
}

WireGrid build_wire_grid(const WireNetwork& net, double step) {
  WireGrid g;
  std::vector<std::size_t> node_point(net.nodes.size());
  for (std::size_t n = 0; n < net.nodes.size(); ++n) {
    node_point[n] = g.points.size();
    g.points.push_back(net.nodes[n]);
  }
  g.neighbors.resize(g.points.size());
  auto link = [&g](std::size_t a, std::size_t b) {
    g.neighbors[a].push_back(b);
    g.neighbors[b].push_back(a);
  };
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Segment& s = net.edges[e];
    const auto m = static_cast<std::size_t>(std::ceil(s.length() / step - 1e-9));
    std::size_t prev = node_point[net.ends[e][0]];
    for (std::size_t i = 1; i < m; ++i) {
      g.points.push_back(s.at(static_cast<double>(i) / static_cast<double>(m)));
      g.neighbors.emplace_back();
      link(prev, g.points.size() - 1);
      prev = g.points.size() - 1;
    }
    link(prev, node_point[net.ends[e][1]]);
  }
  return g;
}

namespace {

double tuple_cost(const ConvexPolygon& X, std::span<const Point2> p) {
  return locational_cost(voronoi_partition(X, p, CoincidentGenerators::Share), p);
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

void check_step(const ConvexPolygon& X, double step) {
  if (!(step >= 1e-3 * X.diameter())) throw ValidationError("grid step must be at least 1e-3*diam");
}

}  // namespace

OracleResult brute_force_constrained_minimum(const WireNetwork& net, const ConvexPolygon& X, std::size_t N,
                                             double grid_step) {
  check_step(X, grid_step);
  if (N == 0) throw ValidationError("need at least one robot");
  if (N > 3) throw TooLarge("exhaustive search supports at most 3 robots");
  const WireGrid g = build_wire_grid(net, grid_step);
  const std::size_t M = g.points.size();
  if (M < N) throw ValidationError("grid has fewer points than robots");
  if (binomial(M, N) > 1e8) throw TooLarge("more than 1e8 grid tuples");

  OracleResult best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  std::vector<Point2> p(N);
  for (;;) {
    for (std::size_t i = 0; i < N; ++i) p[i] = g.points[idx[i]];
    const double c = tuple_cost(X, p);
    ++best.evaluated;
    if (c < best.cost) {
      best.cost = c;
      best.positions = p;
    }
    // next strictly increasing index tuple
    std::size_t i = N;
    while (i > 0 && idx[i - 1] == M - N + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < N; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

OracleResult local_grid_minimum(const WireNetwork& net, const ConvexPolygon& X, std::span<const Point2> start,
                                double grid_step) {
  check_step(X, grid_step);
  const WireGrid g = build_wire_grid(net, grid_step);
  std::vector<std::size_t> idx;
  for (const Point2& s : start) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < g.points.size(); ++i)
      if (distance(g.points[i], s) < distance(g.points[b], s)) b = i;
    idx.push_back(b);
  }
  std::vector<Point2> p;
  for (std::size_t i : idx) p.push_back(g.points[i]);
  OracleResult r;
  r.cost = tuple_cost(X, p);
  r.evaluated = 1;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::size_t best_n = idx[k];
      double best_c = r.cost;
      for (std::size_t n : g.neighbors[idx[k]]) {
        std::vector<Point2> q = p;
        q[k] = g.points[n];
        const double c = tuple_cost(X, q);
        ++r.evaluated;
        if (c < best_c) {
          best_c = c;
          best_n = n;
        }
      }
      if (best_n != idx[k]) {
        idx[k] = best_n;
        p[k] = g.points[best_n];
        r.cost = best_c;
        improved = true;
      }
    }
  }
  r.positions = p;
  return r;
}

}  // namespace wirecov
