#pragma once

#include <span>
#include <vector>

#include "wirecov/geometry.hpp"
#include "wirecov/wire_network.hpp"

namespace wirecov {

struct StationarityReport {
  std::vector<double> residual;  ///< |(ρ_i - p_i)·t̂_i|, or the best outgoing rate at a node
  std::vector<bool> at_node;
  std::vector<double> constraint_value;  ///< ∏_j (a_j·p_i + b_j) over interior wires
  double cost = 0.0;

  double max_residual() const;
};

StationarityReport stationarity_residual(const WireNetwork& net, const WireSet& wires, const ConvexPolygon& X,
                                         std::span<const WirePoint> positions);

/// Grid points spaced at most `step` along every edge, shared at nodes, with
/// the graph of neighbouring points.
struct WireGrid {
  std::vector<Point2> points;
  std::vector<std::vector<std::size_t>> neighbors;
};
WireGrid build_wire_grid(const WireNetwork& net, double step);

struct OracleResult {
  std::vector<Point2> positions;
  double cost = 0.0;
  std::size_t evaluated = 0;
};

/// Exhaustive search over N-subsets of the grid. N <= 3 and at most 1e8
/// subsets, else TooLarge; step below 1e-3·diam is a ValidationError.
OracleResult brute_force_constrained_minimum(const WireNetwork& net, const ConvexPolygon& X, std::size_t N,
                                             double grid_step);

/// Snap `start` to the grid and take single-point moves to neighbouring grid
/// points while the cost drops. The result is a grid local minimizer.
OracleResult local_grid_minimum(const WireNetwork& net, const ConvexPolygon& X, std::span<const Point2> start,
                                double grid_step);

}  // namespace wirecov
