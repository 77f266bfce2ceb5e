#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wirecov/engine.hpp"
#include "wirecov/scenario_io.hpp"

namespace wirecov {

struct RenderOptions {
  std::optional<double> frame;  ///< time to draw; the last frame when empty
  bool trails = false;
};

/// Workspace, wires (thick), Voronoi cells of the phase's generators (thin),
/// virtual robots hollow and wire robots filled with a light link between
/// them, optional trails. y points up. Throws FrameOutOfRange for an empty
/// trajectory or a time outside it.
std::string render_svg(const Scenario& s, const std::vector<TrajectoryRow>& rows, const RenderOptions& opt);

}  // namespace wirecov
