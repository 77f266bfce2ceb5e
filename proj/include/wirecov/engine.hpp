#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wirecov/coverage.hpp"
#include "wirecov/cowmap.hpp"
#include "wirecov/deformation.hpp"
#include "wirecov/wire_network.hpp"

namespace wirecov {

struct Scenario {
  ConvexPolygon workspace;
  std::vector<Wire> wires;
  std::vector<Point2> robots;
  double k_p = 1.0;
  double dt = 0.01;
  double eps = 1e-3;
  double tau = 1.0;
  long max_steps = 50000;
  std::uint64_t seed = 0;
};

/// Throws ValidationError naming the first violated condition.
void validate_scenario(const Scenario& s);

enum class Phase { A, B, C, Done };
char phase_letter(Phase p);

struct SimulationState {
  double t = 0.0;
  Phase phase = Phase::A;
  std::vector<Point2> virtual_positions;
  std::vector<WirePoint> wire_positions;
  VoronoiPartition partition;
  double cost_virtual = 0.0;
  double cost_wire = 0.0;
  std::vector<CowEval> evals;  ///< last COW evaluation per robot (warm starts)
};

/// One recorded step.
struct Frame {
  double t = 0.0;
  Phase phase = Phase::A;
  std::vector<Point2> virtual_positions;
  std::vector<Point2> wire_positions;
  double cost_virtual = 0.0;
  double cost_wire = 0.0;
  double max_speed = 0.0;  ///< largest wire-robot displacement / dt over the step
};

struct Trajectory {
  std::vector<Frame> frames;
  std::optional<double> tau_f;    ///< Phase-A exit time
  std::optional<double> t_descent;  ///< start of Phase C
  double t_end = 0.0;
  long steps_a = 0, steps_b = 0, steps_c = 0;
  bool truncated = false;  ///< some phase hit max_steps; later phases did not run
  Phase truncated_in = Phase::Done;
  std::vector<WirePoint> final_wire;
  std::vector<Point2> final_virtual;
};

/// Algorithm 1 over a fixed scenario. Holds the COW map, the wire network and
/// (after Phase A) the deformation schedule. Not copyable: the schedule
/// points into the map's tessellation.
class Engine {
 public:
  explicit Engine(Scenario s);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const Scenario& scenario() const { return sc_; }
  const CowMap& cow() const { return cow_; }
  const WireNetwork& network() const { return net_; }
  const DeformationSchedule* schedule() const { return sched_ ? &*sched_ : nullptr; }

  SimulationState initial_state() const;

  /// Each returns false when max_steps ran out (the state is left where it
  /// stopped). Frames are appended to `out`.
  bool run_phase_a(SimulationState& s, Trajectory& out);
  bool run_phase_b(SimulationState& s, Trajectory& out);
  bool run_phase_c(SimulationState& s, Trajectory& out);

  Trajectory run();

 private:
  void refresh_costs(SimulationState& s) const;
  void record(const SimulationState& s, const std::vector<Point2>& before, double dt, Trajectory& out) const;

  Scenario sc_;
  CowMap cow_;
  WireNetwork net_;
  std::optional<DeformationSchedule> sched_;
};

Trajectory run_algorithm1(const Scenario& s);

/// 50·k_p·diam(X)
double velocity_cap(const Scenario& s);

}  // namespace wirecov
