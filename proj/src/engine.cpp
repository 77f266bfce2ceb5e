#include "wirecov/engine.hpp"

#include <cmath>
#include <random>

#include "wirecov/errors.hpp"

namespace wirecov {

void validate_scenario(const Scenario& s) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be positive and finite");
  };
  positive(s.k_p, "k_p");
  positive(s.dt, "dt");
  positive(s.eps, "eps");
  positive(s.tau, "tau");
  if (s.dt * s.k_p > 0.5) throw ValidationError("dt*k_p must be at most 0.5");
  if (s.max_steps < 1) throw ValidationError("max_steps must be at least 1");
  if (s.robots.empty()) throw ValidationError("at least one robot is required");
  const double tol = 1e-9 * s.workspace.diameter();
  for (std::size_t i = 0; i < s.robots.size(); ++i)
    if (!s.workspace.contains(s.robots[i], tol))
      throw ValidationError("robot " + std::to_string(i) + " lies outside the workspace");
}

char phase_letter(Phase p) {
  switch (p) {
    case Phase::A: return 'A';
    case Phase::B: return 'B';
    case Phase::C: return 'C';
    case Phase::Done: break;
  }
  return 'D';
}

double velocity_cap(const Scenario& s) { return 50.0 * s.k_p * s.workspace.diameter(); }

Engine::Engine(Scenario s) : sc_(std::move(s)), cow_((validate_scenario(sc_), build_cow_map(sc_.workspace, sc_.wires))) {
  net_ = build_wire_network(cow_.wires(), cow_.tessellation().diam);
}

SimulationState Engine::initial_state() const {
  SimulationState s;
  s.virtual_positions = sc_.robots;
  // coincident starts would share a Voronoi cell forever; nudge them apart
  const double diam = cow_.tessellation().diam;
  std::mt19937_64 rng(sc_.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (std::size_t i = 0; i < s.virtual_positions.size(); ++i) {
    auto clashes = [&] {
      for (std::size_t j = 0; j < i; ++j)
        if (distance(s.virtual_positions[i], s.virtual_positions[j]) <= 1e-9 * diam) return true;
      return false;
    };
    const Point2 start = s.virtual_positions[i];
    while (clashes()) {
      const double th = angle(rng);
      const Point2 q = start + 1e-6 * diam * Vec2{std::cos(th), std::sin(th)};
      if (sc_.workspace.contains(q)) s.virtual_positions[i] = q;
    }
  }
  for (const Point2& x : s.virtual_positions) {
    s.evals.push_back(cow_.evaluate(x, nullptr, true));
    s.wire_positions.push_back(s.evals.back().image);
  }
  s.partition = voronoi_partition(sc_.workspace, s.virtual_positions);
  s.cost_virtual = locational_cost(s.partition, s.virtual_positions);
  refresh_costs(s);
  return s;
}

void Engine::refresh_costs(SimulationState& s) const {
  std::vector<Point2> p;
  for (const WirePoint& w : s.wire_positions) p.push_back(w.position);
  const VoronoiPartition part = voronoi_partition(sc_.workspace, p, CoincidentGenerators::Share);
  s.cost_wire = locational_cost(part, p);
  if (s.phase == Phase::C) s.partition = part;
}

void Engine::record(const SimulationState& s, const std::vector<Point2>& before, double dt, Trajectory& out) const {
  Frame f;
  f.t = s.t;
  f.phase = s.phase;
  f.virtual_positions = s.virtual_positions;
  for (std::size_t i = 0; i < s.wire_positions.size(); ++i) {
    f.wire_positions.push_back(s.wire_positions[i].position);
    if (!before.empty()) f.max_speed = std::max(f.max_speed, distance(before[i], f.wire_positions[i]) / dt);
  }
  f.cost_virtual = s.cost_virtual;
  f.cost_wire = s.cost_wire;
  out.frames.push_back(std::move(f));
}

namespace {

std::vector<Point2> positions(const std::vector<WirePoint>& w) {
  std::vector<Point2> p;
  p.reserve(w.size());
  for (const WirePoint& x : w) p.push_back(x.position);
  return p;
}

}  // namespace

bool Engine::run_phase_a(SimulationState& s, Trajectory& out) {
  s.phase = Phase::A;
  const double t0 = s.t;
  long steps = 0;
  for (;;) {
    const std::vector<Vec2> u = lloyd_control(s.partition, s.virtual_positions, sc_.k_p);
    double umax = 0.0;
    for (const Vec2& v : u) umax = std::max(umax, norm(v));
    if (umax < sc_.eps) {
      out.tau_f = s.t;
      out.steps_a = steps;
      return true;
    }
    if (steps == sc_.max_steps) {
      out.steps_a = steps;
      return false;
    }
    const std::vector<Point2> before = positions(s.wire_positions);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Point2 x = s.virtual_positions[i] + sc_.dt * u[i];
      if (sc_.workspace.contains(x)) s.virtual_positions[i] = x;
      s.evals[i] = cow_.evaluate(s.virtual_positions[i], &s.evals[i], true);
      s.wire_positions[i] = s.evals[i].image;
    }
    ++steps;
    s.t = t0 + steps * sc_.dt;
    s.partition = voronoi_partition(sc_.workspace, s.virtual_positions);
    s.cost_virtual = locational_cost(s.partition, s.virtual_positions);
    refresh_costs(s);
    record(s, before, sc_.dt, out);
  }
}

bool Engine::run_phase_b(SimulationState& s, Trajectory& out) {
  s.phase = Phase::B;
  const double tau_f = s.t;
  sched_.emplace(cow_.tessellation(), tau_f, sc_.tau);
  const long n = std::max(1L, std::lround(sc_.tau / sc_.dt));
  const double dtb = sc_.tau / static_cast<double>(n);
  for (long i = 1; i <= n; ++i) {
    const std::vector<Point2> before = positions(s.wire_positions);
    s.t = i == n ? tau_f + sc_.tau : tau_f + sc_.tau * static_cast<double>(i) / static_cast<double>(n);
    for (std::size_t r = 0; r < s.virtual_positions.size(); ++r)
      s.wire_positions[r] = deformed_evaluate(cow_, *sched_, s.t, s.virtual_positions[r], &s.evals[r]).image;
    refresh_costs(s);
    record(s, before, dtb, out);
  }
  out.steps_b = n;
  return true;
}

bool Engine::run_phase_c(SimulationState& s, Trajectory& out) {
  s.phase = Phase::C;
  const double t0 = s.t;
  out.t_descent = t0;
  refresh_costs(s);
  long steps = 0;
  for (;;) {
    const std::vector<Point2> p = positions(s.wire_positions);
    const std::vector<Vec2> u = lloyd_control(s.partition, p, sc_.k_p);
    double vmax = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) vmax = std::max(vmax, tangential_speed(net_, s.wire_positions[i], u[i]));
    if (vmax < sc_.eps) {
      out.steps_c = steps;
      return true;
    }
    if (steps == sc_.max_steps) {
      out.steps_c = steps;
      return false;
    }
    for (std::size_t i = 0; i < u.size(); ++i)
      s.wire_positions[i] = advance_on_network(net_, s.wire_positions[i], u[i], sc_.dt);
    ++steps;
    s.t = t0 + steps * sc_.dt;
    refresh_costs(s);
    record(s, p, sc_.dt, out);
  }
}

Trajectory Engine::run() {
  Trajectory out;
  SimulationState s = initial_state();
  record(s, {}, sc_.dt, out);
  bool ok = run_phase_a(s, out);
  if (!ok) out.truncated_in = Phase::A;
  if (ok) run_phase_b(s, out);
  if (ok) {
    ok = run_phase_c(s, out);
    if (!ok) out.truncated_in = Phase::C;
  }
  out.truncated = !ok;
  if (ok) s.phase = Phase::Done;
  out.t_end = s.t;
  out.final_wire = s.wire_positions;
  out.final_virtual = s.virtual_positions;
  return out;
}

Trajectory run_algorithm1(const Scenario& s) {
  Engine e(s);
  return e.run();
}

}  // namespace wirecov
