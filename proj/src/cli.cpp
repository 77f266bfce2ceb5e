#include "wirecov/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "wirecov/engine.hpp"
#include "wirecov/errors.hpp"
#include "wirecov/oracle.hpp"
#include "wirecov/scenario_io.hpp"
#include "wirecov/svg.hpp"

namespace wirecov {

using json = nlohmann::json;

namespace {

bool is_input_error(const Error& e) {
  return e.kind() == "ParseError" || e.kind() == "ValidationError" || e.kind() == "DegenerateWire" ||
         e.kind() == "OutOfWorkspace";
}

json pt(Point2 p) { return json::array({round12(p.x), round12(p.y)}); }

json opt_time(const std::optional<double>& t) { return t ? json(round12(*t)) : json(nullptr); }

void warn_dropped(const Engine& e, std::ostream& err) {
  for (std::size_t i : e.cow().wires().dropped)
    err << "warning: wire dropped: wires[" << i << "] misses the workspace interior\n";
}

// scenario + engine construction; input problems map to exit code 1
std::unique_ptr<Engine> load(const std::string& path, const RunFlags* flags, std::ostream& err, int& code) {
  try {
    Scenario s = parse_scenario(path);
    if (flags && flags->max_steps) s.max_steps = *flags->max_steps;
    if (flags && flags->seed) s.seed = *flags->seed;
    validate_scenario(s);
    auto e = std::make_unique<Engine>(std::move(s));
    warn_dropped(*e, err);
    return e;
  } catch (const Error& ex) {
    err << ex.what() << '\n';
    code = is_input_error(ex) ? kExitUsage : kExitRuntime;
    return nullptr;
  }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + p.string());
  os << text;
}

}  // namespace

int cmd_run(const std::string& scenario_path, const std::string& out_dir, const RunFlags& flags, std::ostream& out,
            std::ostream& err) {
  int code = kExitOk;
  auto engine = load(scenario_path, &flags, err, code);
  if (!engine) return code;
  Trajectory tr;
  try {
    tr = engine->run();
  } catch (const Error& ex) {
    err << ex.what() << '\n';
    return kExitRuntime;
  }

  const Scenario& sc = engine->scenario();
  const StationarityReport rep =
      stationarity_residual(engine->network(), engine->cow().wires(), sc.workspace, tr.final_wire);

  json fin;
  fin["status"] = tr.truncated ? "MaxStepsExceeded" : "ok";
  fin["truncated_in"] = tr.truncated ? json(std::string(1, phase_letter(tr.truncated_in))) : json(nullptr);
  fin["seed"] = sc.seed;
  fin["phase_times"] = {{"tau_f", opt_time(tr.tau_f)},
                        {"descent_start", opt_time(tr.t_descent)},
                        {"end", round12(tr.t_end)}};
  fin["steps"] = {{"A", tr.steps_a}, {"B", tr.steps_b}, {"C", tr.steps_c}};
  fin["termination"] = tr.truncated ? "max_steps" : "tangential speed below eps";
  fin["cost_virtual"] = round12(tr.frames.back().cost_virtual);
  fin["cost_wire"] = round12(tr.frames.back().cost_wire);
  fin["max_residual"] = round12(rep.max_residual());
  json robots = json::array();
  for (std::size_t i = 0; i < tr.final_wire.size(); ++i)
    robots.push_back({{"id", i},
                      {"virtual", pt(tr.final_virtual[i])},
                      {"wire", pt(tr.final_wire[i].position)},
                      {"segment", tr.final_wire[i].segment_id},
                      {"residual", round12(rep.residual[i])},
                      {"at_node", static_cast<bool>(rep.at_node[i])}});
  fin["robots"] = robots;
  json dropped = json::array();
  for (std::size_t i : engine->cow().wires().dropped) dropped.push_back(i);
  fin["dropped_wires"] = dropped;

  try {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream t, m;
    write_trajectory_csv(t, tr);
    write_metrics_csv(m, tr);
    write_file(dir / "trajectory.csv", t.str());
    write_file(dir / "metrics.csv", m.str());
    write_file(dir / "final.json", fin.dump(2) + "\n");
  } catch (const std::exception& ex) {
    err << ex.what() << '\n';
    return kExitRuntime;
  }

  if (tr.truncated) {
    err << "MaxStepsExceeded: phase " << phase_letter(tr.truncated_in) << " reached max_steps = " << sc.max_steps
        << "; partial output written\n";
    return kExitRuntime;
  }
  out << "frames " << tr.frames.size() << ", tau_f " << format_number(*tr.tau_f) << ", end "
      << format_number(tr.t_end) << ", cost " << format_number(tr.frames.back().cost_wire) << ", max residual "
      << format_number(rep.max_residual()) << '\n';
  return kExitOk;
}

int cmd_render(const std::string& trajectory_csv, const std::string& scenario_path, const std::string& out_svg,
               const RenderFlags& flags, std::ostream& err) {
  Scenario sc;
  std::vector<TrajectoryRow> rows;
  try {
    sc = parse_scenario(scenario_path);
    std::ifstream in(trajectory_csv);
    if (!in) throw ParseError(trajectory_csv + ": cannot open file");
    rows = read_trajectory_csv(in);
  } catch (const Error& ex) {
    err << ex.what() << '\n';
    return kExitUsage;
  }
  try {
    RenderOptions opt;
    opt.frame = flags.frame;
    opt.trails = flags.trails;
    write_file(out_svg, render_svg(sc, rows, opt));
  } catch (const std::exception& ex) {
    err << ex.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_verify(const std::string& scenario_path, const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto engine = load(scenario_path, nullptr, err, code);
  if (!engine) return code;
  const Scenario& sc = engine->scenario();
  Trajectory tr;
  try {
    tr = engine->run();
  } catch (const Error& ex) {
    err << ex.what() << '\n';
    return kExitRuntime;
  }
  const double diam = sc.workspace.diameter();
  const StationarityReport rep =
      stationarity_residual(engine->network(), engine->cow().wires(), sc.workspace, tr.final_wire);
  const double cost = tr.frames.back().cost_wire;

  json j;
  j["robots"] = sc.robots.size();
  j["final_cost"] = round12(cost);
  j["max_residual"] = round12(rep.max_residual());
  j["residual_limit"] = round12(1e-3 * diam);
  j["truncated"] = tr.truncated;
  bool pass = !tr.truncated && rep.max_residual() < 1e-3 * diam;

  out << "final cost      " << format_number(cost) << '\n';
  for (std::size_t i = 0; i < rep.residual.size(); ++i)
    out << "robot " << i << " residual " << format_number(rep.residual[i]) << (rep.at_node[i] ? " (node)" : "")
        << '\n';

  std::string mode = "oracle";
  try {
    std::vector<Point2> fin;
    for (const WirePoint& w : tr.final_wire) fin.push_back(w.position);
    const OracleResult global = brute_force_constrained_minimum(engine->network(), sc.workspace, fin.size(),
                                                                flags.grid_step);
    const OracleResult local = local_grid_minimum(engine->network(), sc.workspace, fin, flags.grid_step);
    const double gap = std::abs(cost - local.cost) / local.cost;
    out << "oracle global   " << format_number(global.cost) << " (" << global.evaluated << " tuples)\n";
    out << "oracle local    " << format_number(local.cost) << '\n';
    out << "cost gap        " << format_number(100.0 * gap) << "%\n";
    j["oracle_global_cost"] = round12(global.cost);
    j["oracle_local_cost"] = round12(local.cost);
    j["cost_gap"] = round12(gap);
    json lp = json::array();
    for (Point2 p : local.positions) lp.push_back(pt(p));
    j["oracle_local_positions"] = lp;
    pass = pass && gap < 0.01;
  } catch (const TooLarge& ex) {
    err << "warning: " << ex.what() << "; stationarity-only mode\n";
    mode = "stationarity-only";
  } catch (const ValidationError& ex) {
    err << ex.what() << '\n';
    return kExitUsage;
  }
  j["mode"] = mode;
  j["pass"] = pass;
  out << "mode            " << mode << '\n';
  out << (pass ? "PASS" : "FAIL") << '\n';
  if (flags.json_path) {
    try {
      write_file(*flags.json_path, j.dump(2) + "\n");
    } catch (const std::exception& ex) {
      err << ex.what() << '\n';
      return kExitRuntime;
    }
  }
  return pass ? kExitOk : kExitRuntime;
}

}  // namespace wirecov
