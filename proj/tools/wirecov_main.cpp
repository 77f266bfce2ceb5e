#include <iostream>

#include "CLI11.hpp"
#include "wirecov/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wirecov: coverage control for robots restricted to straight wires"};
  app.require_subcommand(1);

  std::string scenario, out_dir, traj, svg_out, json_out;
  long max_steps = 0;
  std::uint64_t seed = 0;
  double frame = 0.0, grid_step = 0.01;
  bool trails = false;

  auto* run = app.add_subcommand("run", "simulate a scenario and write CSV/JSON output");
  run->add_option("scenario", scenario, "scenario JSON")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  auto* o_max = run->add_option("--max-steps", max_steps, "step cap per phase");
  auto* o_seed = run->add_option("--seed", seed, "RNG seed");

  auto* render = app.add_subcommand("render", "draw one frame of a trajectory as SVG");
  render->add_option("trajectory", traj, "trajectory.csv")->required();
  render->add_option("scenario", scenario, "scenario JSON")->required();
  render->add_option("--out", svg_out, "output SVG")->required();
  auto* o_frame = render->add_option("--frame", frame, "time of the frame to draw (default: last)");
  render->add_flag("--trails", trails, "draw robot trails");

  auto* verify = app.add_subcommand("verify", "run a scenario and check it against the grid oracle");
  verify->add_option("scenario", scenario, "scenario JSON")->required();
  verify->add_option("--grid-step", grid_step, "oracle grid spacing");
  auto* o_json = verify->add_option("--json", json_out, "write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wirecov::kExitUsage;
  }

  if (*run) {
    wirecov::RunFlags f;
    if (*o_max) f.max_steps = max_steps;
    if (*o_seed) f.seed = seed;
    return wirecov::cmd_run(scenario, out_dir, f, std::cout, std::cerr);
  }
  if (*render) {
    wirecov::RenderFlags f;
    if (*o_frame) f.frame = frame;
    f.trails = trails;
    return wirecov::cmd_render(traj, scenario, svg_out, f, std::cerr);
  }
  wirecov::VerifyFlags f;
  f.grid_step = grid_step;
  if (*o_json) f.json_path = json_out;
  return wirecov::cmd_verify(scenario, f, std::cout, std::cerr);
}
