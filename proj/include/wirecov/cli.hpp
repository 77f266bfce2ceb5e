#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace wirecov {

/// Exit codes: 0 success, 1 usage or scenario parse/validation error,
/// 2 runtime failure (engine error, truncated run, failed verification).
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRuntime = 2 };

struct RunFlags {
  std::optional<long> max_steps;
  std::optional<std::uint64_t> seed;
};

/// Writes trajectory.csv, metrics.csv and final.json into out_dir. A run cut
/// short by max_steps still writes all three, then returns 2.
int cmd_run(const std::string& scenario_path, const std::string& out_dir, const RunFlags& flags, std::ostream& out,
            std::ostream& err);

struct RenderFlags {
  std::optional<double> frame;
  bool trails = false;
};
int cmd_render(const std::string& trajectory_csv, const std::string& scenario_path, const std::string& out_svg,
               const RenderFlags& flags, std::ostream& err);

struct VerifyFlags {
  double grid_step = 0.01;
  std::optional<std::string> json_path;
};
/// Runs the scenario and compares with the grid oracle (N <= 3) or reports
/// stationarity only. Returns 0 on PASS, 2 on FAIL.
int cmd_verify(const std::string& scenario_path, const VerifyFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace wirecov
