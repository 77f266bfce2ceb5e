#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wirecov/engine.hpp"

namespace wirecov {

/// Scenario file (JSON):
///   workspace  [[x, y], ...] CCW
///   wires      [{"a": [ax, ay], "b": b} | {"segment": [[x1, y1], [x2, y2]]}, ...]
///   robots     [[x, y], ...]
///   params     {"k_p", "dt", "eps", "tau", "max_steps", "seed"} (all optional)
/// Unknown keys are errors. Syntax and schema problems throw ParseError,
/// geometric ones ValidationError.
Scenario parse_scenario_text(const std::string& text, const std::string& source = "<scenario>");
Scenario parse_scenario(const std::string& path);

/// 12 significant digits, the only number format used in output files.
std::string format_number(double v);
/// v rounded to what format_number prints.
double round12(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
void write_metrics_csv(std::ostream& os, const Trajectory& tr);

struct TrajectoryRow {
  double t = 0.0;
  std::size_t robot = 0;
  Point2 virt;
  Point2 wire;
  char phase = 'A';
};
/// Reads what write_trajectory_csv wrote; ParseError with the line number on
/// malformed or non-finite fields.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& is);

}  // namespace wirecov
