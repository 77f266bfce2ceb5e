#include "wirecov/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wirecov/errors.hpp"

namespace wirecov {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw ParseError(source + ": " + where + ": " + what);
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& source,
               const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) fail(source, where, "unknown key '" + it.key() + "'");
  }
}

double number(const json& j, const std::string& source, const std::string& where) {
  if (!j.is_number()) fail(source, where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(source, where, "number is not finite");
  return v;
}

Point2 point(const json& j, const std::string& source, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(source, where, "expected [x, y]");
  return {number(j[0], source, where + "[0]"), number(j[1], source, where + "[1]")};
}

std::vector<Point2> points(const json& j, const std::string& source, const std::string& where) {
  if (!j.is_array()) fail(source, where, "expected a list of [x, y]");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], source, where + "[" + std::to_string(i) + "]"));
  return out;
}

Wire wire_from_segment(const ConvexPolygon& X, Point2 p, Point2 q, std::size_t i) {
  const Wire w = wire_through(p, q);
  const auto span = clip_line(X, w);
  if (!span) return w;  // misses X; dropped later with a warning
  const double tol = 1e-9 * X.diameter();
  const bool same = (distance(span->a, p) <= tol && distance(span->b, q) <= tol) ||
                    (distance(span->a, q) <= tol && distance(span->b, p) <= tol);
  if (!same)
    throw ValidationError("wires[" + std::to_string(i) + "]: segment does not span the workspace along its line");
  return w;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) fail(source, "top level", "expected an object");
  only_keys(j, {"workspace", "wires", "robots", "params"}, source, "top level");
  if (!j.contains("workspace")) fail(source, "workspace", "missing");
  if (!j.contains("robots")) fail(source, "robots", "missing");

  Scenario s;
  s.workspace = ConvexPolygon(points(j["workspace"], source, "workspace"));
  s.robots = points(j["robots"], source, "robots");

  if (j.contains("wires")) {
    const json& ws = j["wires"];
    if (!ws.is_array()) fail(source, "wires", "expected a list");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::string where = "wires[" + std::to_string(i) + "]";
      const json& w = ws[i];
      if (!w.is_object()) fail(source, where, "expected an object");
      if (w.contains("segment")) {
        only_keys(w, {"segment"}, source, where);
        const std::vector<Point2> pq = points(w["segment"], source, where + ".segment");
        if (pq.size() != 2) fail(source, where + ".segment", "expected two points");
        s.wires.push_back(wire_from_segment(s.workspace, pq[0], pq[1], i));
      } else {
        only_keys(w, {"a", "b"}, source, where);
        if (!w.contains("a") || !w.contains("b")) fail(source, where, "expected keys 'a' and 'b' or 'segment'");
        s.wires.push_back(make_wire(point(w["a"], source, where + ".a"), number(w["b"], source, where + ".b")));
      }
    }
  }

  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) fail(source, "params", "expected an object");
    only_keys(p, {"k_p", "dt", "eps", "tau", "max_steps", "seed"}, source, "params");
    if (p.contains("k_p")) s.k_p = number(p["k_p"], source, "params.k_p");
    if (p.contains("dt")) s.dt = number(p["dt"], source, "params.dt");
    if (p.contains("eps")) s.eps = number(p["eps"], source, "params.eps");
    if (p.contains("tau")) s.tau = number(p["tau"], source, "params.tau");
    if (p.contains("max_steps")) {
      if (!p["max_steps"].is_number_integer()) fail(source, "params.max_steps", "expected an integer");
      s.max_steps = p["max_steps"].get<long>();
    }
    if (p.contains("seed")) {
      if (!p["seed"].is_number_unsigned()) fail(source, "params.seed", "expected a non-negative integer");
      s.seed = p["seed"].get<std::uint64_t>();
    }
  }
  validate_scenario(s);
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,robot_id,virt_x,virt_y,wire_x,wire_y,phase\n";
  for (const Frame& f : tr.frames)
    for (std::size_t r = 0; r < f.wire_positions.size(); ++r)
      os << format_number(f.t) << ',' << r << ',' << format_number(f.virtual_positions[r].x) << ','
         << format_number(f.virtual_positions[r].y) << ',' << format_number(f.wire_positions[r].x) << ','
         << format_number(f.wire_positions[r].y) << ',' << phase_letter(f.phase) << '\n';
}

void write_metrics_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,cost_virtual,cost_wire,max_speed\n";
  for (const Frame& f : tr.frames)
    os << format_number(f.t) << ',' << format_number(f.cost_virtual) << ',' << format_number(f.cost_wire) << ','
       << format_number(f.max_speed) << '\n';
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& is) {
  std::vector<TrajectoryRow> rows;
  std::string line;
  std::size_t n = 0;
  if (!std::getline(is, line)) return rows;
  if (line != "t,robot_id,virt_x,virt_y,wire_x,wire_y,phase") throw ParseError("trajectory line 1: unexpected header");
  n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    const std::string where = "trajectory line " + std::to_string(n);
    if (f.size() != 7) throw ParseError(where + ": expected 7 fields");
    auto num = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || *end != '\0' || !std::isfinite(v)) throw ParseError(where + ": bad number '" + s + "'");
      return v;
    };
    TrajectoryRow r;
    r.t = num(f[0]);
    const double id = num(f[1]);
    if (id < 0 || id != std::floor(id)) throw ParseError(where + ": bad robot id");
    r.robot = static_cast<std::size_t>(id);
    r.virt = {num(f[2]), num(f[3])};
    r.wire = {num(f[4]), num(f[5])};
    if (f[6].size() != 1 || (f[6][0] != 'A' && f[6][0] != 'B' && f[6][0] != 'C'))
      throw ParseError(where + ": bad phase '" + f[6] + "'");
    r.phase = f[6][0];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace wirecov
