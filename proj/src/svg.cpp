#include "wirecov/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wirecov/coverage.hpp"
#include "wirecov/errors.hpp"

namespace wirecov {

namespace {

struct FrameRows {
  double t = 0.0;
  char phase = 'A';
  std::vector<Point2> virt, wire;
};

std::vector<FrameRows> group(const std::vector<TrajectoryRow>& rows) {
  std::vector<FrameRows> frames;
  for (const TrajectoryRow& r : rows) {
    if (r.robot == 0 || frames.empty()) {
      frames.emplace_back();
      frames.back().t = r.t;
      frames.back().phase = r.phase;
    }
    frames.back().virt.push_back(r.virt);
    frames.back().wire.push_back(r.wire);
  }
  return frames;
}

// svg y grows downward
std::string fy(double y) { return format_number(0.0 - y); }

std::string xy(Point2 p) { return format_number(p.x) + "," + fy(p.y); }

std::string points_attr(std::span<const Point2> pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + xy(pts[i]);
  return s;
}

}  // namespace

std::string render_svg(const Scenario& s, const std::vector<TrajectoryRow>& rows, const RenderOptions& opt) {
  const std::vector<FrameRows> frames = group(rows);
  if (frames.empty()) throw FrameOutOfRange("trajectory is empty");
  std::size_t pick = frames.size() - 1;
  if (opt.frame) {
    const double t = *opt.frame;
    const double slack = 1e-9 * std::max(1.0, std::abs(frames.back().t));
    if (!(t >= frames.front().t - slack && t <= frames.back().t + slack))
      throw FrameOutOfRange("time " + format_number(t) + " outside [" + format_number(frames.front().t) + ", " +
                            format_number(frames.back().t) + "]");
    pick = 0;
    for (std::size_t i = 1; i < frames.size(); ++i)
      if (std::abs(frames[i].t - t) < std::abs(frames[pick].t - t)) pick = i;
  }
  const FrameRows& f = frames[pick];

  const ConvexPolygon& X = s.workspace;
  double x0 = X[0].x, x1 = X[0].x, y0 = X[0].y, y1 = X[0].y;
  for (Point2 p : X.vertices()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double m = 0.05 * std::max(x1 - x0, y1 - y0);
  const double d = X.diameter();
  const std::string thick = format_number(0.012 * d), thin = format_number(0.002 * d), r = format_number(0.012 * d);

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(x0 - m) << ' '
    << format_number(-y1 - m) << ' ' << format_number(x1 - x0 + 2 * m) << ' ' << format_number(y1 - y0 + 2 * m)
    << "\">\n";
  o << "<!-- t=" << format_number(f.t) << " phase=" << f.phase << " -->\n";
  o << "<polygon class=\"workspace\" points=\"" << points_attr(X.vertices()) << "\" fill=\"#fafafa\" stroke=\"#555\" "
    << "stroke-width=\"" << thin << "\"/>\n";

  const auto [ws, tess] = build_tessellation(X, s.wires);
  for (const Segment& seg : ws.all_segments)
    o << "<line class=\"wire\" x1=\"" << format_number(seg.a.x) << "\" y1=\"" << fy(seg.a.y)
      << "\" x2=\"" << format_number(seg.b.x) << "\" y2=\"" << fy(seg.b.y) << "\" stroke=\"#222\" "
      << "stroke-width=\"" << thick << "\" stroke-linecap=\"round\"/>\n";

  const std::vector<Point2>& gen = f.phase == 'C' ? f.wire : f.virt;
  try {
    const VoronoiPartition V = voronoi_partition(X, gen, CoincidentGenerators::Share);
    for (std::size_t i = 0; i < gen.size(); ++i)
      if (V.owner[i] == i)
        o << "<polygon class=\"cell\" points=\"" << points_attr(V.cells[i].vertices())
          << "\" fill=\"none\" stroke=\"#88a\" stroke-width=\"" << thin << "\"/>\n";
  } catch (const Error&) {
    // generators outside X after rounding: draw without cells
  }

  if (opt.trails) {
    const std::size_t n = f.wire.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Point2> tv, tw;
      for (const FrameRows& fr : frames) {
        if (i >= fr.wire.size()) continue;
        tv.push_back(fr.virt[i]);
        tw.push_back(fr.wire[i]);
      }
      o << "<polyline class=\"trail-virtual\" points=\"" << points_attr(tv) << "\" fill=\"none\" stroke=\"#9bd\" "
        << "stroke-width=\"" << thin << "\"/>\n";
      o << "<polyline class=\"trail-wire\" points=\"" << points_attr(tw) << "\" fill=\"none\" stroke=\"#d73\" "
        << "stroke-width=\"" << thin << "\"/>\n";
    }
  }

  for (std::size_t i = 0; i < f.wire.size(); ++i) {
    o << "<line class=\"link\" x1=\"" << format_number(f.virt[i].x) << "\" y1=\"" << fy(f.virt[i].y)
      << "\" x2=\"" << format_number(f.wire[i].x) << "\" y2=\"" << fy(f.wire[i].y)
      << "\" stroke=\"#bbb\" stroke-width=\"" << thin << "\"/>\n";
    o << "<circle class=\"virtual\" cx=\"" << format_number(f.virt[i].x) << "\" cy=\"" << fy(f.virt[i].y)
      << "\" r=\"" << r << "\" fill=\"none\" stroke=\"#26a\" stroke-width=\"" << thin << "\"/>\n";
    o << "<circle class=\"robot\" cx=\"" << format_number(f.wire[i].x) << "\" cy=\"" << fy(f.wire[i].y)
      << "\" r=\"" << r << "\" fill=\"#d73\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace wirecov
