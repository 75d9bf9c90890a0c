// Standalone SVG export: points as dots, drawn edges as segments, outer
// triangle highlighted. Coordinates are written verbatim (a y-flip transform
// handles SVG's downward axis), so emitted files round-trip exactly.
#pragma once

#include "psembed/geometry.hpp"
#include "psembed/mapping.hpp"
#include "psembed/rep_tree.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace psembed {

inline std::string render_svg(const PlaneGraphInput& graph, const std::vector<Point>& points,
                              const Mapping* mapping) {
  if (points.empty()) throw std::invalid_argument("render_svg: no points");
  i64 x0 = points[0].x, x1 = points[0].x, y0 = points[0].y, y1 = points[0].y;
  for (const Point& p : points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const i64 span = std::max<i64>({x1 - x0, y1 - y0, 1});
  const i64 pad = std::max<i64>(1, span / 20);
  const i64 dot = std::max<i64>(1, span / 200);
  const i64 stroke = std::max<i64>(1, span / 400);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (x0 - pad) << ' '
      << (-y1 - pad) << ' ' << (x1 - x0 + 2 * pad) << ' ' << (y1 - y0 + 2 * pad) << "\">\n";
  out << "<g transform=\"scale(1,-1)\">\n";

  auto pt = [&](int v) -> const Point& {
    return points[static_cast<std::size_t>(
        mapping->point_index[static_cast<std::size_t>(v)])];
  };

  if (mapping != nullptr) {
    if (mapping->size() != graph.n) throw std::invalid_argument("render_svg: mapping size");
    for (const auto& [u, v] : graph.edges) {
      out << "<line x1=\"" << pt(u).x << "\" y1=\"" << pt(u).y << "\" x2=\"" << pt(v).x
          << "\" y2=\"" << pt(v).y << "\" stroke=\"#444444\" stroke-width=\"" << stroke
          << "\"/>\n";
    }
    out << "<polygon points=\"";
    for (int i = 0; i < 3; ++i) {
      const Point& p = pt(graph.outer[static_cast<std::size_t>(i)]);
      out << p.x << ',' << p.y << (i < 2 ? " " : "");
    }
    out << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << 2 * stroke << "\"/>\n";
  }

  for (const Point& p : points)
    out << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << dot
        << "\" fill=\"#1f77b4\"/>\n";

  out << "</g>\n</svg>\n";
  return out.str();
}

inline void export_svg(const PlaneGraphInput& graph, const std::vector<Point>& points,
                       const Mapping* mapping, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_svg: cannot write " + path);
  out << render_svg(graph, points, mapping);
  if (!out) throw std::runtime_error("export_svg: write failed for " + path);
}

}  // namespace psembed
