// Instance and mapping file formats.
//
// Instances are a single JSON document: vertex count, edge list, outer triple
// (counterclockwise), integer points, and an optional expectation tag.
// Mappings are either plain text ("vertex_id x y" per line) or a JSON array.
#pragma once

#include "psembed/geometry.hpp"
#include "psembed/mapping.hpp"
#include "psembed/rep_tree.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace psembed {

struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Expected { Embeddable, NotEmbeddable, Unknown };

struct InstanceFile {
  PlaneGraphInput graph;
  std::vector<Point> points;
  Expected expected = Expected::Unknown;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

namespace detail {

inline std::pair<int, int> line_col_of_offset(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline i64 json_coord(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer())
    throw InstanceError(std::string(what) + ": coordinate must be an integer");
  return j.get<i64>();
}

}  // namespace detail

inline std::string serialize_instance(const InstanceFile& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.graph.n;
  j["outer"] = inst.graph.outer;
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : inst.graph.edges) edges.push_back({u, v});
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const Point& p : inst.points) pts.push_back({p.x, p.y});
  switch (inst.expected) {
    case Expected::Embeddable: j["expected"] = "embeddable"; break;
    case Expected::NotEmbeddable: j["expected"] = "not-embeddable"; break;
    case Expected::Unknown: j["expected"] = "unknown"; break;
  }
  return j.dump(2) + "\n";
}

inline InstanceFile parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_col_of_offset(text, e.byte ? e.byte - 1 : 0);
    throw InstanceError("instance parse error at line " + std::to_string(line) + ", column " +
                        std::to_string(col) + ": " + e.what());
  }

  InstanceFile inst;
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw InstanceError("instance: missing integer field 'n'");
  inst.graph.n = j["n"].get<int>();
  if (inst.graph.n < 3) throw InstanceError("instance: n must be at least 3");

  if (!j.contains("outer") || !j["outer"].is_array() || j["outer"].size() != 3)
    throw InstanceError("instance: 'outer' must be an array of 3 vertex ids");
  for (int i = 0; i < 3; ++i)
    inst.graph.outer[static_cast<std::size_t>(i)] = j["outer"][static_cast<std::size_t>(i)].get<int>();

  if (!j.contains("edges") || !j["edges"].is_array())
    throw InstanceError("instance: 'edges' must be an array of vertex pairs");
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    if (!e.is_array() || e.size() != 2)
      throw InstanceError("instance: edge " + std::to_string(i) + " is not a pair");
    inst.graph.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }

  if (!j.contains("points") || !j["points"].is_array())
    throw InstanceError("instance: 'points' must be an array of coordinate pairs");
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const auto& p = j["points"][i];
    if (!p.is_array() || p.size() != 2)
      throw InstanceError("instance: point " + std::to_string(i) + " is not a pair");
    try {
      inst.points.emplace_back(detail::json_coord(p[0], "instance"),
                               detail::json_coord(p[1], "instance"));
    } catch (const std::out_of_range& e) {
      throw InstanceError("instance: point " + std::to_string(i) + ": " + e.what());
    }
  }
  {
    std::vector<Point> sorted = inst.points;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw InstanceError("instance: duplicate point (" + std::to_string(dup->x) + ", " +
                          std::to_string(dup->y) + ")");
  }

  if (j.contains("expected")) {
    const std::string e = j["expected"].get<std::string>();
    if (e == "embeddable") inst.expected = Expected::Embeddable;
    else if (e == "not-embeddable") inst.expected = Expected::NotEmbeddable;
    else if (e == "unknown") inst.expected = Expected::Unknown;
    else throw InstanceError("instance: unknown 'expected' value: " + e);
  }
  return inst;
}

inline InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

inline void save_instance(const InstanceFile& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write instance file: " + path);
  out << serialize_instance(inst);
}

// Mapping text format: one "vertex_id x y" line per vertex.
inline std::string serialize_mapping_text(const Mapping& m, const std::vector<Point>& points) {
  std::ostringstream out;
  for (int v = 0; v < m.size(); ++v) {
    const Point& p = points[static_cast<std::size_t>(m.point_index[static_cast<std::size_t>(v)])];
    out << v << ' ' << p.x << ' ' << p.y << '\n';
  }
  return out.str();
}

inline std::string serialize_mapping_json(const Mapping& m, const std::vector<Point>& points) {
  nlohmann::ordered_json j;
  auto& rows = j["mapping"] = nlohmann::ordered_json::array();
  for (int v = 0; v < m.size(); ++v) {
    const Point& p = points[static_cast<std::size_t>(m.point_index[static_cast<std::size_t>(v)])];
    rows.push_back({v, p.x, p.y});
  }
  return j.dump(2) + "\n";
}

// Accepts both formats; coordinates are resolved back to point indices.
inline Mapping parse_mapping(const std::string& text, const std::vector<Point>& points,
                             int n_vertices) {
  std::unordered_map<Point, int, PointHash> index_of;
  for (std::size_t i = 0; i < points.size(); ++i)
    index_of.emplace(points[i], static_cast<int>(i));

  Mapping m;
  m.point_index.assign(static_cast<std::size_t>(n_vertices), -1);
  auto assign = [&](int v, i64 x, i64 y) {
    if (v < 0 || v >= n_vertices)
      throw InstanceError("mapping: vertex id out of range: " + std::to_string(v));
    const auto it = index_of.find(Point(x, y));
    if (it == index_of.end())
      throw InstanceError("mapping: (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") is not an instance point");
    m.point_index[static_cast<std::size_t>(v)] = it->second;
  };

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InstanceError(std::string("mapping parse error: ") + e.what());
    }
    if (!j.contains("mapping") || !j["mapping"].is_array())
      throw InstanceError("mapping: missing 'mapping' array");
    for (const auto& row : j["mapping"]) {
      if (!row.is_array() || row.size() != 3)
        throw InstanceError("mapping: rows must be [vertex, x, y]");
      assign(row[0].get<int>(), row[1].get<i64>(), row[2].get<i64>());
    }
  } else {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream row(line);
      int v;
      i64 x, y;
      if (!(row >> v >> x >> y))
        throw InstanceError("mapping: malformed line " + std::to_string(line_no));
      assign(v, x, y);
    }
  }
  for (int v = 0; v < n_vertices; ++v)
    if (m.point_index[static_cast<std::size_t>(v)] < 0)
      throw InstanceError("mapping: vertex " + std::to_string(v) + " is unassigned");
  return m;
}

inline Mapping load_mapping(const std::string& path, const std::vector<Point>& points,
                            int n_vertices) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open mapping file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mapping(ss.str(), points, n_vertices);
}

}  // namespace psembed
