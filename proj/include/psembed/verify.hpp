// Independent embedding verifier: quadratic-time checks over the drawn
// segments, plus the representative-tree region-containment test that pins
// the face structure of a plane 3-tree drawing.
#pragma once

#include "psembed/geometry.hpp"
#include "psembed/mapping.hpp"
#include "psembed/rep_tree.hpp"

#include <stdexcept>

#include <string>
#include <vector>

namespace psembed {

enum class ViolationKind {
  NotInjective,
  EdgeCrossing,
  VertexOnEdge,
  OuterFaceWrong,
  FaceStructureChanged,
};

struct Violation {
  ViolationKind kind;
  int a = -1, b = -1, c = -1, d = -1;  // vertex/edge endpoints involved
  std::string detail;
};

struct VerifierReport {
  bool valid = false;
  std::vector<Violation> violations;
};

enum class VerifyMode { Exact, Generalized };

inline VerifierReport verify(const PlaneGraphInput& graph, const std::vector<Point>& points,
                             const Mapping& mapping, VerifyMode mode) {
  const int n = graph.n;
  const int k = static_cast<int>(points.size());
  if (mapping.size() != n) throw std::invalid_argument("verify: mapping size mismatch");
  if (mode == VerifyMode::Exact && k != n)
    throw std::invalid_argument("verify: exact mode needs exactly n points");
  if (k < n) throw std::invalid_argument("verify: fewer points than vertices");
  for (int idx : mapping.point_index)
    if (idx < 0 || idx >= k) throw std::invalid_argument("verify: point index out of range");

  VerifierReport report;
  auto fail = [&](Violation v) { report.violations.push_back(std::move(v)); };

  std::vector<char> used(static_cast<std::size_t>(k), 0);
  bool injective = true;
  for (int v = 0; v < n; ++v) {
    auto& flag = used[static_cast<std::size_t>(mapping.point_index[static_cast<std::size_t>(v)])];
    if (flag) {
      injective = false;
      fail({ViolationKind::NotInjective, v, -1, -1, -1, "two vertices share a point"});
    }
    flag = 1;
  }

  auto pt = [&](int v) -> const Point& {
    return points[static_cast<std::size_t>(mapping.point_index[static_cast<std::size_t>(v)])];
  };

  // Pairwise segment checks: no two drawn edges may share a point interior to
  // either of them (shared endpoints excluded).
  if (injective) {
    const auto& edges = graph.edges;
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (segments_properly_cross(pt(edges[i].first), pt(edges[i].second),
                                    pt(edges[j].first), pt(edges[j].second)))
          fail({ViolationKind::EdgeCrossing, edges[i].first, edges[i].second, edges[j].first,
                edges[j].second, "drawn edges intersect"});
      }

    // Mapped points interior to non-incident edges; in exact mode this covers
    // every point of S. Unused points in generalized mode are allowed on edges.
    for (int v = 0; v < n; ++v) {
      const Point& p = pt(v);
      for (const auto& [eu, ev] : edges) {
        if (v == eu || v == ev) continue;
        if (point_interior_to_segment(p, pt(eu), pt(ev)))
          fail({ViolationKind::VertexOnEdge, v, eu, ev, -1, "vertex lies inside a drawn edge"});
      }
    }

    // Outer vertices must span a triangle that strictly contains every other
    // used point.
    const Point& oa = pt(graph.outer[0]);
    const Point& ob = pt(graph.outer[1]);
    const Point& oc = pt(graph.outer[2]);
    if (orient_sign(oa, ob, oc) == 0) {
      fail({ViolationKind::OuterFaceWrong, graph.outer[0], graph.outer[1], graph.outer[2], -1,
            "outer vertices are collinear"});
    } else {
      for (int v = 0; v < n; ++v) {
        if (v == graph.outer[0] || v == graph.outer[1] || v == graph.outer[2]) continue;
        if (locate_in_triangle(pt(v), oa, ob, oc).kind != PointLocationKind::Interior) {
          fail({ViolationKind::OuterFaceWrong, v, -1, -1, -1,
                "vertex not strictly inside the outer triangle"});
        }
      }
      // Face structure: every representative point sits strictly inside its
      // region triangle.
      const RepTree tree = validate_and_build(graph);
      for (const RepNode& nd : tree.nodes) {
        if (nd.is_leaf()) continue;
        const Point& rx = pt(nd.region[0]);
        const Point& ry = pt(nd.region[1]);
        const Point& rz = pt(nd.region[2]);
        if (orient_sign(rx, ry, rz) == 0 ||
            locate_in_triangle(pt(nd.rep_vertex), rx, ry, rz).kind !=
                PointLocationKind::Interior) {
          fail({ViolationKind::FaceStructureChanged, nd.rep_vertex, nd.region[0], nd.region[1],
                nd.region[2], "representative not strictly inside its region"});
        }
      }
    }
  }

  report.valid = report.violations.empty();
  return report;
}

}  // namespace psembed
