// Generalized embeddability: map the n graph vertices onto some n of k >= n
// points. Top-down dynamic program over (tree node, ordered corner triple)
// with memoized truth values and stored witnesses for reconstruction.
//
// Keys are stored for internal tree nodes only; leaves resolve inline to a
// non-collinearity test, which keeps the table within n*k^3 entries.
#pragma once

#include "psembed/embed_exact.hpp"
#include "psembed/geometry.hpp"
#include "psembed/rep_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace psembed {

struct DPKey {
  int node = -1;
  int a = -1, b = -1, c = -1;  // point indices, ordered as the node's region corners

  friend bool operator==(const DPKey&, const DPKey&) = default;
};

struct DPKeyHash {
  std::size_t operator()(const DPKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t v : {static_cast<std::uint64_t>(k.node), static_cast<std::uint64_t>(k.a),
                            static_cast<std::uint64_t>(k.b), static_cast<std::uint64_t>(k.c)}) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct DPEntry {
  bool value = false;
  int witness = -1;  // point index of u when value is true
};

struct DPTable {
  std::unordered_map<DPKey, DPEntry, DPKeyHash> memo;
  std::uint64_t entries_evaluated = 0;
};

// Memoized truth value of "the subgraph of this subtree embeds with its
// region corners on points (a, b, c)". Candidate representatives are scanned
// strictly inside the corner triangle in ascending point-index order.
inline bool dp_evaluate(const DPKey& key, DPTable& table, const RepTree& tree,
                        const std::vector<Point>& points) {
  const Point& pa = points[static_cast<std::size_t>(key.a)];
  const Point& pb = points[static_cast<std::size_t>(key.b)];
  const Point& pc = points[static_cast<std::size_t>(key.c)];
  if (orient_sign(pa, pb, pc) == 0) return false;  // degenerate triple

  const RepNode& nd = tree.node(key.node);
  if (nd.is_leaf()) return true;

  if (const auto it = table.memo.find(key); it != table.memo.end()) return it->second.value;
  ++table.entries_evaluated;
  auto& entry = table.memo[key];  // pre-insert: cycles are impossible in a tree

  for (int u = 0; u < static_cast<int>(points.size()); ++u) {
    if (u == key.a || u == key.b || u == key.c) continue;
    if (locate_in_triangle(points[static_cast<std::size_t>(u)], pa, pb, pc).kind !=
        PointLocationKind::Interior)
      continue;
    const bool ok =
        dp_evaluate({nd.children[0], key.a, u, key.b}, table, tree, points) &&
        dp_evaluate({nd.children[1], key.b, u, key.c}, table, tree, points) &&
        dp_evaluate({nd.children[2], key.c, u, key.a}, table, tree, points);
    if (ok) {
      entry.value = true;
      entry.witness = u;
      return true;
    }
  }
  entry.value = false;
  return false;
}

struct GeneralEmbedStats {
  std::uint64_t entries_evaluated = 0;
  std::uint64_t triples_tried = 0;
};

// Embeds the plane 3-tree on some n of the k >= n points, or returns absent.
// Ordered top-level corner triples are tried in lexicographic index order and
// the first witness chain is reconstructed.
inline std::optional<Mapping> embed_general(const RepTree& tree, const std::vector<Point>& points,
                                            GeneralEmbedStats* stats = nullptr,
                                            DPTable* table_out = nullptr) {
  const int k = static_cast<int>(points.size());
  if (k < tree.n) throw std::invalid_argument("embed_general: fewer points than vertices");
  {
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("embed_general: duplicate points");
  }

  DPTable table;
  std::optional<DPKey> root_key;
  for (int a = 0; a < k && !root_key; ++a)
    for (int b = 0; b < k && !root_key; ++b) {
      if (b == a) continue;
      for (int c = 0; c < k; ++c) {
        if (c == a || c == b) continue;
        const DPKey key{tree.root, a, b, c};
        if (stats) ++stats->triples_tried;
        if (dp_evaluate(key, table, tree, points)) {
          root_key = key;
          break;
        }
      }
    }
  if (stats) stats->entries_evaluated = table.entries_evaluated;
  if (table_out) *table_out = table;
  if (!root_key) return std::nullopt;

  Mapping mapping;
  mapping.point_index.assign(static_cast<std::size_t>(tree.n), -1);
  std::vector<DPKey> stack{*root_key};
  while (!stack.empty()) {
    const DPKey key = stack.back();
    stack.pop_back();
    const RepNode& nd = tree.node(key.node);
    mapping.point_index[static_cast<std::size_t>(nd.region[0])] = key.a;
    mapping.point_index[static_cast<std::size_t>(nd.region[1])] = key.b;
    mapping.point_index[static_cast<std::size_t>(nd.region[2])] = key.c;
    if (nd.is_leaf()) continue;
    const auto it = table.memo.find(key);
    if (it == table.memo.end() || !it->second.value || it->second.witness < 0)
      throw std::logic_error("embed_general: missing witness during reconstruction");
    const int u = it->second.witness;
    mapping.point_index[static_cast<std::size_t>(nd.rep_vertex)] = u;
    stack.push_back({nd.children[0], key.a, u, key.b});
    stack.push_back({nd.children[1], key.b, u, key.c});
    stack.push_back({nd.children[2], key.c, u, key.a});
  }
  return mapping;
}

}  // namespace psembed
