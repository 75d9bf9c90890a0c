// Plane 3-tree recognition and construction of its representative tree.
//
// Validation peels interior degree-3 vertices whose neighborhoods are
// triangles (lowest vertex id first for determinism), then replays the
// insertions top-down. The replay step is the real gatekeeper: every recorded
// neighbor triple must match a currently undivided region.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace psembed {

struct PlaneGraphInput {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::array<int, 3> outer{0, 1, 2};  // declared counterclockwise

  friend bool operator==(const PlaneGraphInput&, const PlaneGraphInput&) = default;
};

struct TreeBuildError : std::runtime_error {
  enum class Kind { Malformed, Disconnected, BadOuterFace, NotTriangulated };
  Kind kind;
  TreeBuildError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct RepNode {
  int rep_vertex = -1;               // -1 for leaves
  std::array<int, 3> region{};       // bounding vertex ids (x, y, z), ccw
  std::array<int, 3> children{-1, -1, -1};  // (x p y), (y p z), (z p x)
  int size = 0;                      // internal nodes in this subtree

  bool is_leaf() const { return rep_vertex < 0; }
  friend bool operator==(const RepNode&, const RepNode&) = default;
};

struct RepTree {
  int n = 0;  // vertex count of the underlying graph
  int root = 0;
  std::vector<RepNode> nodes;

  int internal_count() const { return n - 3; }
  const RepNode& node(int id) const { return nodes[static_cast<std::size_t>(id)]; }
  friend bool operator==(const RepTree&, const RepTree&) = default;
};

namespace detail {

inline std::vector<std::unordered_set<int>> adjacency_or_throw(const PlaneGraphInput& g) {
  using Kind = TreeBuildError::Kind;
  if (g.n < 3) throw TreeBuildError(Kind::Malformed, "graph needs at least 3 vertices");
  std::vector<std::unordered_set<int>> adj(static_cast<std::size_t>(g.n));
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
      throw TreeBuildError(Kind::Malformed, "edge endpoint out of range");
    if (u == v) throw TreeBuildError(Kind::Malformed, "self-loop");
    if (!adj[static_cast<std::size_t>(u)].insert(v).second)
      throw TreeBuildError(Kind::Malformed, "duplicate edge");
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  const auto [a, b, c] = g.outer;
  if (a < 0 || a >= g.n || b < 0 || b >= g.n || c < 0 || c >= g.n || a == b || b == c ||
      a == c)
    throw TreeBuildError(Kind::Malformed, "outer triple malformed");
  auto has_edge = [&](int u, int v) { return adj[static_cast<std::size_t>(u)].count(v) > 0; };
  if (!has_edge(a, b) || !has_edge(b, c) || !has_edge(c, a))
    throw TreeBuildError(Kind::BadOuterFace, "outer triple is not a triangle of the graph");
  return adj;
}

inline void check_connected(const PlaneGraphInput& g,
                            const std::vector<std::unordered_set<int>>& adj) {
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::queue<int> q;
  q.push(g.outer[0]);
  seen[static_cast<std::size_t>(g.outer[0])] = 1;
  int reached = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    ++reached;
    for (int v : adj[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        q.push(v);
      }
  }
  if (reached != g.n)
    throw TreeBuildError(TreeBuildError::Kind::Disconnected, "graph is disconnected");
}

}  // namespace detail

// Recomputes every node's size from the structure (leaf 0, internal
// 1 + children). Returns the tree with sizes filled.
inline RepTree subtree_sizes(RepTree tree) {
  // Post-order over an explicit stack; the tree can be path-shaped.
  std::vector<std::pair<int, int>> stack;  // (node, next child slot)
  stack.emplace_back(tree.root, 0);
  while (!stack.empty()) {
    auto& [id, slot] = stack.back();
    RepNode& nd = tree.nodes[static_cast<std::size_t>(id)];
    if (nd.is_leaf()) {
      nd.size = 0;
      stack.pop_back();
      continue;
    }
    if (slot < 3) {
      const int child = nd.children[static_cast<std::size_t>(slot)];
      ++slot;
      stack.emplace_back(child, 0);
      continue;
    }
    nd.size = 1;
    for (int child : nd.children) nd.size += tree.nodes[static_cast<std::size_t>(child)].size;
    stack.pop_back();
  }
  return tree;
}

// Validates that the input graph is a plane 3-tree with the declared outer
// triangle and returns its representative tree. Child order follows the
// declared counterclockwise orientation: inserting p into region (x, y, z)
// yields children (x p y), (y p z), (z p x).
inline RepTree validate_and_build(const PlaneGraphInput& g) {
  using Kind = TreeBuildError::Kind;
  auto adj = detail::adjacency_or_throw(g);

  std::size_t edge_count = 0;
  for (const auto& s : adj) edge_count += s.size();
  edge_count /= 2;
  if (edge_count != static_cast<std::size_t>(3 * g.n - 6))
    throw TreeBuildError(Kind::NotTriangulated, "edge count is not 3n-6");
  detail::check_connected(g, adj);

  std::vector<char> is_outer(static_cast<std::size_t>(g.n), 0);
  for (int v : g.outer) is_outer[static_cast<std::size_t>(v)] = 1;

  // Peel interior degree-3 vertices, lowest id first.
  std::set<int> peelable;
  for (int v = 0; v < g.n; ++v)
    if (!is_outer[static_cast<std::size_t>(v)] && adj[static_cast<std::size_t>(v)].size() == 3)
      peelable.insert(v);

  struct Removal {
    int vertex;
    std::array<int, 3> link;
  };
  std::vector<Removal> removals;
  removals.reserve(static_cast<std::size_t>(g.n - 3));

  while (static_cast<int>(removals.size()) < g.n - 3) {
    int v = -1;
    while (!peelable.empty()) {
      const int cand = *peelable.begin();
      peelable.erase(peelable.begin());
      auto& nb = adj[static_cast<std::size_t>(cand)];
      if (nb.size() != 3) continue;  // stale entry
      std::array<int, 3> link{};
      std::copy(nb.begin(), nb.end(), link.begin());
      std::sort(link.begin(), link.end());
      const bool triangle_link =
          adj[static_cast<std::size_t>(link[0])].count(link[1]) &&
          adj[static_cast<std::size_t>(link[1])].count(link[2]) &&
          adj[static_cast<std::size_t>(link[0])].count(link[2]);
      if (!triangle_link) continue;  // cannot become peelable again at degree 3
      v = cand;
      removals.push_back({cand, link});
      break;
    }
    if (v < 0)
      throw TreeBuildError(Kind::NotTriangulated,
                           "peeling stuck: no interior degree-3 vertex with triangle link");
    for (int u : adj[static_cast<std::size_t>(v)]) {
      auto& nb = adj[static_cast<std::size_t>(u)];
      nb.erase(v);
      if (!is_outer[static_cast<std::size_t>(u)] && nb.size() == 3) peelable.insert(u);
    }
    adj[static_cast<std::size_t>(v)].clear();
  }

  // Only the outer triangle may remain.
  for (int v = 0; v < g.n; ++v) {
    const auto& nb = adj[static_cast<std::size_t>(v)];
    if (is_outer[static_cast<std::size_t>(v)]) {
      if (nb.size() != 2)
        throw TreeBuildError(Kind::NotTriangulated, "residual graph is not the outer triangle");
    } else if (!nb.empty()) {
      throw TreeBuildError(Kind::NotTriangulated, "residual graph is not the outer triangle");
    }
  }

  // Replay insertions in reverse removal order, splitting leaf regions.
  RepTree tree;
  tree.n = g.n;
  tree.root = 0;
  tree.nodes.push_back(RepNode{-1, {g.outer[0], g.outer[1], g.outer[2]}, {-1, -1, -1}, 0});

  std::map<std::array<int, 3>, int> leaf_by_corners;  // sorted corner triple -> node id
  std::array<int, 3> root_key = g.outer;
  std::sort(root_key.begin(), root_key.end());
  leaf_by_corners[root_key] = 0;

  for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
    const auto found = leaf_by_corners.find(it->link);
    if (found == leaf_by_corners.end())
      throw TreeBuildError(Kind::NotTriangulated,
                           "insertion target is not a face of the partial graph");
    const int id = found->second;
    leaf_by_corners.erase(found);
    const auto region = tree.nodes[static_cast<std::size_t>(id)].region;
    const int p = it->vertex;
    tree.nodes[static_cast<std::size_t>(id)].rep_vertex = p;
    const std::array<std::array<int, 3>, 3> child_regions{{
        {region[0], p, region[1]},
        {region[1], p, region[2]},
        {region[2], p, region[0]},
    }};
    for (int k = 0; k < 3; ++k) {
      const int child_id = static_cast<int>(tree.nodes.size());
      tree.nodes[static_cast<std::size_t>(id)].children[static_cast<std::size_t>(k)] = child_id;
      tree.nodes.push_back(
          RepNode{-1, child_regions[static_cast<std::size_t>(k)], {-1, -1, -1}, 0});
      std::array<int, 3> key = child_regions[static_cast<std::size_t>(k)];
      std::sort(key.begin(), key.end());
      leaf_by_corners[key] = child_id;
    }
  }

  return subtree_sizes(std::move(tree));
}

}  // namespace psembed
