// Deterministic instance generators. Random choices go through a local
// rejection sampler over mt19937_64 so identical seeds give identical output
// on any platform.
#pragma once

#include "psembed/geometry.hpp"
#include "psembed/instance.hpp"
#include "psembed/mapping.hpp"
#include "psembed/rep_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace psembed {

namespace detail {

inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t m) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t lim = max - max % m;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= lim);
  return v % m;
}

inline i64 rng_range(std::mt19937_64& rng, i64 lo, i64 hi) {
  return lo + static_cast<i64>(rng_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Canonical direction key for collinearity hashing; coordinates must fit in
// 32 bits after gcd reduction.
inline std::uint64_t direction_key(i64 dx, i64 dy) {
  const i64 g = std::gcd(std::abs(dx), std::abs(dy));
  dx /= g;
  dy /= g;
  if (dx < 0 || (dx == 0 && dy < 0)) {
    dx = -dx;
    dy = -dy;
  }
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(dx)))
          << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(dy)));
}

// True iff adding p to pts keeps the set free of collinear triples.
inline bool keeps_general_position(const Point& p, const std::vector<Point>& pts,
                                   std::vector<std::uint64_t>& scratch) {
  scratch.clear();
  scratch.reserve(pts.size());
  for (const Point& q : pts) {
    if (q == p) return false;
    scratch.push_back(direction_key(q.x - p.x, q.y - p.y));
  }
  std::sort(scratch.begin(), scratch.end());
  return std::adjacent_find(scratch.begin(), scratch.end()) == scratch.end();
}

}  // namespace detail

// Random plane 3-tree built by n-3 insertions into uniformly random current
// regions. Outer vertices are 0, 1, 2.
inline PlaneGraphInput gen_plane3tree(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_plane3tree: n must be at least 3");
  std::mt19937_64 rng(seed);
  PlaneGraphInput g;
  g.n = n;
  g.outer = {0, 1, 2};
  g.edges = {{0, 1}, {1, 2}, {2, 0}};
  std::vector<std::array<int, 3>> regions{{0, 1, 2}};
  for (int v = 3; v < n; ++v) {
    const std::size_t idx = detail::rng_below(rng, regions.size());
    const auto [a, b, c] = regions[idx];
    g.edges.push_back({v, a});
    g.edges.push_back({v, b});
    g.edges.push_back({v, c});
    regions[idx] = {a, v, b};
    regions.push_back({b, v, c});
    regions.push_back({c, v, a});
  }
  for (auto& [u, v] : g.edges)
    if (u > v) std::swap(u, v);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

enum class YesStyle {
  GeneralPosition,  // no three points collinear
  Skewed,           // general position, lopsided decomposition
  WithCollinear,    // collinear triples planted on purpose
};

struct YesInstance {
  InstanceFile instance;
  Mapping planted;  // vertex -> point index of the construction
};

// Builds a point set and a plane 3-tree together so the instance is
// embeddable by construction, with the planted assignment recorded.
inline YesInstance gen_yes_instance(int n, std::uint64_t seed, i64 bound = 1'000'000,
                                    YesStyle style = YesStyle::GeneralPosition) {
  if (n < 3) throw std::invalid_argument("gen_yes_instance: n must be at least 3");
  if (bound < 4 || bound > coord_bound())
    throw std::invalid_argument("gen_yes_instance: coordinate bound out of range");
  std::mt19937_64 rng(seed);
  const i64 B = bound;
  const std::uint64_t budget = 4000ull * static_cast<std::uint64_t>(n) + 100000ull;
  std::uint64_t tries = 0;
  auto spend = [&]() {
    if (++tries > budget)
      throw std::runtime_error("gen_yes_instance: coordinate bound too small for n");
  };

  std::vector<Point> points{{0, 0}, {B, 0}, {0, B}};
  std::unordered_set<Point, PointHash> used(points.begin(), points.end());
  std::vector<std::uint64_t> scratch;

  auto inside_corners = [&](const Point& p) {
    return locate_in_triangle(p, points[0], points[1], points[2]).kind ==
           PointLocationKind::Interior;
  };

  auto sample_uniform_interior = [&]() -> Point {
    for (;;) {
      spend();
      const Point p(detail::rng_range(rng, 1, B - 1), detail::rng_range(rng, 1, B - 1));
      if (!inside_corners(p) || used.count(p)) continue;
      return p;
    }
  };

  for (int i = 3; i < n; ++i) {
    if (style == YesStyle::WithCollinear && points.size() >= 4 &&
        detail::rng_below(rng, 100) < 45) {
      // Plant a lattice point interior to the segment of two existing points.
      bool planted = false;
      for (int attempt = 0; attempt < 8 && !planted; ++attempt) {
        spend();
        const Point& p = points[detail::rng_below(rng, points.size())];
        const Point& q = points[detail::rng_below(rng, points.size())];
        if (p == q) continue;
        const i64 g = std::gcd(std::abs(q.x - p.x), std::abs(q.y - p.y));
        if (g < 2) continue;
        const i64 j = detail::rng_range(rng, 1, g - 1);
        const Point cand(p.x + (q.x - p.x) / g * j, p.y + (q.y - p.y) / g * j);
        if (!inside_corners(cand) || used.count(cand)) continue;
        points.push_back(cand);
        used.insert(cand);
        planted = true;
      }
      if (planted) continue;
    }
    for (;;) {
      spend();
      const Point p(detail::rng_range(rng, 1, B - 1), detail::rng_range(rng, 1, B - 1));
      if (!inside_corners(p) || used.count(p)) continue;
      if (style != YesStyle::WithCollinear && !detail::keeps_general_position(p, points, scratch))
        continue;
      points.push_back(p);
      used.insert(p);
      break;
    }
  }

  // Partition recursively, planting one representative per region.
  YesInstance out;
  out.instance.graph.n = n;
  out.instance.graph.outer = {0, 1, 2};
  out.instance.graph.edges = {{0, 1}, {1, 2}, {2, 0}};
  out.instance.expected = Expected::Embeddable;
  out.planted.point_index.assign(static_cast<std::size_t>(n), -1);
  out.planted.point_index[0] = 0;
  out.planted.point_index[1] = 1;
  out.planted.point_index[2] = 2;

  struct Region {
    int pa, pb, pc;  // point indices of the corners
    int va, vb, vc;  // vertex ids of the corners
    std::vector<int> inside;
  };
  std::vector<Region> stack;
  {
    Region root{0, 1, 2, 0, 1, 2, {}};
    for (int i = 3; i < n; ++i) root.inside.push_back(i);
    stack.push_back(std::move(root));
  }
  int next_vertex = 3;

  while (!stack.empty()) {
    Region reg = std::move(stack.back());
    stack.pop_back();
    if (reg.inside.empty()) continue;
    const Point A = points[static_cast<std::size_t>(reg.pa)];
    const Point Bp = points[static_cast<std::size_t>(reg.pb)];
    const Point C = points[static_cast<std::size_t>(reg.pc)];

    std::size_t pick;
    if (style == YesStyle::Skewed) {
      pick = 0;
      i128 best = -1;
      for (std::size_t i = 0; i < reg.inside.size(); ++i) {
        const Point& p = points[static_cast<std::size_t>(reg.inside[i])];
        const i128 d = static_cast<i128>(p.x - A.x) * (p.x - A.x) +
                       static_cast<i128>(p.y - A.y) * (p.y - A.y);
        if (best < 0 || d < best) {
          best = d;
          pick = i;
        }
      }
    } else {
      pick = detail::rng_below(rng, reg.inside.size());
    }
    const int u_idx = reg.inside[pick];
    reg.inside.erase(reg.inside.begin() + static_cast<std::ptrdiff_t>(pick));
    const Point U = points[static_cast<std::size_t>(u_idx)];

    const int vp = next_vertex++;
    out.planted.point_index[static_cast<std::size_t>(vp)] = u_idx;
    out.instance.graph.edges.push_back({reg.va, vp});
    out.instance.graph.edges.push_back({reg.vb, vp});
    out.instance.graph.edges.push_back({reg.vc, vp});

    Region sub1{reg.pa, u_idx, reg.pb, reg.va, vp, reg.vb, {}};
    Region sub2{reg.pb, u_idx, reg.pc, reg.vb, vp, reg.vc, {}};
    Region sub3{reg.pc, u_idx, reg.pa, reg.vc, vp, reg.va, {}};

    for (int w_idx : reg.inside) {
      for (;;) {
        const Point W = points[static_cast<std::size_t>(w_idx)];
        if (locate_in_triangle(W, A, U, Bp).kind == PointLocationKind::Interior) {
          sub1.inside.push_back(w_idx);
          break;
        }
        if (locate_in_triangle(W, Bp, U, C).kind == PointLocationKind::Interior) {
          sub2.inside.push_back(w_idx);
          break;
        }
        if (locate_in_triangle(W, C, U, A).kind == PointLocationKind::Interior) {
          sub3.inside.push_back(w_idx);
          break;
        }
        // On a chord of the new representative (possible only with planted
        // collinear styles): move the point elsewhere in this region.
        spend();
        const Point cand(detail::rng_range(rng, 1, B - 1), detail::rng_range(rng, 1, B - 1));
        if (used.count(cand)) continue;
        if (locate_in_triangle(cand, A, Bp, C).kind != PointLocationKind::Interior) continue;
        used.erase(W);
        used.insert(cand);
        points[static_cast<std::size_t>(w_idx)] = cand;
      }
    }
    stack.push_back(std::move(sub1));
    stack.push_back(std::move(sub2));
    stack.push_back(std::move(sub3));
  }

  for (auto& [u, v] : out.instance.graph.edges)
    if (u > v) std::swap(u, v);
  std::sort(out.instance.graph.edges.begin(), out.instance.graph.edges.end());
  out.instance.points = points;
  return out;
}

// Uniform random distinct points in [0, bound]^2; no structure guaranteed.
inline std::vector<Point> gen_point_set_uniform(int count, std::uint64_t seed, i64 bound) {
  std::mt19937_64 rng(seed);
  std::unordered_set<Point, PointHash> used;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    const Point p(detail::rng_range(rng, 0, bound), detail::rng_range(rng, 0, bound));
    if (!used.insert(p).second) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace psembed
