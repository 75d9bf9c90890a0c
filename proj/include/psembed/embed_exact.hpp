// Point-set embeddability of a plane 3-tree on exactly n points.
//
// Two modes share the hull checks and the recursion over the representative
// tree. Baseline scans every point inside the current region as a candidate
// representative. Improved first confines the candidate to a small middle
// triangle via two binary searches along an edge of the region, driven by
// triangular range counting; when no slide position hits the target count
// exactly (possible only with collinear input points), the threshold position
// is pinned exactly from the crossing parameters of the points reported in
// the terminal interval.
#pragma once

#include "psembed/geometry.hpp"
#include "psembed/mapping.hpp"
#include "psembed/range_oracle.hpp"
#include "psembed/rep_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace psembed {

enum class EmbedMode { Baseline, Improved };
enum class NoEmbeddingReason { HullNotThree, HullBoundaryOccupied, NoValidRepresentative };

struct AlgoStats {
  std::uint64_t recursion_nodes = 0;
  std::uint64_t count_queries = 0;
  std::uint64_t report_queries = 0;
  std::uint64_t candidates_checked = 0;
  std::uint64_t binary_search_steps = 0;
  std::uint64_t max_bisection_steps_node = 0;
  // Nodes whose candidate pool exceeded 2*(n2'+1); can only happen off
  // general position and is measured rather than bounded.
  std::uint64_t candidate_overrun_nodes = 0;

  void merge(const AlgoStats& o) {
    recursion_nodes += o.recursion_nodes;
    count_queries += o.count_queries;
    report_queries += o.report_queries;
    candidates_checked += o.candidates_checked;
    binary_search_steps += o.binary_search_steps;
    max_bisection_steps_node = std::max(max_bisection_steps_node, o.max_bisection_steps_node);
    candidate_overrun_nodes += o.candidate_overrun_nodes;
  }
};

struct EmbedResult {
  std::optional<Mapping> mapping;
  std::optional<NoEmbeddingReason> reason;
  AlgoStats stats;                       // aggregated over all attempts
  std::vector<AlgoStats> attempt_stats;  // one entry per attempted outer mapping
  int successful_attempt = -1;           // index into the permutation order

  bool found() const { return mapping.has_value(); }
};

// Split points v1, v2 on segment y->z with slide parameters t1 <= t2.
struct SplitPoints {
  RatPoint v1;
  RatPoint v2;
  mpq_class t1;
  mpq_class t2;
};

// True iff no point other than the three hull corners lies on the hull
// triangle's boundary. Requires hull.size() == 3.
inline bool check_hull_boundary(const std::vector<Point>& points,
                                const std::vector<Point>& hull) {
  if (hull.size() != 3) throw std::invalid_argument("check_hull_boundary: hull must have 3 points");
  for (const Point& p : points) {
    if (p == hull[0] || p == hull[1] || p == hull[2]) continue;
    const PointLocation loc = locate_in_triangle(p, hull[0], hull[1], hull[2]);
    if (loc.kind != PointLocationKind::Interior) return false;
  }
  return true;
}

namespace detail {

inline mpq_class cross_ratio_mpq(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num);
  q /= mpq_class(den);
  return q;
}

struct ThresholdResult {
  mpq_class t;
  RatPoint v;
  i64 count_at_v = 0;
  std::uint64_t steps = 0;
  bool pinned = false;
};

// Finds a slide position v on segment anchor->far such that the triangle
// (x, v, anchor) holds the target interior count, or, failing exact equality,
// the threshold position where the count first exceeds the target. Bisection
// maintains count(lo) <= target < count(hi); the terminal interval is
// resolved exactly from the crossing parameters of the reported points.
inline ThresholdResult edge_threshold(const Point& x, const Point& anchor, const Point& far_pt,
                                      i64 target, i64 total_interior,
                                      const RangeOracle& oracle, AlgoStats* stats) {
  ThresholdResult out;
  const i64 max_abs = std::max<i64>(1, oracle.max_abs_coord());
  mpz_class n4 = mpz_class(static_cast<long>(max_abs));
  n4 = n4 * n4;
  n4 = n4 * n4;
  mpq_class eps = cross_ratio_mpq(mpz_class(1), 4 * n4);

  mpq_class lo(0), hi(1);
  i64 c_lo = 0;
  // count at t=1 is the full region interior; never queried as a triangle
  // since (x, far, anchor) is the region itself and the caller knows it.
  i64 c_hi = total_interior;

  while (hi - lo >= eps) {
    mpq_class mid = (lo + hi) / 2;
    const RatPoint v = point_on_segment(anchor, far_pt, mid);
    const i64 c = oracle.count_interior(Triangle(RatPoint(x), v, RatPoint(anchor)));
    ++out.steps;
    if (stats) {
      ++stats->binary_search_steps;
      ++stats->count_queries;
    }
    if (c == target) {
      out.t = std::move(mid);
      out.v = v;
      out.count_at_v = c;
      return out;
    }
    if (c > target) {
      hi = std::move(mid);
      c_hi = c;
    } else {
      lo = std::move(mid);
      c_lo = c;
    }
  }

  // Pin the threshold: every count change in [lo, hi] happens where segment
  // anchor->far meets a line through x and a point of S. Gather those points
  // from the closed thin triangle and take the k-th smallest crossing.
  out.pinned = true;
  const RatPoint v_lo = point_on_segment(anchor, far_pt, lo);
  const RatPoint v_hi = point_on_segment(anchor, far_pt, hi);
  const auto reported = oracle.report_closed(Triangle(RatPoint(x), v_lo, v_hi));
  if (stats) ++stats->report_queries;

  std::vector<mpq_class> crossings;
  crossings.reserve(reported.size());
  for (const Point& s : reported) {
    if (s == x) continue;
    if (orient_sign(anchor, far_pt, s) == 0) continue;  // on the slide line itself
    const mpz_class num = -(mpz_class(static_cast<long>(s.x - x.x)) *
                                mpz_class(static_cast<long>(anchor.y - x.y)) -
                            mpz_class(static_cast<long>(s.y - x.y)) *
                                mpz_class(static_cast<long>(anchor.x - x.x)));
    const mpz_class den = mpz_class(static_cast<long>(s.x - x.x)) *
                              mpz_class(static_cast<long>(far_pt.y - anchor.y)) -
                          mpz_class(static_cast<long>(s.y - x.y)) *
                              mpz_class(static_cast<long>(far_pt.x - anchor.x));
    if (sgn(den) == 0) continue;
    mpq_class ts = cross_ratio_mpq(num, den);
    if (ts < lo || ts > hi) continue;
    crossings.push_back(std::move(ts));
  }
  std::sort(crossings.begin(), crossings.end());
  const i64 k = target - c_lo + 1;
  if (k < 1 || static_cast<std::size_t>(k) > crossings.size())
    throw std::logic_error("edge_threshold: crossing bookkeeping out of range");
  out.t = crossings[static_cast<std::size_t>(k - 1)];
  out.v = point_on_segment(anchor, far_pt, out.t);
  i64 below = 0;
  for (const auto& ts : crossings)
    if (ts < out.t) ++below;
  out.count_at_v = c_lo + below;
  return out;
}

}  // namespace detail

// Finds v1, v2 on segment y->z with count(x v1 y) and count(x v2 z) matching
// n1 and n3 (or pinned at the exceed-thresholds when equality is unreachable).
inline SplitPoints find_split_points(const Point& x, const Point& y, const Point& z, i64 n1,
                                     i64 n3, const RangeOracle& oracle,
                                     AlgoStats* stats = nullptr) {
  if (n1 < 0 || n3 < 0) throw std::invalid_argument("find_split_points: negative target");
  const i64 total = oracle.count_interior(Triangle(x, y, z));  // throws if degenerate
  if (stats) ++stats->count_queries;
  if (n1 + n3 > total - 1)
    throw std::invalid_argument("find_split_points: targets exceed region count");

  const auto r1 = detail::edge_threshold(x, y, z, n1, total, oracle, stats);
  const auto r2 = detail::edge_threshold(x, z, y, n3, total, oracle, stats);

  SplitPoints sp;
  sp.v1 = r1.v;
  sp.t1 = r1.t;
  sp.t2 = 1 - r2.t;
  sp.v2 = r2.v;
  if (sp.t1 > sp.t2)
    throw std::logic_error("find_split_points: split parameters inverted");
  if (stats) {
    const std::uint64_t node_steps = r1.steps + r2.steps;
    stats->max_bisection_steps_node = std::max(stats->max_bisection_steps_node, node_steps);
  }
  return sp;
}

// The unique point u with interior counts (n1, n2, n3) against the region
// corners, or absent. Requires n2 <= min(n1, n3); candidates come from the
// closed middle triangle x v1 v2 and are checked in ascending (x, y) order.
inline std::optional<Point> find_representative_point(const Point& x, const Point& y,
                                                      const Point& z, i64 n1, i64 n2, i64 n3,
                                                      const RangeOracle& oracle,
                                                      AlgoStats* stats = nullptr) {
  if (n2 > std::min(n1, n3))
    throw std::invalid_argument("find_representative_point: middle child is not minimal");
  const SplitPoints sp = find_split_points(x, y, z, n1, n3, oracle, stats);

  std::vector<Point> candidates;
  if (sp.t1 == sp.t2) {
    // Degenerate middle: every viable candidate lies on the chord from x to
    // the common split point. Scan the smaller flank and keep chord points.
    const RatPoint xr(x);
    const Triangle flank = n1 <= n3 ? Triangle(xr, sp.v1, RatPoint(y))
                                    : Triangle(xr, sp.v2, RatPoint(z));
    for (const Point& p : oracle.report_closed(flank)) {
      if (p == x) continue;
      const RatPoint pr(p);
      if (orient_sign(xr, sp.v1, pr) != 0) continue;
      if (!detail::collinear_point_on_segment(pr, xr, sp.v1)) continue;
      candidates.push_back(p);
    }
    if (stats) ++stats->report_queries;
  } else {
    candidates = oracle.report_closed(Triangle(RatPoint(x), sp.v1, sp.v2));
    if (stats) ++stats->report_queries;
  }

  std::erase_if(candidates, [&](const Point& u) {
    return u == x || u == y || u == z ||
           locate_in_triangle(u, x, y, z).kind != PointLocationKind::Interior;
  });
  if (stats && candidates.size() > 2 * static_cast<std::size_t>(n2 + 1))
    ++stats->candidate_overrun_nodes;

  for (const Point& u : candidates) {
    if (stats) ++stats->candidates_checked;
    const i64 c1 = oracle.count_interior(Triangle(x, u, y));
    if (stats) ++stats->count_queries;
    if (c1 != n1) continue;
    const i64 c2 = oracle.count_interior(Triangle(y, u, z));
    if (stats) ++stats->count_queries;
    if (c2 != n2) continue;
    const i64 c3 = oracle.count_interior(Triangle(z, u, x));
    if (stats) ++stats->count_queries;
    if (c3 != n3) continue;
    return u;
  }
  return std::nullopt;
}

struct EmbedOptions {
  EmbedMode mode = EmbedMode::Improved;
  Backend backend = Backend::Hierarchical;
  int attempt_only = -1;  // -1: try all 6 outer mappings in order
};

namespace detail {

// The 6 candidate outer mappings: hull corners sorted ascending (x, y), then
// all permutations in lexicographic order.
inline std::array<std::array<Point, 3>, 6> outer_permutations(std::vector<Point> hull3) {
  std::sort(hull3.begin(), hull3.end());
  const Point& a = hull3[0];
  const Point& b = hull3[1];
  const Point& c = hull3[2];
  return {{{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
}

struct EmbedContext {
  const RepTree& tree;
  const std::vector<Point>& points;
  const RangeOracle& oracle;
  const std::unordered_map<Point, int, PointHash>& index_of;
  EmbedMode mode;
};

inline bool solve_attempt(const EmbedContext& ctx, const std::array<Point, 3>& outer_pts,
                          Mapping& mapping, AlgoStats& stats) {
  const RepTree& tree = ctx.tree;
  const RepNode& root = tree.node(tree.root);
  for (int i = 0; i < 3; ++i)
    mapping.point_index[static_cast<std::size_t>(root.region[static_cast<std::size_t>(i)])] =
        ctx.index_of.at(outer_pts[static_cast<std::size_t>(i)]);

  struct Frame {
    int node;
    Point px, py, pz;
  };
  std::vector<Frame> stack;
  stack.push_back({tree.root, outer_pts[0], outer_pts[1], outer_pts[2]});

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const RepNode& nd = tree.node(f.node);
    if (nd.is_leaf()) continue;
    ++stats.recursion_nodes;

    const i64 n1 = tree.node(nd.children[0]).size;
    const i64 n2 = tree.node(nd.children[1]).size;
    const i64 n3 = tree.node(nd.children[2]).size;

    std::optional<Point> u;
    if (ctx.mode == EmbedMode::Improved) {
      // Rotate corner roles cyclically so the smallest child sits in the
      // middle; rotations preserve the child/sub-triangle correspondence.
      Point X = f.px, Y = f.py, Z = f.pz;
      i64 m1 = n1, m2 = n2, m3 = n3;
      if (n2 <= n1 && n2 <= n3) {
        // already minimal in the middle
      } else if (n3 <= n1 && n3 <= n2) {
        X = f.py; Y = f.pz; Z = f.px;
        m1 = n2; m2 = n3; m3 = n1;
      } else {
        X = f.pz; Y = f.px; Z = f.py;
        m1 = n3; m2 = n1; m3 = n2;
      }
      u = find_representative_point(X, Y, Z, m1, m2, m3, ctx.oracle, &stats);
    } else {
      const auto cands = ctx.oracle.report_interior(Triangle(f.px, f.py, f.pz));
      ++stats.report_queries;
      for (const Point& cand : cands) {
        ++stats.candidates_checked;
        const i64 c1 = ctx.oracle.count_interior(Triangle(f.px, cand, f.py));
        ++stats.count_queries;
        if (c1 != n1) continue;
        const i64 c2 = ctx.oracle.count_interior(Triangle(f.py, cand, f.pz));
        ++stats.count_queries;
        if (c2 != n2) continue;
        const i64 c3 = ctx.oracle.count_interior(Triangle(f.pz, cand, f.px));
        ++stats.count_queries;
        if (c3 != n3) continue;
        u = cand;
        break;
      }
    }
    if (!u) return false;

    mapping.point_index[static_cast<std::size_t>(nd.rep_vertex)] = ctx.index_of.at(*u);
    stack.push_back({nd.children[0], f.px, *u, f.py});
    stack.push_back({nd.children[1], f.py, *u, f.pz});
    stack.push_back({nd.children[2], f.pz, *u, f.px});
  }
  return true;
}

}  // namespace detail

inline EmbedResult embed_with_options(const RepTree& tree, const std::vector<Point>& points,
                                      const EmbedOptions& options) {
  if (static_cast<int>(points.size()) != tree.n)
    throw std::invalid_argument("embed: point count does not match vertex count");
  {
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("embed: duplicate points");
  }

  EmbedResult result;
  std::vector<Point> hull;
  try {
    hull = convex_hull(points);
  } catch (const std::invalid_argument&) {
    result.reason = NoEmbeddingReason::HullNotThree;
    return result;
  }
  if (hull.size() != 3) {
    result.reason = NoEmbeddingReason::HullNotThree;
    return result;
  }
  if (!check_hull_boundary(points, hull)) {
    result.reason = NoEmbeddingReason::HullBoundaryOccupied;
    return result;
  }

  const RangeOracle oracle = RangeOracle::build(points, options.backend);
  std::unordered_map<Point, int, PointHash> index_of;
  index_of.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    index_of.emplace(points[i], static_cast<int>(i));

  const auto perms = detail::outer_permutations(hull);
  const detail::EmbedContext ctx{tree, points, oracle, index_of, options.mode};

  for (int attempt = 0; attempt < 6; ++attempt) {
    if (options.attempt_only >= 0 && attempt != options.attempt_only) continue;
    AlgoStats stats;
    Mapping mapping;
    mapping.point_index.assign(static_cast<std::size_t>(tree.n), -1);
    const bool ok =
        detail::solve_attempt(ctx, perms[static_cast<std::size_t>(attempt)], mapping, stats);
    result.attempt_stats.push_back(stats);
    result.stats.merge(stats);
    if (ok) {
      result.mapping = std::move(mapping);
      result.successful_attempt = attempt;
      return result;
    }
  }
  result.reason = NoEmbeddingReason::NoValidRepresentative;
  return result;
}

inline EmbedResult embed(const RepTree& tree, const std::vector<Point>& points,
                         EmbedMode mode = EmbedMode::Improved,
                         Backend backend = Backend::Hierarchical) {
  return embed_with_options(tree, points, EmbedOptions{mode, backend, -1});
}

}  // namespace psembed
