// Triangular range counting and reporting over a fixed integer point set.
//
// Two interchangeable backends answer the same queries: a brute-force scan
// and a kd-style hierarchy whose nodes are resolved in O(1) when their
// bounding box lies entirely inside or outside the query triangle. Query
// corners may be rational; every node test clears denominators and compares
// in integers (128-bit when the cleared coefficients are small enough,
// arbitrary precision otherwise).
#pragma once

#include "psembed/geometry.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace psembed {

enum class Backend { BruteForce, Hierarchical };

struct QueryStats {
  std::uint64_t count_queries = 0;
  std::uint64_t report_queries = 0;
  std::uint64_t reported_points_total = 0;

  friend QueryStats operator-(QueryStats a, const QueryStats& b) {
    a.count_queries -= b.count_queries;
    a.report_queries -= b.report_queries;
    a.reported_points_total -= b.reported_points_total;
    return a;
  }
};

namespace detail {

inline bool mpz_to_i128(const mpz_class& v, int max_bits, i128& out) {
  if (sgn(v) == 0) {
    out = 0;
    return true;
  }
  if (static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2)) > max_bits) return false;
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  const i128 r = (static_cast<i128>(limbs[1]) << 64) | static_cast<i128>(limbs[0]);
  out = sgn(v) < 0 ? -r : r;
  return true;
}

inline int bit_length(i64 v) {
  int bits = 0;
  std::uint64_t u = static_cast<std::uint64_t>(v < 0 ? -v : v);
  while (u) {
    ++bits;
    u >>= 1;
  }
  return bits;
}

struct HomoPoint {
  mpz_class x, y, w;  // w > 0
};

inline HomoPoint to_homo(const RatPoint& p) {
  HomoPoint h;
  const mpz_class dx = p.x.get_den();
  const mpz_class dy = p.y.get_den();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
  h.w = dx / g * dy;
  h.x = p.x.get_num() * (h.w / dx);
  h.y = p.y.get_num() * (h.w / dy);
  return h;
}

// Oriented line through two homogeneous points; eval(p) has the sign of
// orient(a, b, p) for integer points p (scaled by positive factors only).
struct EdgeLine {
  mpz_class a, b, c;
  i128 fa = 0, fb = 0, fc = 0;
  bool small = false;

  // coord_bits bounds the bit length of any coordinate this line will be
  // evaluated against; the fast path keeps |a*x| + |b*y| + |c| below 2^125.
  void init(const HomoPoint& p, const HomoPoint& q, int coord_bits) {
    a = p.y * q.w - q.y * p.w;
    b = q.x * p.w - p.x * q.w;
    c = p.x * q.y - p.y * q.x;
    refresh_fast_path(coord_bits);
  }

  void negate(int coord_bits) {
    a = -a;
    b = -b;
    c = -c;
    refresh_fast_path(coord_bits);
  }

  void refresh_fast_path(int coord_bits) {
    const int ab_bits = 123 - coord_bits;
    small = ab_bits > 0 && mpz_to_i128(a, ab_bits, fa) && mpz_to_i128(b, ab_bits, fb) &&
            mpz_to_i128(c, 123, fc);
  }

  int eval_sign(i64 px, i64 py, mpz_class& t0, mpz_class& t1) const {
    if (small) {
      const i128 v = fa * px + fb * py + fc;
      return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    mpz_mul_si(t0.get_mpz_t(), a.get_mpz_t(), static_cast<long>(px));
    mpz_mul_si(t1.get_mpz_t(), b.get_mpz_t(), static_cast<long>(py));
    mpz_add(t0.get_mpz_t(), t0.get_mpz_t(), t1.get_mpz_t());
    mpz_add(t0.get_mpz_t(), t0.get_mpz_t(), c.get_mpz_t());
    return sgn(t0);
  }
};

inline i64 clamped_floor_div(const mpz_class& num, const mpz_class& den, bool ceil_mode) {
  mpz_class q;
  if (ceil_mode)
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  else
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!q.fits_slong_p()) return sgn(q) > 0 ? kMaxCoordBound : -kMaxCoordBound;
  const long v = q.get_si();
  if (v > kMaxCoordBound) return kMaxCoordBound;
  if (v < -kMaxCoordBound) return -kMaxCoordBound;
  return v;
}

// Per-query precomputation: edge functionals normalized so that the strict
// interior is the all-positive cell, plus an integer outer bounding box.
class TriangleQuery {
 public:
  explicit TriangleQuery(const Triangle& t, i64 max_abs_coord = kDefaultCoordBound) {
    const int coord_bits = std::max(1, bit_length(max_abs_coord));
    const HomoPoint h[3] = {to_homo(t.a), to_homo(t.b), to_homo(t.c)};
    mpz_class det = h[0].x * (h[1].y * h[2].w - h[2].y * h[1].w) -
                    h[0].y * (h[1].x * h[2].w - h[2].x * h[1].w) +
                    h[0].w * (h[1].x * h[2].y - h[2].x * h[1].y);
    const int sigma = sgn(det);
    if (sigma == 0) throw std::invalid_argument("range query: degenerate triangle");
    for (int i = 0; i < 3; ++i) {
      edges_[i].init(h[i], h[(i + 1) % 3], coord_bits);
      if (sigma < 0) edges_[i].negate(coord_bits);
    }
    bx_lo_ = by_lo_ = kMaxCoordBound;
    bx_hi_ = by_hi_ = -kMaxCoordBound;
    for (const auto& p : h) {
      bx_lo_ = std::min(bx_lo_, clamped_floor_div(p.x, p.w, false));
      bx_hi_ = std::max(bx_hi_, clamped_floor_div(p.x, p.w, true));
      by_lo_ = std::min(by_lo_, clamped_floor_div(p.y, p.w, false));
      by_hi_ = std::max(by_hi_, clamped_floor_div(p.y, p.w, true));
    }
  }

  // -1 outside, 0 on boundary, +1 strictly interior.
  int classify(const Point& p) const {
    if (p.x < bx_lo_ || p.x > bx_hi_ || p.y < by_lo_ || p.y > by_hi_) return -1;
    int zeros = 0;
    for (const auto& e : edges_) {
      const int s = e.eval_sign(p.x, p.y, t0_, t1_);
      if (s < 0) return -1;
      zeros += (s == 0);
    }
    return zeros == 0 ? 1 : 0;
  }

  PointLocation locate(const Point& p) const {
    int s[3];
    for (int i = 0; i < 3; ++i) s[i] = edges_[i].eval_sign(p.x, p.y, t0_, t1_);
    return classify_from_edge_signs(s[0], s[1], s[2]);
  }

  enum class BoxRelation {
    Disjoint,       // no point of the box is in the closed triangle
    Inside,         // the whole box is strictly interior
    BoundaryOnly,   // box meets the triangle at most on its boundary
    Straddling,     // undecided; descend
  };

  BoxRelation box_relation(i64 x0, i64 x1, i64 y0, i64 y1) const {
    if (x1 < bx_lo_ || x0 > bx_hi_ || y1 < by_lo_ || y0 > by_hi_)
      return BoxRelation::Disjoint;
    bool all_pos = true;
    bool any_nonpos = false;
    for (const auto& e : edges_) {
      int mx = -1, mn = 1;
      const i64 xs[2] = {x0, x1};
      const i64 ys[2] = {y0, y1};
      for (int i = 0; i < 2 && (mx < 1 || mn > -1); ++i)
        for (int j = 0; j < 2 && (mx < 1 || mn > -1); ++j) {
          const int s = e.eval_sign(xs[i], ys[j], t0_, t1_);
          mx = std::max(mx, s);
          mn = std::min(mn, s);
        }
      if (mx < 0) return BoxRelation::Disjoint;
      if (mx == 0) any_nonpos = true;
      if (mn <= 0) all_pos = false;
    }
    if (all_pos) return BoxRelation::Inside;
    if (any_nonpos) return BoxRelation::BoundaryOnly;
    return BoxRelation::Straddling;
  }

 private:
  EdgeLine edges_[3];
  i64 bx_lo_, bx_hi_, by_lo_, by_hi_;
  mutable mpz_class t0_, t1_;  // scratch; queries build their own TriangleQuery
};

}  // namespace detail

class RangeOracle {
 public:
  // Preprocesses the point set. Points must be pairwise distinct.
  static RangeOracle build(std::vector<Point> points, Backend backend) {
    RangeOracle oracle;
    oracle.backend_ = backend;
    oracle.points_ = std::move(points);
    {
      std::vector<Point> sorted = oracle.points_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("range oracle: duplicate points");
    }
    oracle.max_abs_coord_ = 1;
    for (const Point& p : oracle.points_) {
      oracle.max_abs_coord_ = std::max(oracle.max_abs_coord_, std::abs(p.x));
      oracle.max_abs_coord_ = std::max(oracle.max_abs_coord_, std::abs(p.y));
    }
    if (backend == Backend::Hierarchical && !oracle.points_.empty()) {
      oracle.nodes_.reserve(2 * oracle.points_.size() / kLeafSize + 4);
      oracle.root_ = oracle.build_node(0, static_cast<int>(oracle.points_.size()), 0);
    }
    return oracle;
  }

  const std::vector<Point>& points() const { return points_; }
  Backend backend() const { return backend_; }
  i64 max_abs_coord() const { return max_abs_coord_; }

  QueryStats stats() const {
    QueryStats s;
    s.count_queries = stats_->count_queries.load(std::memory_order_relaxed);
    s.report_queries = stats_->report_queries.load(std::memory_order_relaxed);
    s.reported_points_total = stats_->reported_points_total.load(std::memory_order_relaxed);
    return s;
  }

  // Number of points of S strictly inside t. Boundary points never count.
  i64 count_interior(const Triangle& t) const {
    detail::TriangleQuery q(t, max_abs_coord_);
    stats_->count_queries.fetch_add(1, std::memory_order_relaxed);
    return count_impl(q, /*boundary=*/false);
  }

  // Number of points of S on t's edges or corners.
  i64 count_on_boundary(const Triangle& t) const {
    detail::TriangleQuery q(t, max_abs_coord_);
    stats_->count_queries.fetch_add(1, std::memory_order_relaxed);
    return count_impl(q, /*boundary=*/true);
  }

  // Points strictly inside t in ascending (x, y) order.
  std::vector<Point> report_interior(const Triangle& t) const {
    detail::TriangleQuery q(t, max_abs_coord_);
    stats_->report_queries.fetch_add(1, std::memory_order_relaxed);
    auto out = report_impl(q, /*closed=*/false);
    stats_->reported_points_total.fetch_add(out.size(), std::memory_order_relaxed);
    return out;
  }

  // Interior plus boundary points, ascending (x, y).
  std::vector<Point> report_closed(const Triangle& t) const {
    detail::TriangleQuery q(t, max_abs_coord_);
    stats_->report_queries.fetch_add(1, std::memory_order_relaxed);
    auto out = report_impl(q, /*closed=*/true);
    stats_->reported_points_total.fetch_add(out.size(), std::memory_order_relaxed);
    return out;
  }

 private:
  static constexpr int kLeafSize = 16;

  struct Node {
    int begin, end;
    int left = -1, right = -1;
    i64 x0, x1, y0, y1;
    bool is_leaf() const { return left < 0; }
  };

  struct StatsBlock {
    std::atomic<std::uint64_t> count_queries{0};
    std::atomic<std::uint64_t> report_queries{0};
    std::atomic<std::uint64_t> reported_points_total{0};
  };

  Backend backend_ = Backend::BruteForce;
  i64 max_abs_coord_ = 1;
  std::vector<Point> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::unique_ptr<StatsBlock> stats_ = std::make_unique<StatsBlock>();

  int build_node(int begin, int end, int depth) {
    Node nd;
    nd.begin = begin;
    nd.end = end;
    nd.x0 = nd.y0 = kMaxCoordBound;
    nd.x1 = nd.y1 = -kMaxCoordBound;
    for (int i = begin; i < end; ++i) {
      const Point& p = points_[static_cast<std::size_t>(i)];
      nd.x0 = std::min(nd.x0, p.x);
      nd.x1 = std::max(nd.x1, p.x);
      nd.y0 = std::min(nd.y0, p.y);
      nd.y1 = std::max(nd.y1, p.y);
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(nd);
    if (end - begin > kLeafSize) {
      const bool split_x = (nd.x1 - nd.x0) >= (nd.y1 - nd.y0);
      const int mid = begin + (end - begin) / 2;
      auto cmp_x = [](const Point& a, const Point& b) { return a < b; };
      auto cmp_y = [](const Point& a, const Point& b) {
        return a.y < b.y || (a.y == b.y && a.x < b.x);
      };
      if (split_x)
        std::nth_element(points_.begin() + begin, points_.begin() + mid,
                         points_.begin() + end, cmp_x);
      else
        std::nth_element(points_.begin() + begin, points_.begin() + mid,
                         points_.begin() + end, cmp_y);
      const int l = build_node(begin, mid, depth + 1);
      const int r = build_node(mid, end, depth + 1);
      nodes_[static_cast<std::size_t>(id)].left = l;
      nodes_[static_cast<std::size_t>(id)].right = r;
    }
    return id;
  }

  i64 count_impl(const detail::TriangleQuery& q, bool boundary) const {
    using Rel = detail::TriangleQuery::BoxRelation;
    if (backend_ == Backend::BruteForce || root_ < 0) {
      i64 acc = 0;
      for (const Point& p : points_) {
        const int c = q.classify(p);
        acc += boundary ? (c == 0) : (c > 0);
      }
      return acc;
    }
    i64 acc = 0;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const Node& nd = nodes_[static_cast<std::size_t>(stack.back())];
      stack.pop_back();
      const Rel rel = q.box_relation(nd.x0, nd.x1, nd.y0, nd.y1);
      if (rel == Rel::Disjoint) continue;
      if (rel == Rel::Inside) {
        if (!boundary) acc += nd.end - nd.begin;
        continue;
      }
      if (rel == Rel::BoundaryOnly && !boundary) continue;
      if (nd.is_leaf()) {
        for (int i = nd.begin; i < nd.end; ++i) {
          const int c = q.classify(points_[static_cast<std::size_t>(i)]);
          acc += boundary ? (c == 0) : (c > 0);
        }
        continue;
      }
      stack.push_back(nd.left);
      stack.push_back(nd.right);
    }
    return acc;
  }

  std::vector<Point> report_impl(const detail::TriangleQuery& q, bool closed) const {
    using Rel = detail::TriangleQuery::BoxRelation;
    std::vector<Point> out;
    if (backend_ == Backend::BruteForce || root_ < 0) {
      for (const Point& p : points_) {
        const int c = q.classify(p);
        if (c > 0 || (closed && c == 0)) out.push_back(p);
      }
    } else {
      std::vector<int> stack{root_};
      while (!stack.empty()) {
        const Node& nd = nodes_[static_cast<std::size_t>(stack.back())];
        stack.pop_back();
        const Rel rel = q.box_relation(nd.x0, nd.x1, nd.y0, nd.y1);
        if (rel == Rel::Disjoint) continue;
        if (rel == Rel::Inside) {
          out.insert(out.end(), points_.begin() + nd.begin, points_.begin() + nd.end);
          continue;
        }
        if (rel == Rel::BoundaryOnly && !closed) continue;
        if (nd.is_leaf()) {
          for (int i = nd.begin; i < nd.end; ++i) {
            const Point& p = points_[static_cast<std::size_t>(i)];
            const int c = q.classify(p);
            if (c > 0 || (closed && c == 0)) out.push_back(p);
          }
          continue;
        }
        stack.push_back(nd.left);
        stack.push_back(nd.right);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace psembed
