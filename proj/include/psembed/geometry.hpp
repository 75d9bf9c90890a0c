// Exact planar geometry kernel: integer input points, rational auxiliary
// points, and sign-exact predicates. No floating point on any decision path.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace psembed {

using i64 = std::int64_t;
using i128 = __int128;

inline constexpr i64 kDefaultCoordBound = 2147483647;  // 2^31 - 1
inline constexpr i64 kMaxCoordBound = i64{1} << 61;    // keeps i128 cross products exact

namespace detail {
inline std::atomic<i64>& coord_bound_slot() {
  static std::atomic<i64> bound{kDefaultCoordBound};
  return bound;
}
}  // namespace detail

inline i64 coord_bound() { return detail::coord_bound_slot().load(std::memory_order_relaxed); }

inline void set_coord_bound(i64 bound) {
  if (bound < 1 || bound > kMaxCoordBound)
    throw std::invalid_argument("coordinate bound must be in [1, 2^61]");
  detail::coord_bound_slot().store(bound, std::memory_order_relaxed);
}

struct Point {
  i64 x = 0;
  i64 y = 0;

  Point() = default;
  Point(i64 px, i64 py) : x(px), y(py) {
    const i64 b = coord_bound();
    if (px > b || px < -b || py > b || py < -b)
      throw std::out_of_range("point coordinate exceeds configured bound");
  }

  friend bool operator==(const Point&, const Point&) = default;
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(p.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Exact rational point. mpq_class keeps values canonical (lowest terms,
// positive denominator).
struct RatPoint {
  mpq_class x;
  mpq_class y;

  RatPoint() = default;
  RatPoint(mpq_class px, mpq_class py) : x(std::move(px)), y(std::move(py)) {
    x.canonicalize();
    y.canonicalize();
  }
  RatPoint(const Point& p) : x(static_cast<long>(p.x)), y(static_cast<long>(p.y)) {}

  bool is_integer() const { return x.get_den() == 1 && y.get_den() == 1; }

  friend bool operator==(const RatPoint& a, const RatPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

enum class Orientation { CounterClockwise, Clockwise, Collinear };

// Sign of (q-p) x (r-p). Exact for any coordinates within the configured
// bound (products stay below 2^124).
inline int orient_sign(const Point& p, const Point& q, const Point& r) {
  const i128 d = static_cast<i128>(q.x - p.x) * (r.y - p.y) -
                 static_cast<i128>(q.y - p.y) * (r.x - p.x);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

inline int orient_sign(const RatPoint& p, const RatPoint& q, const RatPoint& r) {
  mpq_class d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(d);
}

inline Orientation to_orientation(int sign) {
  return sign > 0 ? Orientation::CounterClockwise
                  : (sign < 0 ? Orientation::Clockwise : Orientation::Collinear);
}

inline Orientation orient(const Point& p, const Point& q, const Point& r) {
  return to_orientation(orient_sign(p, q, r));
}

inline Orientation orient(const RatPoint& p, const RatPoint& q, const RatPoint& r) {
  return to_orientation(orient_sign(p, q, r));
}

struct Triangle {
  RatPoint a;
  RatPoint b;
  RatPoint c;

  Triangle() = default;
  Triangle(RatPoint ta, RatPoint tb, RatPoint tc)
      : a(std::move(ta)), b(std::move(tb)), c(std::move(tc)) {}
  Triangle(const Point& ta, const Point& tb, const Point& tc) : a(ta), b(tb), c(tc) {}

  bool degenerate() const { return orient_sign(a, b, c) == 0; }
};

enum class PointLocationKind { Interior, OnEdge, OnCorner, Outside };

// Edge i runs from corner i to corner (i+1) mod 3 in the triangle's stored
// (a, b, c) order.
struct PointLocation {
  PointLocationKind kind = PointLocationKind::Outside;
  int index = -1;

  friend bool operator==(const PointLocation&, const PointLocation&) = default;
};

namespace detail {

inline PointLocation classify_from_edge_signs(int s0, int s1, int s2) {
  if (s0 < 0 || s1 < 0 || s2 < 0) return {PointLocationKind::Outside, -1};
  const int zeros = (s0 == 0) + (s1 == 0) + (s2 == 0);
  if (zeros == 0) return {PointLocationKind::Interior, -1};
  if (zeros == 1) {
    const int e = s0 == 0 ? 0 : (s1 == 0 ? 1 : 2);
    return {PointLocationKind::OnEdge, e};
  }
  // Two zero edges meet at a corner: edges (i-1, i) meet at corner i.
  int corner;
  if (s0 == 0 && s1 == 0) corner = 1;
  else if (s1 == 0 && s2 == 0) corner = 2;
  else corner = 0;
  return {PointLocationKind::OnCorner, corner};
}

}  // namespace detail

inline PointLocation locate_in_triangle(const RatPoint& p, const Triangle& t) {
  const int sigma = orient_sign(t.a, t.b, t.c);
  if (sigma == 0) throw std::invalid_argument("locate_in_triangle: degenerate triangle");
  return detail::classify_from_edge_signs(sigma * orient_sign(t.a, t.b, p),
                                          sigma * orient_sign(t.b, t.c, p),
                                          sigma * orient_sign(t.c, t.a, p));
}

inline PointLocation locate_in_triangle(const Point& p, const Point& a, const Point& b,
                                        const Point& c) {
  const int sigma = orient_sign(a, b, c);
  if (sigma == 0) throw std::invalid_argument("locate_in_triangle: degenerate triangle");
  return detail::classify_from_edge_signs(sigma * orient_sign(a, b, p),
                                          sigma * orient_sign(b, c, p),
                                          sigma * orient_sign(c, a, p));
}

// Convex hull of distinct points: extreme points only, counterclockwise,
// starting at the lexicographically smallest point. Points interior to hull
// edges are dropped. Throws on fewer than 3 distinct points or an
// all-collinear input.
inline std::vector<Point> convex_hull(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3)
    throw std::invalid_argument("convex_hull: fewer than 3 distinct points");

  const std::size_t n = points.size();
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && orient_sign(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && orient_sign(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw std::invalid_argument("convex_hull: all points collinear");
  return hull;
}

namespace detail {

template <typename P>
inline bool value_between(const decltype(P::x)& v, const decltype(P::x)& lo,
                          const decltype(P::x)& hi) {
  return lo <= hi ? (lo <= v && v <= hi) : (hi <= v && v <= lo);
}

// p collinear with a,b assumed; true iff p lies in the closed segment [a, b].
template <typename P>
inline bool collinear_point_on_segment(const P& p, const P& a, const P& b) {
  if (a.x != b.x) return value_between<P>(p.x, a.x, b.x);
  return value_between<P>(p.y, a.y, b.y);
}

template <typename P>
inline bool segments_properly_cross_impl(const P& a1, const P& a2, const P& b1, const P& b2) {
  if (a1 == a2 || b1 == b2)
    throw std::invalid_argument("segments_properly_cross: degenerate segment");

  const int d1 = orient_sign(a1, a2, b1);
  const int d2 = orient_sign(a1, a2, b2);
  const int d3 = orient_sign(b1, b2, a1);
  const int d4 = orient_sign(b1, b2, a2);

  if (d1 == 0 && d2 == 0) {
    // Both segments on one line: a shared stretch of positive length has
    // interior points; a single shared point is an endpoint of both.
    const bool share_a1 = collinear_point_on_segment(a1, b1, b2);
    const bool share_a2 = collinear_point_on_segment(a2, b1, b2);
    const bool share_b1 = collinear_point_on_segment(b1, a1, a2);
    const bool share_b2 = collinear_point_on_segment(b2, a1, a2);
    if (!(share_a1 || share_a2 || share_b1 || share_b2)) return false;
    P lo_a = a1, hi_a = a2, lo_b = b1, hi_b = b2;
    auto lt = [](const P& u, const P& v) { return u.x < v.x || (u.x == v.x && u.y < v.y); };
    if (lt(hi_a, lo_a)) std::swap(lo_a, hi_a);
    if (lt(hi_b, lo_b)) std::swap(lo_b, hi_b);
    const P& lo = lt(lo_a, lo_b) ? lo_b : lo_a;
    const P& hi = lt(hi_a, hi_b) ? hi_a : hi_b;
    return lt(lo, hi);  // overlap longer than a point
  }

  if (d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0)
    return d1 != d2 && d3 != d4;  // proper transversal crossing

  // Some endpoint lies on the other segment's line. It crosses properly iff
  // one such endpoint is interior to the other segment (a shared endpoint is
  // not a crossing).
  auto endpoint_interior = [](const P& p, const P& o1, const P& o2) {
    if (p == o1 || p == o2) return false;
    return collinear_point_on_segment(p, o1, o2);
  };
  if (d1 == 0 && endpoint_interior(b1, a1, a2)) return true;
  if (d2 == 0 && endpoint_interior(b2, a1, a2)) return true;
  if (d3 == 0 && endpoint_interior(a1, b1, b2)) return true;
  if (d4 == 0 && endpoint_interior(a2, b1, b2)) return true;
  return false;
}

}  // namespace detail

// True iff the two segments share a point that is interior to at least one of
// them; a shared endpoint alone does not count.
inline bool segments_properly_cross(const RatPoint& a1, const RatPoint& a2, const RatPoint& b1,
                                    const RatPoint& b2) {
  return detail::segments_properly_cross_impl(a1, a2, b1, b2);
}

inline bool segments_properly_cross(const Point& a1, const Point& a2, const Point& b1,
                                    const Point& b2) {
  return detail::segments_properly_cross_impl(a1, a2, b1, b2);
}

// True iff p lies strictly inside segment (a, b).
inline bool point_interior_to_segment(const Point& p, const Point& a, const Point& b) {
  if (p == a || p == b) return false;
  if (orient_sign(a, b, p) != 0) return false;
  return detail::collinear_point_on_segment(p, a, b);
}

// Point on segment y->z at parameter t in [0, 1].
inline RatPoint point_on_segment(const Point& y, const Point& z, const mpq_class& t) {
  mpq_class px = mpq_class(static_cast<long>(y.x)) +
                 t * mpq_class(static_cast<long>(z.x - y.x));
  mpq_class py = mpq_class(static_cast<long>(y.y)) +
                 t * mpq_class(static_cast<long>(z.y - y.y));
  return RatPoint(std::move(px), std::move(py));
}

}  // namespace psembed
