#include "psembed/range_oracle.hpp"

#include "psembed/generate.hpp"

#include <gtest/gtest.h>

#include <random>
#include <thread>

using namespace psembed;

namespace {

RatPoint rq(long n1, long d1, long n2, long d2) {
  return RatPoint(mpq_class(n1) / d1, mpq_class(n2) / d2);
}

// Reference scan straight off the public predicate.
i64 scan_interior(const std::vector<Point>& pts, const Triangle& t) {
  i64 acc = 0;
  for (const Point& p : pts)
    acc += locate_in_triangle(RatPoint(p), t).kind == PointLocationKind::Interior;
  return acc;
}

i64 scan_boundary(const std::vector<Point>& pts, const Triangle& t) {
  i64 acc = 0;
  for (const Point& p : pts) {
    const auto k = locate_in_triangle(RatPoint(p), t).kind;
    acc += k == PointLocationKind::OnEdge || k == PointLocationKind::OnCorner;
  }
  return acc;
}

std::vector<Point> small_set() { return {{1, 1}, {2, 2}, {5, 1}}; }

Triangle big_triangle() { return Triangle(Point(0, 0), Point(6, 0), Point(0, 6)); }

TEST(RangeOracle, CountInteriorExcludesBoundary) {
  const auto oracle = RangeOracle::build(small_set(), Backend::BruteForce);
  EXPECT_EQ(scan_interior(small_set(), big_triangle()), 2);
  EXPECT_EQ(oracle.count_interior(big_triangle()), 2);
}

TEST(RangeOracle, FarawayTriangleIsEmpty) {
  const auto oracle = RangeOracle::build(small_set(), Backend::Hierarchical);
  EXPECT_EQ(oracle.count_interior(Triangle(Point(100, 100), Point(120, 100), Point(100, 120))),
            0);
}

TEST(RangeOracle, BoundaryCounts) {
  const auto t = big_triangle();
  EXPECT_EQ(RangeOracle::build({{3, 3}}, Backend::BruteForce).count_on_boundary(t), 1);
  EXPECT_EQ(RangeOracle::build({{1, 1}}, Backend::BruteForce).count_on_boundary(t), 0);
  // A data point on a query corner counts as boundary.
  EXPECT_EQ(RangeOracle::build({{0, 0}, {1, 1}}, Backend::Hierarchical).count_on_boundary(t), 1);
}

TEST(RangeOracle, ReportInteriorSortedAscending) {
  const auto oracle = RangeOracle::build(small_set(), Backend::Hierarchical);
  const std::vector<Point> expected{{1, 1}, {2, 2}};
  EXPECT_EQ(oracle.report_interior(big_triangle()), expected);
}

TEST(RangeOracle, ReportClosedIncludesBoundary) {
  const auto oracle = RangeOracle::build({{1, 1}, {3, 3}}, Backend::BruteForce);
  const std::vector<Point> expected{{1, 1}, {3, 3}};
  EXPECT_EQ(oracle.report_closed(big_triangle()), expected);
  EXPECT_EQ(oracle.report_interior(big_triangle()), (std::vector<Point>{{1, 1}}));
}

TEST(RangeOracle, DuplicatePointsRejected) {
  EXPECT_THROW(RangeOracle::build({{1, 1}, {1, 1}, {2, 2}}, Backend::BruteForce),
               std::invalid_argument);
}

TEST(RangeOracle, DegenerateQueryRejectedWithoutCounting) {
  const auto oracle = RangeOracle::build(small_set(), Backend::Hierarchical);
  const Triangle bad(Point(0, 0), Point(1, 1), Point(2, 2));
  EXPECT_THROW(oracle.count_interior(bad), std::invalid_argument);
  EXPECT_THROW(oracle.report_closed(bad), std::invalid_argument);
  EXPECT_EQ(oracle.stats().count_queries, 0u);
  EXPECT_EQ(oracle.stats().report_queries, 0u);
}

TEST(RangeOracle, StatsDiscipline) {
  const auto oracle = RangeOracle::build(small_set(), Backend::BruteForce);
  const auto t = big_triangle();
  oracle.count_interior(t);
  oracle.count_on_boundary(t);
  const auto mid = oracle.stats();
  EXPECT_EQ(mid.count_queries, 2u);
  EXPECT_EQ(mid.report_queries, 0u);
  oracle.report_interior(t);
  oracle.report_closed(t);
  const auto fin = oracle.stats();
  EXPECT_EQ(fin.count_queries, 2u);
  EXPECT_EQ(fin.report_queries, 2u);
  EXPECT_EQ(fin.reported_points_total, 2u + 3u);
}

// Randomized equivalence: both backends, rational corners, collinear
// clusters, corners on data points, thin triangles.
TEST(RangeOracle, BackendEquivalenceRandomized) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 12; ++round) {
    const int n = 40 + static_cast<int>(rng() % 260);
    std::vector<Point> pts = gen_point_set_uniform(n, rng(), 1000);
    // Plant a collinear cluster through the middle.
    for (int i = 0; i < 6; ++i) {
      const Point p(100 + 37 * i, 200 + 74 * i);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const auto brute = RangeOracle::build(pts, Backend::BruteForce);
    const auto hier = RangeOracle::build(pts, Backend::Hierarchical);
    for (int q = 0; q < 150; ++q) {
      RatPoint a, b, c;
      if (q % 5 == 0) {
        // corners on data points
        a = RatPoint(pts[rng() % pts.size()]);
        b = RatPoint(pts[rng() % pts.size()]);
        c = RatPoint(pts[rng() % pts.size()]);
      } else if (q % 5 == 1) {
        // thin sliver
        const long base = static_cast<long>(rng() % 900);
        a = rq(base, 1, 0, 1);
        b = rq(base * 3 + 1, 3, 900, 1);
        c = rq(base * 3 + 2, 3, 900, 1);
      } else {
        auto rc = [&]() -> mpq_class {
          return mpq_class(static_cast<long>(rng() % 2000) - 300) /
                 (1 + static_cast<long>(rng() % 7));
        };
        a = RatPoint(rc(), rc());
        b = RatPoint(rc(), rc());
        c = RatPoint(rc(), rc());
      }
      const Triangle t(a, b, c);
      if (t.degenerate()) continue;
      EXPECT_EQ(brute.count_interior(t), hier.count_interior(t));
      EXPECT_EQ(brute.count_on_boundary(t), hier.count_on_boundary(t));
      EXPECT_EQ(brute.report_interior(t), hier.report_interior(t));
      EXPECT_EQ(brute.report_closed(t), hier.report_closed(t));
      EXPECT_EQ(brute.count_interior(t), scan_interior(pts, t));
      EXPECT_EQ(brute.count_on_boundary(t), scan_boundary(pts, t));
    }
  }
}

TEST(RangeOracle, BackendEquivalenceTenThousandPoints) {
  const auto pts = gen_point_set_uniform(10000, 17, 1'000'000);
  const auto brute = RangeOracle::build(pts, Backend::BruteForce);
  const auto hier = RangeOracle::build(pts, Backend::Hierarchical);
  std::mt19937_64 rng(18);
  int done = 0;
  while (done < 60) {
    auto ic = [&]() { return static_cast<i64>(rng() % 1'400'000) - 200'000; };
    const Point a(ic(), ic()), b(ic(), ic()), c(ic(), ic());
    if (orient_sign(a, b, c) == 0) continue;
    const Triangle t(a, b, c);
    EXPECT_EQ(brute.count_interior(t), hier.count_interior(t));
    EXPECT_EQ(brute.report_closed(t), hier.report_closed(t));
    ++done;
  }
}

TEST(RangeOracle, ReportAndCountConsistent) {
  std::mt19937_64 rng(99);
  const auto pts = gen_point_set_uniform(300, 5, 500);
  const auto oracle = RangeOracle::build(pts, Backend::Hierarchical);
  int done = 0;
  while (done < 400) {
    const Point a(static_cast<i64>(rng() % 600), static_cast<i64>(rng() % 600));
    const Point b(static_cast<i64>(rng() % 600), static_cast<i64>(rng() % 600));
    const Point c(static_cast<i64>(rng() % 600), static_cast<i64>(rng() % 600));
    if (orient_sign(a, b, c) == 0) continue;
    const Triangle t(a, b, c);
    EXPECT_EQ(static_cast<i64>(oracle.report_interior(t).size()), oracle.count_interior(t));
    EXPECT_EQ(static_cast<i64>(oracle.report_closed(t).size()),
              oracle.count_interior(t) + oracle.count_on_boundary(t));
    ++done;
  }
}

// Splitting a triangle by a cevian through a rational point w on edge yz:
// interior counts add up, plus the points strictly inside sitting on the
// cevian segment itself.
TEST(RangeOracle, CevianAdditivity) {
  std::mt19937_64 rng(31);
  const auto pts = gen_point_set_uniform(250, 8, 400);
  const auto oracle = RangeOracle::build(pts, Backend::Hierarchical);
  int done = 0;
  while (done < 120) {
    const Point x(static_cast<i64>(rng() % 500), static_cast<i64>(rng() % 500));
    const Point y(static_cast<i64>(rng() % 500), static_cast<i64>(rng() % 500));
    const Point z(static_cast<i64>(rng() % 500), static_cast<i64>(rng() % 500));
    if (orient_sign(x, y, z) == 0) continue;
    const mpq_class tpar = mpq_class(1 + static_cast<long>(rng() % 97)) / 99;
    const RatPoint w = point_on_segment(y, z, tpar);
    const Triangle whole(x, y, z);
    const Triangle left(RatPoint(x), w, RatPoint(y));
    const Triangle right(RatPoint(x), w, RatPoint(z));
    i64 on_cevian = 0;
    const RatPoint xr(x);
    for (const Point& p : pts) {
      const RatPoint pr(p);
      if (locate_in_triangle(pr, whole).kind != PointLocationKind::Interior) continue;
      if (orient_sign(xr, w, pr) == 0) ++on_cevian;
    }
    EXPECT_EQ(oracle.count_interior(whole),
              oracle.count_interior(left) + oracle.count_interior(right) + on_cevian);
    ++done;
  }
}

TEST(RangeOracle, SlideMonotonicity) {
  std::mt19937_64 rng(57);
  const auto pts = gen_point_set_uniform(200, 21, 300);
  const auto oracle = RangeOracle::build(pts, Backend::Hierarchical);
  int done = 0;
  while (done < 80) {
    const Point x(static_cast<i64>(rng() % 400), static_cast<i64>(rng() % 400));
    const Point y(static_cast<i64>(rng() % 400), static_cast<i64>(rng() % 400));
    const Point z(static_cast<i64>(rng() % 400), static_cast<i64>(rng() % 400));
    if (orient_sign(x, y, z) == 0) continue;
    mpq_class t1 = mpq_class(1 + static_cast<long>(rng() % 96)) / 100;
    mpq_class t2 = mpq_class(1 + static_cast<long>(rng() % 96)) / 100;
    if (t1 > t2) std::swap(t1, t2);
    if (t1 == t2) continue;
    const Triangle tri1(RatPoint(x), point_on_segment(y, z, t1), RatPoint(y));
    const Triangle tri2(RatPoint(x), point_on_segment(y, z, t2), RatPoint(y));
    EXPECT_LE(oracle.count_interior(tri1), oracle.count_interior(tri2));
    ++done;
  }
}

TEST(RangeOracle, ConcurrentQueriesAreConsistent) {
  const auto pts = gen_point_set_uniform(500, 3, 1000);
  const auto oracle = RangeOracle::build(pts, Backend::Hierarchical);
  const Triangle t(Point(0, 0), Point(1000, 0), Point(0, 1000));
  const i64 expected = oracle.count_interior(t);
  const auto before = oracle.stats();
  constexpr int kThreads = 4;
  constexpr int kPerThread = 50;
  std::vector<std::thread> workers;
  std::array<bool, kThreads> ok{};
  for (int w = 0; w < kThreads; ++w)
    workers.emplace_back([&, w]() {
      bool good = true;
      for (int i = 0; i < kPerThread; ++i) good &= oracle.count_interior(t) == expected;
      ok[static_cast<std::size_t>(w)] = good;
    });
  for (auto& th : workers) th.join();
  for (bool g : ok) EXPECT_TRUE(g);
  EXPECT_EQ(oracle.stats().count_queries - before.count_queries,
            static_cast<std::uint64_t>(kThreads * kPerThread));
}

}  // namespace
