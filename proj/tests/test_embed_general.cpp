#include "psembed/embed_general.hpp"

#include "psembed/generate.hpp"
#include "psembed/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace psembed;

namespace {

PlaneGraphInput k4_graph() {
  return {4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}}, {0, 1, 2}};
}

// Exhaustive search over injective vertex-to-point assignments, validated by
// the verifier. The equivalence oracle for the dynamic program.
bool brute_force_embeddable(const PlaneGraphInput& g, const std::vector<Point>& pts) {
  const int n = g.n;
  const int k = static_cast<int>(pts.size());
  Mapping m;
  m.point_index.assign(static_cast<std::size_t>(n), -1);
  std::vector<char> taken(static_cast<std::size_t>(k), 0);
  const VerifyMode mode = k == n ? VerifyMode::Exact : VerifyMode::Generalized;
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return verify(g, pts, m, mode).valid;
    for (int p = 0; p < k; ++p) {
      if (taken[static_cast<std::size_t>(p)]) continue;
      taken[static_cast<std::size_t>(p)] = 1;
      m.point_index[static_cast<std::size_t>(v)] = p;
      if (self(self, v + 1)) return true;
      taken[static_cast<std::size_t>(p)] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

TEST(EmbedGeneral, K4OnFivePoints) {
  const std::vector<Point> pts{{0, 0}, {10, 0}, {0, 10}, {3, 3}, {20, 20}};
  const PlaneGraphInput g = k4_graph();
  const RepTree tree = validate_and_build(g);
  ASSERT_TRUE(brute_force_embeddable(g, pts));
  const auto m = embed_general(tree, pts);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(verify(g, pts, *m, VerifyMode::Generalized).valid);
}

TEST(EmbedGeneral, TriangleTrivialOnAnyPoints) {
  const PlaneGraphInput g{3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}};
  const RepTree tree = validate_and_build(g);
  const auto m = embed_general(tree, {{0, 0}, {5, 0}, {3, 4}, {1, 1}, {2, 2}, {9, 9}});
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(verify(g, {{0, 0}, {5, 0}, {3, 4}, {1, 1}, {2, 2}, {9, 9}}, *m,
                     VerifyMode::Generalized)
                  .valid);
}

TEST(EmbedGeneral, AllCollinearHasNoEmbedding) {
  const PlaneGraphInput g{3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}};
  const RepTree tree = validate_and_build(g);
  EXPECT_FALSE(embed_general(tree, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}).has_value());
}

TEST(EmbedGeneral, TooFewPointsRejected) {
  const RepTree tree = validate_and_build(k4_graph());
  EXPECT_THROW(embed_general(tree, {{0, 0}, {1, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(embed_general(tree, {{0, 0}, {1, 0}, {0, 1}, {0, 0}}), std::invalid_argument);
}

TEST(DpEvaluate, LeafTriples) {
  const PlaneGraphInput g{3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}};
  const RepTree tree = validate_and_build(g);
  const std::vector<Point> pts{{0, 0}, {4, 0}, {0, 4}, {1, 1}, {2, 2}};
  DPTable table;
  EXPECT_TRUE(dp_evaluate({tree.root, 0, 1, 2}, table, tree, pts));
  EXPECT_FALSE(dp_evaluate({tree.root, 0, 3, 4}, table, tree, pts));  // collinear
  EXPECT_EQ(table.entries_evaluated, 0u);  // leaves are resolved inline
}

TEST(DpEvaluate, InternalNodeCases) {
  const RepTree tree = validate_and_build(k4_graph());
  const std::vector<Point> pts{{0, 0}, {10, 0}, {0, 10}, {3, 3}, {30, 30}};
  DPTable table;
  // Empty region triangle: no candidate representative.
  EXPECT_FALSE(dp_evaluate({tree.root, 1, 4, 2}, table, tree, pts));
  // One interior point with three leaf children.
  EXPECT_TRUE(dp_evaluate({tree.root, 0, 1, 2}, table, tree, pts));
  const auto it = table.memo.find({tree.root, 0, 1, 2});
  ASSERT_NE(it, table.memo.end());
  EXPECT_EQ(it->second.witness, 3);
}

TEST(DpEvaluate, MemoSoundness) {
  const auto yi = gen_yes_instance(7, 3, 100);
  const RepTree tree = validate_and_build(yi.instance.graph);
  const auto& pts = yi.instance.points;
  DPTable table;
  GeneralEmbedStats stats;
  embed_general(tree, pts, &stats, &table);
  int rechecked = 0;
  for (const auto& [key, entry] : table.memo) {
    DPTable fresh;
    EXPECT_EQ(dp_evaluate(key, fresh, tree, pts), entry.value);
    if (++rechecked >= 60) break;
  }
  EXPECT_GT(rechecked, 0);
}

TEST(EmbedGeneral, MatchesBruteForceSmall) {
  std::mt19937_64 rng(2027);
  int yes = 0, no = 0;
  for (int it = 0; it < 40; ++it) {
    const int n = 3 + static_cast<int>(rng() % 3);  // 3..5
    const int k = n + static_cast<int>(rng() % 3);  // n..n+2
    const PlaneGraphInput g = gen_plane3tree(n, rng());
    const RepTree tree = validate_and_build(g);
    const std::vector<Point> pts = gen_point_set_uniform(k, rng(), 12);
    GeneralEmbedStats stats;
    const auto m = embed_general(tree, pts, &stats);
    const bool brute = brute_force_embeddable(g, pts);
    ASSERT_EQ(m.has_value(), brute) << "n=" << n << " k=" << k << " it=" << it;
    if (m) {
      ++yes;
      EXPECT_TRUE(verify(g, pts, *m, VerifyMode::Generalized).valid);
    } else {
      ++no;
    }
    EXPECT_LE(stats.entries_evaluated,
              static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k) *
                  static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k));
  }
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

TEST(EmbedGeneral, AgreesWithExactWhenKEqualsN) {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 25; ++it) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const PlaneGraphInput g = gen_plane3tree(n, rng());
    const RepTree tree = validate_and_build(g);
    const std::vector<Point> pts = it % 2 == 0
                                       ? gen_point_set_uniform(n, rng(), 40)
                                       : gen_yes_instance(n, rng(), 500).instance.points;
    const auto general = embed_general(tree, pts);
    const EmbedResult exact = embed(tree, pts);
    EXPECT_EQ(general.has_value(), exact.found());
  }
}

TEST(EmbedGeneral, UnusedPointMayLieOnDrawnEdge) {
  const PlaneGraphInput g{3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}};
  const RepTree tree = validate_and_build(g);
  // (5, 0) lies on the segment between (0,0) and (10,0).
  const std::vector<Point> pts{{0, 0}, {10, 0}, {0, 10}, {5, 0}};
  const auto m = embed_general(tree, pts);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(verify(g, pts, *m, VerifyMode::Generalized).valid);
}

}  // namespace
