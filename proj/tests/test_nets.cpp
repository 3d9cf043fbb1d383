#include "metric_gauge/nets.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

namespace mg = metric_gauge;

namespace {

const mg::MetricSpace& line013() {
  static const auto space = mg::make_builtin(mg::LinePoints{{0, 1, 3}});
  return space;
}

}  // namespace

TEST(IsSeparated, StrictInequality) {
  const auto tri = mg::make_builtin(mg::Equilateral{3, 1.0});
  EXPECT_TRUE(mg::is_separated({0, 1, 2}, 0.5, tri));
  EXPECT_FALSE(mg::is_separated({0, 1}, 1.0, tri));
  // ids 0 and 2 are the values 0 and 3
  EXPECT_TRUE(mg::is_separated({0, 2}, 1.0, line013()));
  EXPECT_FALSE(mg::is_separated({0, 1}, 1.0, line013()));
  EXPECT_THROW(mg::is_separated({0, 5}, 1.0, line013()), mg::UnknownIdError);
}

TEST(GreedySeparated, Examples) {
  const auto tri = mg::make_builtin(mg::Equilateral{3, 1.0});
  EXPECT_EQ(mg::greedy_separated(tri, 0.5, 0).members, (mg::IdList{0, 1, 2}));
  EXPECT_EQ(mg::greedy_separated(line013(), 1.0, 0).members, (mg::IdList{0, 2}));
  const auto circle = mg::make_builtin(mg::CircleGeodesic{9});
  EXPECT_EQ(mg::greedy_separated(circle, circle.diameter(), 4).members, (mg::IdList{4}));
  EXPECT_THROW(mg::greedy_separated(tri, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(mg::greedy_separated(tri, 0.5, 3), mg::UnknownIdError);
}

TEST(MaxSeparatedExact, Examples) {
  auto r = mg::max_separated_exact(line013(), 1.0);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.n_eps, 2u);
  EXPECT_EQ(r.witness.members, (mg::IdList{0, 2}));
  EXPECT_EQ(r.upper_bound, 2u);

  r = mg::max_separated_exact(mg::make_builtin(mg::Equilateral{5, 1.0}), 0.9);
  EXPECT_EQ(r.n_eps, 5u);
}

TEST(MaxSeparatedExact, CircleOfEightAtQuarterTurn) {
  // Three points would need pairwise gaps of at least 3 steps out of 8.
  const auto circle = mg::make_builtin(mg::CircleGeodesic{8});
  const double eps = std::numbers::pi / 2;
  const auto brute = oracle::max_separated(circle.distances(), eps);
  ASSERT_EQ(brute.size, 2u);
  const auto r = mg::max_separated_exact(circle, eps);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.n_eps, 2u);
  EXPECT_EQ(r.witness.members, brute.witness);
  EXPECT_EQ(r.witness.members, (mg::IdList{0, 3}));
  EXPECT_LE(mg::covering_check(r.witness, circle), eps);
}

TEST(MaxSeparatedExact, MatchesEnumerationOnRandomSpaces) {
  for (unsigned seed = 0; seed < 40; ++seed) {
    const auto space = mg::random_repaired_metric(10, seed);
    for (double eps : {0.05, 0.2, 0.35, 0.5, 0.8}) {
      const auto brute = oracle::max_separated(space.distances(), eps);
      const auto r = mg::max_separated_exact(space, eps);
      ASSERT_TRUE(r.exact);
      EXPECT_EQ(r.n_eps, brute.size) << seed << " " << eps;
      EXPECT_EQ(r.witness.members, brute.witness) << seed << " " << eps;
    }
  }
}

TEST(MaxSeparatedExact, BudgetExhaustionKeepsValidBounds) {
  const auto space = mg::make_builtin(mg::TorusGrid{6, 6});
  const double eps = 1.5;
  const auto full = mg::max_separated_exact(space, eps);
  ASSERT_TRUE(full.exact);
  const auto cut = mg::max_separated_exact(space, eps, 3);
  EXPECT_FALSE(cut.exact);
  EXPECT_TRUE(mg::is_separated(cut.witness.members, eps, space));
  EXPECT_EQ(cut.witness.size(), cut.n_eps);
  EXPECT_LE(cut.n_eps, full.n_eps);
  EXPECT_GE(cut.upper_bound, full.n_eps);
}

TEST(MaxSeparatedExact, EpsAtLeastDiameterGivesSingleton) {
  const auto space = mg::random_repaired_metric(8, 5);
  const auto r = mg::max_separated_exact(space, space.diameter());
  EXPECT_EQ(r.n_eps, 1u);
  EXPECT_EQ(r.witness.members, (mg::IdList{0}));
}

TEST(GreedyCover, Examples) {
  const auto tri = mg::make_builtin(mg::Equilateral{3, 1.0});
  EXPECT_EQ(mg::greedy_cover(tri, 2.0).size(), 1u);

  const auto cover = mg::greedy_cover(line013(), 1.0);
  ASSERT_EQ(cover.size(), 2u);
  EXPECT_EQ(cover.clusters[0], (mg::IdList{0, 1}));
  EXPECT_EQ(cover.clusters[1], (mg::IdList{2}));

  const auto space = mg::random_repaired_metric(9, 2);
  const double below = space.distances().array().unaryExpr([](double v) { return v > 0 ? v : 1e300; }).minCoeff();
  EXPECT_EQ(mg::greedy_cover(space, 0.5 * below).size(), 9u);
}

TEST(CoveringCheck, Examples) {
  const auto space = mg::random_repaired_metric(6, 4);
  EXPECT_EQ(mg::covering_check({0.1, {0, 1, 2, 3, 4, 5}}, space), 0.0);
  EXPECT_DOUBLE_EQ(mg::covering_check({1.0, {0, 2}}, line013()), 1.0);
  EXPECT_THROW(mg::covering_check({1.0, {}}, line013()), std::invalid_argument);
}

// Property sweep over seeded random spaces.
TEST(NetsProperties, PackingLaws) {
  for (unsigned seed = 100; seed < 130; ++seed) {
    const auto space = mg::random_repaired_metric(11, seed);
    mg::Index previous = space.size() + 1;
    for (int step = 0; step < 12; ++step) {
      const double eps = 0.02 + step * 0.08;
      const auto exact = mg::max_separated_exact(space, eps);
      ASSERT_TRUE(exact.exact);
      EXPECT_LE(exact.n_eps, previous) << "n_eps must not grow with eps";
      previous = exact.n_eps;

      for (mg::Index start = 0; start < space.size(); start += 3) {
        const auto greedy = mg::greedy_separated(space, eps, start);
        EXPECT_TRUE(mg::is_separated(greedy.members, eps, space));
        EXPECT_LE(greedy.size(), exact.n_eps);
        EXPECT_LE(mg::covering_check(greedy, space), eps) << "greedy result must be maximal";
      }

      EXPECT_LE(mg::covering_check(exact.witness, space), eps);
      // Any point farther than eps from a maximum net would extend it.
      for (mg::Index y = 0; y < space.size(); ++y) {
        mg::IdList extended = exact.witness.members;
        if (std::find(extended.begin(), extended.end(), y) != extended.end()) continue;
        extended.push_back(y);
        EXPECT_FALSE(mg::is_separated(extended, eps, space));
      }

      const auto cover = mg::greedy_cover(space, eps);
      mg::Index covered = 0;
      for (const auto& cluster : cover.clusters) {
        covered += cluster.size();
        EXPECT_LE(mg::set_diameter(cluster, space), eps);
        for (mg::Index a = 0; a < cluster.size(); ++a)
          for (mg::Index b = a + 1; b < cluster.size(); ++b)
            EXPECT_FALSE(mg::is_separated({cluster[a], cluster[b]}, eps, space));
      }
      EXPECT_EQ(covered, space.size());
      EXPECT_LE(exact.n_eps, cover.size());
    }
  }
}

TEST(NetsProperties, SubsetMonotonicity) {
  std::mt19937_64 rng(77);
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto space = mg::random_repaired_metric(10, 500 + seed);
    for (double eps : {0.1, 0.3, 0.6}) {
      const auto nx = mg::max_separated_exact(space, eps).n_eps;
      for (int k = 0; k < 5; ++k) {
        mg::IdList ids;
        for (mg::Index i = 0; i < space.size(); ++i)
          if (rng() % 2) ids.push_back(i);
        if (ids.empty()) ids.push_back(0);
        const auto ny = mg::max_separated_exact(mg::restrict_space(space, ids), eps).n_eps;
        EXPECT_LE(ny, nx);
      }
      mg::IdList all(space.size());
      std::iota(all.begin(), all.end(), mg::Index{0});
      EXPECT_EQ(mg::max_separated_exact(mg::restrict_space(space, all), eps).n_eps, nx);
    }
  }
}

TEST(FindClique, NaturalOrderGivesLexSmallest) {
  const auto space = mg::make_builtin(mg::CircleGeodesic{12});
  const auto graph = mg::separation_graph(space, 1.0);
  mg::IdList order(12);
  std::iota(order.begin(), order.end(), mg::Index{0});
  const auto q = mg::find_clique_of_size(graph, 4, order, 1'000'000);
  EXPECT_EQ(q.clique, (mg::IdList{0, 2, 4, 6}));
  EXPECT_TRUE(mg::find_clique_of_size(graph, 7, order, 1'000'000).clique.empty());
}
