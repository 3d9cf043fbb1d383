#include "metric_gauge/certifier.hpp"
#include "metric_gauge/hypothesis_lab.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

namespace mg = metric_gauge;

namespace {

mg::SpacePtr share(mg::MetricSpace space) {
  return std::make_shared<const mg::MetricSpace>(std::move(space));
}

mg::IdList iota_ids(mg::Index n) {
  mg::IdList ids(n);
  std::iota(ids.begin(), ids.end(), mg::Index{0});
  return ids;
}

mg::MapSample identity(mg::SpacePtr space) {
  const auto ids = iota_ids(space->size());
  return mg::MapSample(std::move(space), ids, ids);
}

mg::MapSample rotation(mg::Index n, mg::Index shift) {
  mg::IdList image(n);
  for (mg::Index k = 0; k < n; ++k) image[k] = (k + shift) % n;
  return mg::MapSample(share(mg::make_builtin(mg::CircleGeodesic{n})), iota_ids(n), image);
}

bool has_flag(const mg::CertReport& r, mg::HypothesisFlag f) {
  return std::find(r.flags.begin(), r.flags.end(), f) != r.flags.end();
}

}  // namespace

TEST(MapSample, SortsByDomainAndRejectsBadInput) {
  const auto space = share(mg::make_builtin(mg::LinePoints{{0, 1, 2, 3}}));
  const mg::MapSample map(space, {2, 0, 1}, {3, 0, 1});
  EXPECT_EQ(map.domain().members(), (mg::IdList{0, 1, 2}));
  EXPECT_EQ(map.image(), (mg::IdList{0, 1, 3}));
  EXPECT_THROW(mg::MapSample(space, {0, 1}, {0}), std::invalid_argument);
  EXPECT_THROW(mg::MapSample(space, {0, 1}, {0, 9}), mg::UnknownIdError);
  EXPECT_THROW(mg::MapSample(space, {0, 7}, {0, 1}), mg::UnknownIdError);
  EXPECT_THROW(mg::MapSample(space, {0, 0}, {0, 1}), std::invalid_argument);
}

TEST(CheckExpansive, Examples) {
  const auto space = share(mg::make_builtin(mg::LinePoints{{0, 1, 2, 3, 4}}));
  EXPECT_EQ(mg::check_expansive(identity(space)), 0.0);
  EXPECT_EQ(mg::check_expansive(mg::MapSample(space, {0, 1, 2}, {0, 2, 4})), 1.0);
  EXPECT_EQ(mg::isometry_defect(mg::MapSample(space, {0, 1, 2}, {0, 2, 4})), 2.0);
  EXPECT_TRUE(std::isinf(mg::check_expansive(mg::MapSample(space, {3}, {1}))));

  const auto shift = mg::make_demo_map(mg::DemoFamily::ShiftShrinking, 5);
  EXPECT_NEAR(mg::check_expansive(shift), 0.05, 1e-15);
  EXPECT_NEAR(mg::isometry_defect(shift), 1.0 / 6.0, 1e-15);
}

TEST(CertifyAtEpsilon, RotationClearsEveryHypothesis) {
  const auto map = rotation(6, 1);
  const auto r = mg::certify_at_epsilon(map, 0.4);
  EXPECT_TRUE(r.hypotheses_clear());
  EXPECT_EQ(r.packing_x.n_eps, 6u);
  EXPECT_EQ(r.packing_y.n_eps, 6u);
  EXPECT_EQ(r.net.members, iota_ids(6));
  EXPECT_EQ(r.pair_ratio_bound, 1.0);
  EXPECT_EQ(r.max_excess, 0.0);
  EXPECT_EQ(r.chain_violations, 0u);
  EXPECT_NEAR(r.bound_excess, 4 * 0.4, 1e-15);
  EXPECT_EQ(r.pairs.size(), 15u);
  ASSERT_TRUE(r.near_maximality);
  EXPECT_TRUE(r.near_maximality->pass);
}

TEST(CertifyAtEpsilon, DoublingLineIsFlagged) {
  const auto map = mg::make_demo_map(mg::DemoFamily::DoublingLine, 5);
  const auto r = mg::certify_at_epsilon(map, 0.5);
  EXPECT_EQ(r.packing_x.n_eps, 5u);
  EXPECT_EQ(r.packing_y.n_eps, 3u);
  EXPECT_EQ(r.density_gap, 2.0);
  EXPECT_TRUE(has_flag(r, mg::HypothesisFlag::DensityGap));
  EXPECT_TRUE(has_flag(r, mg::HypothesisFlag::PackingMismatch));
  EXPECT_FALSE(r.hypotheses_clear());
  EXPECT_EQ(r.max_excess, 2.0);
  const auto worst = std::max_element(r.pairs.begin(), r.pairs.end(), [](const auto& a, const auto& b) {
    return a.observed - a.distance < b.observed - b.distance;
  });
  EXPECT_EQ(worst->y, 0u);
  EXPECT_EQ(worst->z, 2u);
}

TEST(CertifyAtEpsilon, ContractingMapThrows) {
  const auto space = share(mg::make_builtin(mg::LinePoints{{0, 1, 3}}));
  try {
    mg::certify_at_epsilon(mg::MapSample(space, {0, 1, 2}, {0, 2, 1}), 0.5);
    FAIL() << "expected NotExpansive";
  } catch (const mg::NotExpansive& e) {
    EXPECT_EQ(e.y(), 0u);
    EXPECT_EQ(e.z(), 2u);
    EXPECT_EQ(e.margin(), -2.0);
  }
  EXPECT_THROW(mg::certify_isometry(mg::MapSample(space, {0, 2}, {0, 1}),
                                    mg::EpsilonSchedule({0.5}), 0.1),
               mg::NotExpansive);
  EXPECT_THROW(mg::certify_at_epsilon(identity(space), 0.0), std::invalid_argument);
}

TEST(CertifyIsometry, IdentityPasses) {
  const auto space = share(mg::random_repaired_metric(8, 12));
  std::vector<double> eps;
  for (double e = 0.5; e >= 1e-3; e /= 2) eps.push_back(e);
  const auto cert = mg::certify_isometry(identity(space), mg::EpsilonSchedule(eps), 0.05);
  EXPECT_EQ(cert.verdict, mg::Verdict::Pass);
  EXPECT_EQ(cert.direct_defect, 0.0);
  ASSERT_TRUE(cert.passing_epsilon);
  EXPECT_LE(4 * *cert.passing_epsilon, 0.05 + 1e-15);
  EXPECT_EQ(cert.reports.size(), eps.size());
}

TEST(CertifyIsometry, BoundExcessDecaysForIdentity) {
  const auto space = share(mg::random_repaired_metric(9, 44));
  const auto cert =
      mg::certify_isometry(identity(space), mg::EpsilonSchedule::geometric(0.4, 0.5, 8), 0.01);
  for (mg::Index k = 1; k < cert.reports.size(); ++k)
    EXPECT_LT(cert.reports[k].bound_excess, cert.reports[k - 1].bound_excess);
}

TEST(CertifyIsometry, ShiftShrinkingHypothesesUnmet) {
  const auto map = mg::make_demo_map(mg::DemoFamily::ShiftShrinking, 6);
  const double diam = map.space().diameter();
  const auto cert = mg::certify_isometry(map, mg::default_schedule(diam, mg::default_tol_iso(diam)),
                                         mg::default_tol_iso(diam));
  EXPECT_EQ(cert.verdict, mg::Verdict::HypothesesUnmet);
  EXPECT_NEAR(cert.expansive_margin, 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(cert.direct_defect, 1.0 / 6.0, 1e-15);
  for (const auto& r : cert.reports) EXPECT_TRUE(has_flag(r, mg::HypothesisFlag::DensityGap));
}

TEST(CertifyIsometry, WorkerCountDoesNotChangeResult) {
  const auto map = rotation(8, 3);
  const auto schedule = mg::EpsilonSchedule::geometric(1.0, 0.5, 6);
  mg::CertifyConfig one, many;
  many.workers = 3;
  const auto a = mg::certify_isometry(map, schedule, 0.1, one);
  const auto b = mg::certify_isometry(map, schedule, 0.1, many);
  EXPECT_EQ(a.verdict, b.verdict);
  ASSERT_EQ(a.reports.size(), b.reports.size());
  for (mg::Index k = 0; k < a.reports.size(); ++k) {
    EXPECT_EQ(a.reports[k].net.members, b.reports[k].net.members);
    EXPECT_EQ(a.reports[k].bound_excess, b.reports[k].bound_excess);
  }
}

// Every PASS must come with a small direct defect.
TEST(CertifierProperties, PassImpliesSmallDefect) {
  std::mt19937_64 rng(2024);
  for (unsigned seed = 0; seed < 40; ++seed) {
    const auto space = share(mg::random_repaired_metric(7, 700 + seed));
    mg::IdList image = iota_ids(space->size());
    std::shuffle(image.begin(), image.end(), rng);
    const mg::MapSample map(space, iota_ids(space->size()), image);
    if (mg::check_expansive(map) < 0.0) {
      EXPECT_THROW(mg::certify_isometry(map, mg::EpsilonSchedule({0.1}), 0.01), mg::NotExpansive);
      continue;
    }
    const auto cert = mg::certify_isometry(map, mg::EpsilonSchedule::geometric(0.5, 0.5, 8), 0.02);
    if (cert.verdict == mg::Verdict::Pass) {
      EXPECT_LE(cert.direct_defect, 0.02);
    }
  }
  const auto id = identity(share(mg::random_repaired_metric(7, 1)));
  EXPECT_EQ(mg::certify_isometry(id, mg::EpsilonSchedule::geometric(0.5, 0.5, 8), 0.02).verdict,
            mg::Verdict::Pass);
}

TEST(CertifierProperties, SubsetMapsAreAlwaysFlagged) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto space = share(mg::random_repaired_metric(8, 900 + seed));
    const mg::IdList dom{0, 1, 2, 3, 4, 5, 6};
    const mg::MapSample map(space, dom, dom);
    const auto cert = mg::certify_isometry(map, mg::EpsilonSchedule::geometric(0.5, 0.5, 5), 0.1);
    EXPECT_EQ(cert.verdict, mg::Verdict::HypothesesUnmet);
  }
}

TEST(EpsilonSchedule, Validation) {
  EXPECT_THROW(mg::EpsilonSchedule({}), std::invalid_argument);
  EXPECT_THROW(mg::EpsilonSchedule({0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(mg::EpsilonSchedule({0.5, -1.0}), std::invalid_argument);
  EXPECT_THROW(mg::EpsilonSchedule::geometric(1.0, 1.0, 3), std::invalid_argument);
  const auto s = mg::EpsilonSchedule::geometric(1.0, 0.5, 3);
  EXPECT_EQ(s.values(), (std::vector<double>{1.0, 0.5, 0.25}));
}

TEST(EpsilonSchedule, DefaultReachesTolerance) {
  const auto s = mg::default_schedule(2.0, mg::default_tol_iso(2.0));
  EXPECT_GE(s.size(), mg::kMinDefaultScheduleLength);
  EXPECT_EQ(s.values().front(), 1.0);
  EXPECT_LE(4 * s.smallest(), mg::default_tol_iso(2.0));
  EXPECT_EQ(mg::default_schedule(2.0, 10.0).size(), mg::kMinDefaultScheduleLength);
}
