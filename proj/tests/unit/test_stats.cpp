#include <gtest/gtest.h>

#include "support.hpp"
#include "tropwave/io.hpp"
#include "tropwave/stats.hpp"

using namespace tropwave;
using namespace tropwave::testing;

TEST(SamplePoints, InteriorDyadicAndDeterministic) {
  QPolygon tri = QPolygon::from_vertices({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(1)}});
  auto a = sample_points(tri, 50, 100, 9), b = sample_points(tri, 50, 100, 9);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(tri.interior(a[i]));
    EXPECT_LE(a[i].x.get_den(), 64);
    EXPECT_EQ(a[i].x.get_den() & (a[i].x.get_den() - 1), 0);
  }
  EXPECT_NE(sample_points(tri, 5, 100, 10)[0], a[0]);
}

TEST(Experiment, SingleTrialSinglePoint) {
  ExperimentConfig cfg;
  cfg.n = 1;
  cfg.trials = 1;
  ExperimentStats s = avalanche_experiment(unit_square(), cfg);
  ASSERT_EQ(s.areas.size(), 1u);
  EXPECT_EQ(s.areas[0], Rat(1));
  EXPECT_EQ(s.steps, std::vector<std::size_t>{2});
  EXPECT_EQ(s.unconverged, 0u);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.trials = 12;
  cfg.seed = 77;
  ExperimentStats a = avalanche_experiment(unit_square(), cfg);
  cfg.threads = 3;
  ExperimentStats b = avalanche_experiment(unit_square(), cfg);
  b.config.threads = 1;
  EXPECT_EQ(dump(to_json(a)), dump(to_json(b)));
  EXPECT_EQ(a.areas, b.areas);
}

TEST(Experiment, CcdfIsMonotoneProbability) {
  ExperimentConfig cfg;
  cfg.n = 20;
  cfg.trials = 10;
  ExperimentStats s = avalanche_experiment(unit_square(), cfg);
  ASSERT_FALSE(s.ccdf.empty());
  EXPECT_EQ(s.ccdf.front().second, Rat(1));
  for (std::size_t i = 0; i < s.ccdf.size(); ++i) {
    EXPECT_GT(s.ccdf[i].second, Rat(0));
    EXPECT_LE(s.ccdf[i].second, Rat(1));
    if (i) {
      EXPECT_GT(s.ccdf[i].first, s.ccdf[i - 1].first);
      EXPECT_LT(s.ccdf[i].second, s.ccdf[i - 1].second);
    }
  }
  std::size_t total = 0;
  for (const auto& b : s.histogram) total += b.count;
  EXPECT_EQ(total, s.areas.size());
}

TEST(EmpiricalCcdf, SmallSample) {
  auto c = empirical_ccdf({Rat(2), Rat(1), Rat(2), Rat(3)});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], std::make_pair(Rat(1), Rat(1)));
  EXPECT_EQ(c[1], std::make_pair(Rat(2), rat(3, 4)));
  EXPECT_EQ(c[2], std::make_pair(Rat(3), rat(1, 4)));
}

TEST(HillEstimator, RecoversParetoIndex) {
  // Quantiles of a Pareto law with index 1: x_i = N / i.
  std::vector<Rat> xs;
  const long n = 10000;
  for (long i = 1; i <= n; ++i) xs.push_back(rat(n, i));
  HillEstimate h = hill_estimate(xs);
  EXPECT_EQ(h.k_tail, 100u);
  EXPECT_NEAR(h.alpha, 1.0, 0.05);
  std::vector<Rat> ties(16, Rat(1));
  EXPECT_TRUE(std::isinf(hill_estimate(ties).alpha));
  // Top four tie: the threshold moves down to the first smaller sample.
  std::vector<Rat> tied_top{Rat(4), Rat(4), Rat(4), Rat(4), Rat(4), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)};
  HillEstimate t = hill_estimate(tied_top);
  EXPECT_EQ(t.k_tail, 5u);
  EXPECT_NEAR(t.alpha, 1.0 / std::log(4.0), 1e-12);
  EXPECT_EQ(hill_estimate({}).k_tail, 0u);
}

TEST(Splitmix, KnownValue) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}
