#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropwave/wave.hpp"

namespace tropwave {

struct ExperimentConfig {
  std::size_t n = 20;             // points per trial
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  long denom_bound = 64;          // points live on the grid (1/denom_bound) Z^2
  std::size_t max_steps = 100000; // per trial
  std::size_t bins = 20;
  unsigned threads = 1;
};

struct HillEstimate {
  /// Infinite when all samples are equal; 0 when there is no tail.
  double alpha = 0;
  std::size_t k_tail = 0;
};

struct HistogramBin {
  double lo = 0, hi = 0;
  std::size_t count = 0;
};

struct ExperimentStats {
  /// Sorted distinct areas x with P(A >= x), exact.
  std::vector<std::pair<Rat, Rat>> ccdf;
  std::vector<HistogramBin> histogram;
  HillEstimate hill;
  std::vector<Rat> areas;          // every positive avalanche area, in trial order
  std::vector<std::size_t> steps;  // wave count per trial
  std::size_t unconverged = 0;
  ExperimentConfig config;
};

/// Random points on the dyadic grid, strictly inside the domain.
std::vector<Point> sample_points(const QPolygon& dom, std::size_t n, long denom_bound, std::uint64_t seed);

ExperimentStats avalanche_experiment(const QPolygon& dom, const ExperimentConfig& cfg);

/// Exact empirical complementary CDF.
std::vector<std::pair<Rat, Rat>> empirical_ccdf(const std::vector<Rat>& samples);
/// Hill estimator on the top floor(sqrt(N)) order statistics. The tail is
/// extended while the threshold equals the maximum.
HillEstimate hill_estimate(const std::vector<Rat>& samples);
std::vector<HistogramBin> log_histogram(const std::vector<Rat>& samples, std::size_t bins);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tropwave
