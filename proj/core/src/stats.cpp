#include "tropwave/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "tropwave/errors.hpp"

namespace tropwave {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Point> sample_points(const QPolygon& dom, std::size_t n, long denom_bound, std::uint64_t seed) {
  if (!dom.bounded()) throw Error(ErrorCode::Unsupported, "sampling needs a bounded domain");
  long d = 1;
  while (d * 2 <= denom_bound) d *= 2;
  Rat x0 = dom.outline()[0].x, x1 = x0, y0 = dom.outline()[0].y, y1 = y0;
  for (const auto& p : dom.outline()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  auto grid = [d](const Rat& lo, const Rat& hi) {
    mpz_class a, b;
    mpz_cdiv_q(a.get_mpz_t(), mpq_class(lo * d).get_num_mpz_t(), mpq_class(lo * d).get_den_mpz_t());
    mpz_fdiv_q(b.get_mpz_t(), mpq_class(hi * d).get_num_mpz_t(), mpq_class(hi * d).get_den_mpz_t());
    return std::pair<long, long>{a.get_si(), b.get_si()};
  };
  auto [ix0, ix1] = grid(x0, x1);
  auto [iy0, iy1] = grid(y0, y1);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  std::size_t attempts = 0;
  while (out.size() < n) {
    if (++attempts > 1000 * (n + 10)) throw Error(ErrorCode::PreconditionViolated, "grid too coarse for the domain");
    long i = ix0 + static_cast<long>(rng() % static_cast<std::uint64_t>(ix1 - ix0 + 1));
    long j = iy0 + static_cast<long>(rng() % static_cast<std::uint64_t>(iy1 - iy0 + 1));
    Point p{rat(i, d), rat(j, d)};
    if (dom.interior(p)) out.push_back(p);
  }
  return out;
}

std::vector<std::pair<Rat, Rat>> empirical_ccdf(const std::vector<Rat>& samples) {
  std::vector<Rat> s = samples;
  std::sort(s.begin(), s.end());
  std::vector<std::pair<Rat, Rat>> out;
  const long n = static_cast<long>(s.size());
  for (long i = 0; i < n; ++i) {
    if (i > 0 && s[i] == s[i - 1]) continue;
    out.emplace_back(s[i], rat(n - i, n));
  }
  return out;
}

HillEstimate hill_estimate(const std::vector<Rat>& samples) {
  HillEstimate h;
  std::vector<double> x;
  for (const auto& r : samples) x.push_back(r.get_d());
  std::sort(x.begin(), x.end(), std::greater<>());
  std::size_t k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(x.size()))));
  if (k == 0 || k + 1 > x.size()) return h;
  while (k + 1 < x.size() && x[k] == x[0]) ++k;
  if (x[k] <= 0) return h;
  double mean = 0;
  for (std::size_t i = 0; i < k; ++i) mean += std::log(x[i] / x[k]);
  mean /= static_cast<double>(k);
  h.k_tail = k;
  h.alpha = mean > 0 ? 1.0 / mean : std::numeric_limits<double>::infinity();
  return h;
}

std::vector<HistogramBin> log_histogram(const std::vector<Rat>& samples, std::size_t bins) {
  std::vector<HistogramBin> out;
  if (samples.empty() || bins == 0) return out;
  double lo = samples[0].get_d(), hi = lo;
  for (const auto& r : samples) {
    lo = std::min(lo, r.get_d());
    hi = std::max(hi, r.get_d());
  }
  if (lo <= 0) throw Error(ErrorCode::PreconditionViolated, "log histogram needs positive samples");
  if (hi == lo) return {{lo, hi, samples.size()}};
  double ratio = std::log(hi / lo);
  for (std::size_t b = 0; b < bins; ++b) {
    out.push_back({lo * std::exp(ratio * static_cast<double>(b) / static_cast<double>(bins)),
                   lo * std::exp(ratio * static_cast<double>(b + 1) / static_cast<double>(bins)), 0});
  }
  out.back().hi = hi;
  for (const auto& r : samples) {
    double pos = std::log(r.get_d() / lo) / ratio * static_cast<double>(bins);
    std::size_t b = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(pos))));
    ++out[b].count;
  }
  return out;
}

namespace {

struct TrialResult {
  std::vector<Rat> areas;
  std::size_t steps = 0;
  bool converged = true;
};

TrialResult run_trial(const QPolygon& dom, const TropicalSeries& zero, const ExperimentConfig& cfg, std::size_t trial) {
  auto pts = sample_points(dom, cfg.n, cfg.denom_bound, splitmix64(cfg.seed + trial));
  StopRule stop;
  stop.max_steps = cfg.max_steps;
  auto res = run_dynamics(zero, pts, {}, stop);
  TrialResult out;
  out.steps = res.steps;
  out.converged = res.reason == StopReason::Stabilized;
  for (const auto& ev : res.events) {
    if (ev.c > 0 && ev.avalanche_area > 0) out.areas.push_back(ev.avalanche_area);
  }
  return out;
}

}  // namespace

ExperimentStats avalanche_experiment(const QPolygon& dom, const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorCode::PreconditionViolated, "need at least one point per trial");
  TropicalSeries zero = TropicalSeries::zero(dom);
  std::vector<TrialResult> results(cfg.trials);
  unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) results[t] = run_trial(dom, zero, cfg, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t; (t = next++) < cfg.trials;) {
          try {
            results[t] = run_trial(dom, zero, cfg, t);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  ExperimentStats st;
  st.config = cfg;
  for (const auto& r : results) {
    st.areas.insert(st.areas.end(), r.areas.begin(), r.areas.end());
    st.steps.push_back(r.steps);
    if (!r.converged) ++st.unconverged;
  }
  st.ccdf = empirical_ccdf(st.areas);
  st.histogram = log_histogram(st.areas, cfg.bins);
  st.hill = hill_estimate(st.areas);
  return st;
}

}  // namespace tropwave
