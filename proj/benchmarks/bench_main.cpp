#include <benchmark/benchmark.h>

#include "tropwave/lift2.hpp"
#include "tropwave/stats.hpp"
#include "tropwave/wave.hpp"

using namespace tropwave;

namespace {

TropicalSeries third_square() {
  QPolygon sq = QPolygon::box(Rat(0), Rat(0), Rat(1), Rat(1));
  MonomialMap m{{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}, {{-1, 0}, Rat(1)}, {{0, -1}, Rat(1)}, {{0, 0}, rat(1, 3)}};
  return TropicalSeries::from_min(sq, m);
}

void BM_SingleWave(benchmark::State& state) {
  TropicalSeries f = third_square();
  Point p(rat(1, 5), rat(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(wave(f, p));
}
BENCHMARK(BM_SingleWave);

void BM_Dynamics(benchmark::State& state) {
  QPolygon sq = QPolygon::box(Rat(0), Rat(0), Rat(1), Rat(1));
  auto pts = sample_points(sq, static_cast<std::size_t>(state.range(0)), 64, 7);
  TropicalSeries zero = TropicalSeries::zero(sq);
  for (auto _ : state) benchmark::DoNotOptimize(run_dynamics(zero, pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dynamics)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LiftCheck(benchmark::State& state) {
  std::uint64_t s = 3;
  LaurentPoly2 f;
  for (long i = -1; i <= 1; ++i)
    for (long j = -1; j <= 1; ++j) f.set({i, j}, random_ratfun(s, 3));
  GF2RatFun p1 = random_ratfun(s, 2), p2 = random_ratfun(s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_lift_theorem(f, p1, p2));
}
BENCHMARK(BM_LiftCheck);

void BM_LiftFuzz(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lift_fuzz({100, 1, 5, 3}));
}
BENCHMARK(BM_LiftFuzz)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
