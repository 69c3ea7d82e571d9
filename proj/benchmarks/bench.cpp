#include <benchmark/benchmark.h>

#include <vector>

#include "dioph/arcs.hpp"
#include "dioph/arith.hpp"
#include "dioph/counting.hpp"
#include "dioph/criteria.hpp"
#include "dioph/dimension.hpp"
#include "dioph/fourier.hpp"

using namespace dioph;

namespace {

const ArithTables& tables() {
  static const ArithTables t = build_tables(1 << 20);
  return t;
}

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_tables(static_cast<u64>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Unit(benchmark::kMillisecond);

void BM_IntersectionSeries(benchmark::State& state) {
  const auto p = make_profile(ConstantParams{0.3, 0.2});
  const double tol = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(intersection_series(static_cast<u64>(state.range(0)), 191, p, tol, tables()));
  }
}
BENCHMARK(BM_IntersectionSeries)->Arg(12)->Arg(97)->Arg(180)->Unit(benchmark::kMicrosecond);

void BM_ExactIntersection(benchmark::State& state) {
  const auto n = static_cast<u64>(state.range(0));
  const auto a = arcs_for(n, 0.3, 0.2, true);
  const auto b = arcs_for(191, 0.3, 0.2, true);
  for (auto _ : state) benchmark::DoNotOptimize(measure(intersect(a, b)));
}
BENCHMARK(BM_ExactIntersection)->Arg(12)->Arg(97)->Arg(180);

void BM_CountPairs(benchmark::State& state) {
  const auto N = static_cast<u64>(state.range(0));
  const auto samples = make_profile(ConstantParams{0.5, 0.0}).tabulate(N);
  double x = 0.123456789;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_pairs(x, N, samples, tables()));
    x += 0.0001;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountPairs)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMicrosecond);

void BM_BoxCount(benchmark::State& state) {
  const auto p = make_profile(PowerParams{3.0, 0.0});
  std::vector<u64> schedule;
  for (int e = 6; e <= state.range(0); ++e) schedule.push_back(u64{1} << e);
  for (auto _ : state) benchmark::DoNotOptimize(box_count(p, schedule, tables()));
}
BENCHMARK(BM_BoxCount)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CountingExponentSweep(benchmark::State& state) {
  const auto p = make_profile(PowerParams{3.0, 0.0});
  const auto grid = alpha_grid(1.0, 5.0, 400);
  const u64 N = u64{1} << state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(hs_dimension(p, N, grid));
}
BENCHMARK(BM_CountingExponentSweep)->Arg(14)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CriterionTrace(benchmark::State& state) {
  const auto p = make_profile(PaperExampleParams{});
  const auto cps = dyadic_checkpoints(4, 20);
  CriterionParams params;
  params.a_b = std::pair{10.0, 7.5};
  for (auto _ : state) benchmark::DoNotOptimize(criterion_trace(CriterionKind::cab, p, cps, tables(), params));
}
BENCHMARK(BM_CriterionTrace)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
