// Serial reference against the OpenMP kernels: the penalized objective with
// gradient and the threshold sweep.

#include <benchmark/benchmark.h>

#include "elastica/analysis.hpp"
#include "elastica/kernels.hpp"
#include "elastica/specfun.hpp"

using namespace elastica;

namespace {

void objective(benchmark::State& state, Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const PolyCurve c = comparison_polyline(0.3, n);
  const Obstacle o = Obstacle::cone(1.5, 0.25);
  PenaltyWeights w;
  w.epsilon = 0.1;
  w.speed = 1.0 * n * n * n;
  std::vector<double> grad;
  for (auto _ : state) {
    auto r = objective_kernel(c.points(), o, w, &grad, exec);
    benchmark::DoNotOptimize(r.total);
    benchmark::DoNotOptimize(grad.data());
  }
  state.SetItemsProcessed(state.iterations() * (n + 1));
}

void BM_ObjectiveSerial(benchmark::State& s) { objective(s, Exec::serial); }
void BM_ObjectiveParallel(benchmark::State& s) { objective(s, Exec::parallel); }

void sweep(benchmark::State& state, bool parallel) {
  SweepOptions opt;
  opt.points = static_cast<int>(state.range(0));
  opt.parallel = parallel;
  for (auto _ : state) {
    auto r = cone_threshold_sweep(opt);
    benchmark::DoNotOptimize(r.sweep_max);
  }
}

void BM_SweepSerial(benchmark::State& s) { sweep(s, false); }
void BM_SweepParallel(benchmark::State& s) { sweep(s, true); }

}  // namespace

BENCHMARK(BM_ObjectiveSerial)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_ObjectiveParallel)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_SweepSerial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
