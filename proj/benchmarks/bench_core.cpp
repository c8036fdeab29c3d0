#include <benchmark/benchmark.h>

#include "bistab/convexity.hpp"
#include "bistab/dynamics.hpp"
#include "bistab/equilibria.hpp"
#include "bistab/regions.hpp"

using namespace bistab;

namespace {

SystemSpec toggle(double beta) { return {make_hill(0.0, 2.0, 1.0), make_hill(0.0, 6.0, 1.0), 10.0, beta}; }

void BM_HillJet(benchmark::State& state) {
  const auto h = make_hill(0.2, 4.0, 1.0);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.jet(x));
    x = x < 5.0 ? x + 1e-3 : 0.5;
  }
}
BENCHMARK(BM_HillJet);

void BM_ExprJet(benchmark::State& state) {
  const Expr e = parse("x^2/(1+x^2) + 0.1*tanh(x)");
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet3(e, 1.3));
}
BENCHMARK(BM_ExprJet);

void BM_Certify(benchmark::State& state) {
  const auto h = make_hill(0.0, 2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(certify_gamma(h).verdict);
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

void BM_FindEquilibria(benchmark::State& state) {
  const auto spec = toggle(static_cast<double>(state.range(0)));
  EquilibriaOptions opts;
  opts.certified = true;
  for (auto _ : state) benchmark::DoNotOptimize(find_equilibria(spec, opts).size());
}
BENCHMARK(BM_FindEquilibria)->Arg(3)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_RegionSweep(benchmark::State& state) {
  const auto f = make_hill(0.0, 2.0, 1.0), g = make_hill(0.0, 6.0, 1.0);
  const auto grid = make_grid(0.1, 100.0, static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(region_sweep(f, g, grid, grid, {}, 1).cells.size());
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RegionSweep)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_MapG1(benchmark::State& state) {
  auto spec = toggle(12.0);
  for (auto _ : state) {
    const auto e1 = e1_region(spec, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(map_G1(e1, spec).curves.size());
  }
}
BENCHMARK(BM_MapG1)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Separatrix(benchmark::State& state) {
  const auto spec = toggle(12.0);
  for (auto _ : state) benchmark::DoNotOptimize(compute_separatrix(spec).curve.points.size());
}
BENCHMARK(BM_Separatrix)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
