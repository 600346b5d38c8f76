#include <benchmark/benchmark.h>

#include "gmech/complexity.hpp"
#include "gmech/digraph.hpp"
#include "gmech/market.hpp"
#include "gmech/price_engine.hpp"
#include "gmech/rng.hpp"
#include "gmech/search.hpp"

using namespace gmech;

namespace {

EdgeWeights dense_weights(int m) {
  Rng rng(12345);
  const Digraph g = make_complete(m);
  std::vector<Rational> w;
  for (int k = 0; k < g.edge_count(); ++k)
    w.push_back(make_rational(rng.range(1, 100), rng.range(1, 100)));
  return EdgeWeights(g, std::move(w));
}

void BM_PricesTreeFormula(benchmark::State& state) {
  const EdgeWeights b = dense_weights(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prices_by_tree_formula(b));
}
BENCHMARK(BM_PricesTreeFormula)->Arg(4)->Arg(5)->Arg(6);

void BM_PricesBalanceSolve(benchmark::State& state) {
  const EdgeWeights b = dense_weights(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prices_by_balance_solve(b));
}
BENCHMARK(BM_PricesBalanceSolve)->Arg(4)->Arg(5)->Arg(6);

void BM_InfluenceExact(benchmark::State& state) {
  const Digraph g = make_complete(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(influence_exact(g));
}
BENCHMARK(BM_InfluenceExact)->Arg(4)->Arg(5);

void BM_InfluenceScreened(benchmark::State& state) {
  const Digraph g = make_complete(static_cast<int>(state.range(0)));
  const ScreenConfig cfg{99, 3};
  for (auto _ : state) benchmark::DoNotOptimize(influence_screened(g, cfg));
}
BENCHMARK(BM_InfluenceScreened)->Arg(4)->Arg(5)->Arg(6);

void BM_SweepExact(benchmark::State& state) {
  SearchConfig cfg{PiMethod::Exact, 2, 1, 3};
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep_mechanisms(static_cast<int>(state.range(0)), cfg));
}
BENCHMARK(BM_SweepExact)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SweepScreened(benchmark::State& state) {
  SearchConfig cfg{PiMethod::Screened, 2, 1, 3};
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep_mechanisms(static_cast<int>(state.range(0)), cfg));
}
BENCHMARK(BM_SweepScreened)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_AxiomInstances(benchmark::State& state) {
  AxiomCheckConfig cfg;
  cfg.instances = static_cast<int>(state.range(0));
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(cfg));
}
BENCHMARK(BM_AxiomInstances)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_RouteExchange(benchmark::State& state) {
  const EdgeWeights b = dense_weights(6);
  for (auto _ : state) benchmark::DoNotOptimize(route_exchange(b, 0, 5, Rational(1)));
}
BENCHMARK(BM_RouteExchange);

}  // namespace

BENCHMARK_MAIN();
