#include <benchmark/benchmark.h>

#include "cohort/bounds.hpp"
#include "cohort/compiler.hpp"
#include "cohort/feasibility.hpp"
#include "cohort/generator.hpp"
#include "cohort/heuristics.hpp"
#include "cohort/milp.hpp"
#include "cohort/objectives.hpp"
#include "cohort/simplex.hpp"

using namespace cohort;

namespace {

const Roster& enrollment_roster() {
  static const Roster r = generate(GenSpec::enrollment(2023), 1);
  return r;
}

ModelKind kind_of(std::int64_t k) { return static_cast<ModelKind>(k); }

void BM_CompileEnrollment(benchmark::State& state) {
  const auto& r = enrollment_roster();
  const auto v = ModelVariant::for_roster(kind_of(state.range(0)), r);
  for (auto _ : state) benchmark::DoNotOptimize(compile(r, v));
  state.SetLabel(std::string(to_string(v.kind)));
}
BENCHMARK(BM_CompileEnrollment)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PairsBound(benchmark::State& state) {
  const auto& r = enrollment_roster();
  for (auto _ : state) benchmark::DoNotOptimize(pairs_lower_bound(r));
}
BENCHMARK(BM_PairsBound);

void BM_CheckFeasible(benchmark::State& state) {
  const auto& r = enrollment_roster();
  const auto deal = cyclic_deal(r);
  for (auto _ : state) benchmark::DoNotOptimize(check_feasible(r, deal, {.no_stay = true}));
}
BENCHMARK(BM_CheckFeasible)->Unit(benchmark::kMicrosecond);

void BM_CountPairs(benchmark::State& state) {
  const auto& r = enrollment_roster();
  const auto deal = cyclic_deal(r);
  for (auto _ : state) benchmark::DoNotOptimize(count_pairs(r, deal));
}
BENCHMARK(BM_CountPairs)->Unit(benchmark::kMicrosecond);

void BM_RootLpDesk(benchmark::State& state) {
  const auto size = static_cast<int>(state.range(0));
  const auto r = generate(GenSpec::desk(size, size), 1);
  const auto m = compile(r, ModelVariant::min());
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(m.ip));
}
BENCHMARK(BM_RootLpDesk)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SolveMinDesk(benchmark::State& state) {
  const auto r = generate(GenSpec::desk(8, 8), 1);
  const auto m = compile(r, ModelVariant::min());
  for (auto _ : state) benchmark::DoNotOptimize(solve_ip(m.ip));
}
BENCHMARK(BM_SolveMinDesk)->Unit(benchmark::kMillisecond);

void BM_LocalSearchPairs(benchmark::State& state) {
  const auto r = generate(GenSpec::desk(8, 12), 1);
  const auto start = cyclic_deal(r);
  LocalSearchOptions opt;
  opt.max_evaluations = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(local_search(r, start, ModelVariant::pairs(), opt));
}
BENCHMARK(BM_LocalSearchPairs)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
