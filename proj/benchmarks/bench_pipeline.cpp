#include <benchmark/benchmark.h>

#include "smti/engine.hpp"
#include "smti/extract.hpp"
#include "smti/generate.hpp"
#include "smti/oracle.hpp"

namespace {

using namespace smti;

Instance random_instance(int n, int tie) { return gen_random({n, n, 0.5, tie, 12345}); }

void BM_Stage1Random(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_stage1(inst));
  state.counters["edges"] = static_cast<double>(inst.num_edges());
}
BENCHMARK(BM_Stage1Random)->ArgsProduct({{16, 64, 256}, {2, 4}});

void BM_Stage1Tight(benchmark::State& state) {
  const Instance inst = gen_tight(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_stage1(inst));
}
BENCHMARK(BM_Stage1Tight)->DenseRange(2, 32, 10);

void BM_Extract(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<int>(state.range(0)), 3);
  const Stage1Result r = run_stage1(inst);
  for (auto _ : state) benchmark::DoNotOptimize(extract_matching(r.graph));
}
BENCHMARK(BM_Extract)->Arg(16)->Arg(64)->Arg(256);

void BM_Oracle(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(inst));
}
BENCHMARK(BM_Oracle)->DenseRange(4, 8, 2);

}  // namespace

BENCHMARK_MAIN();
