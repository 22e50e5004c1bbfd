// Serial references against the OpenMP kernels. Thread counts above the
// machine's core count only measure scheduling overhead. Wall time is
// reported because CPU time only counts the calling thread.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "isat/branching_queue.hpp"
#include "isat/interval_math.hpp"
#include "isat/parallel.hpp"
#include "isat/two_isat.hpp"
#include "isat/uc_solver.hpp"

namespace {

using namespace isat;

void BM_ProbeSerial(benchmark::State& state) {
  const ProbeSpec spec{Quantity::Disjoint};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_serial(spec, 1 << 20, 1));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_ProbeSerial)->Unit(benchmark::kMillisecond);

void BM_ProbeParallel(benchmark::State& state) {
  const ProbeSpec spec{Quantity::Disjoint};
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_parallel(spec, 1 << 20, 1, threads));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_ProbeParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_QueueRuns(benchmark::State& state) {
  queue::QueueConfig cfg;
  cfg.a = 2;
  cfg.arrival = queue::BinomialRandomP{6000, 13000};
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(queue::simulate_many(cfg, 20000, 3, threads));
}
BENCHMARK(BM_QueueRuns)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_PhaseSerial(benchmark::State& state) {
  for (auto _ : state) {
    auto rows = map_indexed_serial(16, [](std::size_t i) {
      return std::holds_alternative<TwoSat>(decide(generate_formula(20000, 20000, 2, i)));
    });
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_PhaseSerial)->Unit(benchmark::kMillisecond);

void BM_PhaseParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rows = map_indexed(16, threads, [](std::size_t i) {
      return std::holds_alternative<TwoSat>(decide(generate_formula(20000, 20000, 2, i)));
    });
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_PhaseParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const Formula f = generate_formula(static_cast<std::size_t>(state.range(0)),
                                     static_cast<std::size_t>(state.range(0)) * 2, 3, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(uc::solve(f, ++seed));
}
BENCHMARK(BM_Solve)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
