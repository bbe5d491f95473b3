// Serial reference vs. OpenMP kernels: exhaustive best-factor search and
// batch solving.

#include <benchmark/benchmark.h>

#include "fairdiv/batch.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"

namespace {

fairdiv::Instance oracle_instance(std::size_t agents, std::size_t items) {
  fairdiv::GenSpec spec;
  spec.agents = agents;
  spec.items = items;
  spec.seed = 7;
  return fairdiv::generate_instance(spec);
}

void BM_BestFactorSerial(benchmark::State& state) {
  const auto instance = oracle_instance(static_cast<std::size_t>(state.range(0)),
                                        static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_best_factor_serial(instance, fairdiv::FairnessNotion::EFR));
  }
}

void BM_BestFactorParallel(benchmark::State& state) {
  const auto instance = oracle_instance(static_cast<std::size_t>(state.range(0)),
                                        static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_best_factor(instance, fairdiv::FairnessNotion::EFR));
  }
}

fairdiv::BatchSpec batch_spec(std::int64_t count) {
  fairdiv::BatchSpec spec;
  spec.count = static_cast<std::size_t>(count);
  spec.seed = 11;
  return spec;
}

void BM_BatchSerial(benchmark::State& state) {
  const auto spec = batch_spec(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::run_batch_serial(spec));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto spec = batch_spec(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::run_batch(spec));
}

}  // namespace

BENCHMARK(BM_BestFactorSerial)->Args({3, 8})->Args({4, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestFactorParallel)->Args({3, 8})->Args({4, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
