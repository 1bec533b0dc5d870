// Serial reference kernels against the OpenMP ones. Thread count follows
// GRIDCERT_THREADS (or the OpenMP default).
#include <benchmark/benchmark.h>

#include "gridcert/boundary.hpp"
#include "gridcert/certificates.hpp"
#include "gridcert/netmodel.hpp"

using namespace gridcert;

namespace {

ImpedanceMatrix feeder(int n) {
  Network net;
  for (int b = 0; b <= n; ++b) net.buses.push_back(Bus{b, {}});
  // Main trunk with a lateral every third bus.
  for (int b = 1; b <= n; ++b) net.lines.push_back(Line{b % 3 == 0 ? b - 2 : b - 1, b, 0.02, 0.06});
  return impedance_matrix(net);
}

SweepOptions options() {
  SweepOptions o;
  o.parallelism = Parallelism::from_env();
  return o;
}

void oracle_serial(benchmark::State& state) {
  const auto z = feeder(static_cast<int>(state.range(0)));
  const auto pattern = LoadPattern::uniform(z.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::sweep_boundary(z, 1.0, pattern, 32, Method::oracle, options()));
}

void oracle_parallel(benchmark::State& state) {
  const auto z = feeder(static_cast<int>(state.range(0)));
  const auto pattern = LoadPattern::uniform(z.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep_boundary(z, 1.0, pattern, 32, Method::oracle, options()));
}

void union_serial(benchmark::State& state) {
  const auto z = feeder(static_cast<int>(state.range(0)));
  const auto pattern = LoadPattern::uniform(z.size());
  const auto grid = lambda_grid(0.5, 25.0, 4, static_cast<int>(z.size()));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        reference::lambda_union_samples(z, 1.0, pattern, grid, Norm::two, 64, options()));
}

void union_parallel(benchmark::State& state) {
  const auto z = feeder(static_cast<int>(state.range(0)));
  const auto pattern = LoadPattern::uniform(z.size());
  const auto grid = lambda_grid(0.5, 25.0, 4, static_cast<int>(z.size()));
  for (auto _ : state)
    benchmark::DoNotOptimize(lambda_union_samples(z, 1.0, pattern, grid, Norm::two, 64, options()));
}

}  // namespace

BENCHMARK(oracle_serial)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(oracle_parallel)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(union_serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(union_parallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
