// Serial reference kernels against their OpenMP counterparts.
//
//   ./bench_kernels --benchmark_filter=derivative
//   RKLAB_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rklab/exponents.hpp"
#include "rklab/kernels.hpp"
#include "rklab/parallel.hpp"
#include "rklab/wordgraph.hpp"

namespace {

namespace kr = rklab::kernels;

std::vector<double> random_table(int depth) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(std::size_t{1} << depth);
  for (double& x : v) x = u(rng);
  return v;
}

template <auto Kernel>
void derivative(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const auto f = random_table(depth);
  std::vector<double> d(f.size() * 2);
  for (auto _ : state) {
    Kernel(f, depth, d);
    benchmark::DoNotOptimize(d.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(d.size()));
}

template <auto Kernel>
void mean_sup(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const auto d = random_table(depth + 1);
  const auto p = rklab::Exponents::from_p(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(d, depth, p));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(d.size() / 2));
}

template <auto Kernel>
void conditional(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const auto f = random_table(depth);
  std::vector<double> out(f.size());
  for (auto _ : state) {
    Kernel(f, depth, 3, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void transfer(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const auto a0 = random_table(depth), a1 = random_table(depth), x = random_table(depth);
  std::vector<double> y(x.size());
  for (auto _ : state) {
    Kernel(a0, a1, depth, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void all_pairs_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rklab::all_pairs_distances_serial(static_cast<int>(state.range(0))));
}

void all_pairs_omp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rklab::all_pairs_distances(static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(derivative<kr::serial::derivative>)->Name("derivative/serial")->DenseRange(16, 24, 4);
BENCHMARK(derivative<kr::omp::derivative>)->Name("derivative/omp")->DenseRange(16, 24, 4)->UseRealTime();
BENCHMARK(mean_sup<kr::serial::backward_mean_sup>)->Name("mean_sup/serial")->DenseRange(16, 24, 4);
BENCHMARK(mean_sup<kr::omp::backward_mean_sup>)->Name("mean_sup/omp")->DenseRange(16, 24, 4)->UseRealTime();
BENCHMARK(conditional<kr::serial::conditional_expectation>)->Name("cond_exp/serial")->DenseRange(16, 24, 4);
BENCHMARK(conditional<kr::omp::conditional_expectation>)->Name("cond_exp/omp")->DenseRange(16, 24, 4)->UseRealTime();
BENCHMARK(transfer<kr::serial::transfer_apply>)->Name("transfer/serial")->DenseRange(16, 24, 4);
BENCHMARK(transfer<kr::omp::transfer_apply>)->Name("transfer/omp")->DenseRange(16, 24, 4)->UseRealTime();
BENCHMARK(all_pairs_serial)->Name("all_pairs/serial")->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(all_pairs_omp)->Name("all_pairs/omp")->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  rklab::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
