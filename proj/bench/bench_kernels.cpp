// Serial reference kernels against their OpenMP counterparts on tall
// design matrices.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "catreg/kernels.hpp"
#include "catreg/matrix.hpp"

namespace {

using catreg::Matrix;
namespace k = catreg::kernels;

Matrix random_design(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> z;
  std::bernoulli_distribution coin(0.4);
  Matrix m(rows, cols, 1.0);
  for (std::size_t j = 1; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = j % 3 == 0 ? z(rng) : (coin(rng) ? 1.0 : 0.0);
  }
  return m;
}

template <k::Backend B>
void BM_PivotedQr(benchmark::State& state) {
  const Matrix a = random_design(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(k::pivoted_qr(a, B));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <k::Backend B>
void BM_Matvec(benchmark::State& state) {
  const Matrix a = random_design(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)));
  const std::vector<double> x(a.cols(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(k::matvec(a, x, B));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <k::Backend B>
void BM_MultiplyInto(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> acc(n, 1.0);
  const std::vector<double> x(n, 1.0);
  for (auto _ : state) {
    k::multiply_into(acc, x, B);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({10'000, 17})->Args({100'000, 17})->Args({100'000, 60})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_PivotedQr<k::Backend::Serial>)->Apply(shapes);
BENCHMARK(BM_PivotedQr<k::Backend::Parallel>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_Matvec<k::Backend::Serial>)->Apply(shapes);
BENCHMARK(BM_Matvec<k::Backend::Parallel>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_MultiplyInto<k::Backend::Serial>)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MultiplyInto<k::Backend::Parallel>)->Arg(1'000'000)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
