// Serial reference kernels against the OpenMP kernels, classical against
// Strassen products, and the decomposition under both execution modes.
//
//   ./leu_bench --benchmark_filter=Gemm
//   OMP_NUM_THREADS=8 ./leu_bench

#include <benchmark/benchmark.h>

#include "leu/kernels/reference.hpp"
#include "leu/leu.hpp"
#include "leu/random.hpp"

namespace {

using leu::Execution;
using leu::Matrix;
using leu::PrimeField;
using leu::RationalField;

const PrimeField kField(65521);

void BM_GemmReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  leu::SplitMix64 rng(1);
  const auto a = leu::random_matrix(kField, n, n, rng);
  const auto b = leu::random_matrix(kField, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(leu::kernels::reference::gemm(a, b));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}

void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto exec = state.range(1) ? Execution::Parallel : Execution::Serial;
  leu::SplitMix64 rng(1);
  const auto a = leu::random_matrix(kField, n, n, rng);
  const auto b = leu::random_matrix(kField, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(leu::kernels::gemm(a, b, exec));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const leu::MulPolicy policy{state.range(1) ? leu::MulMode::Strassen : leu::MulMode::Classical,
                              static_cast<std::size_t>(state.range(2)), Execution::Serial};
  leu::SplitMix64 rng(2);
  const auto a = leu::random_matrix(kField, n, n, rng);
  const auto b = leu::random_matrix(kField, n, n, rng);
  leu::MulCounter counter;
  for (auto _ : state) {
    counter = {};
    benchmark::DoNotOptimize(leu::multiply(a, b, counter, policy));
  }
  state.counters["mults"] = static_cast<double>(counter.scalar_mults);
}

template <class F>
void leu_bench(benchmark::State& state, const F& field) {
  const auto n = static_cast<std::size_t>(state.range(0));
  leu::LeuOptions opt;
  opt.mul.exec = state.range(1) ? Execution::Parallel : Execution::Serial;
  leu::SplitMix64 rng(3);
  const auto a = leu::random_matrix(field, n, n, rng);
  leu::MulCounter counter;
  for (auto _ : state) {
    counter = {};
    benchmark::DoNotOptimize(leu::leu_decompose(a, counter, opt));
  }
  state.counters["mults"] = static_cast<double>(counter.scalar_mults);
}

void BM_LeuPrime(benchmark::State& state) { leu_bench(state, kField); }
void BM_LeuRational(benchmark::State& state) { leu_bench(state, RationalField{}); }

}  // namespace

BENCHMARK(BM_GemmReference)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_Gemm)->ArgsProduct({{64, 128, 256}, {0, 1}});
BENCHMARK(BM_Multiply)->Args({256, 0, 256})->Args({256, 1, 32})->Args({256, 1, 64});
BENCHMARK(BM_LeuPrime)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeuRational)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
