// Serial reference vs OpenMP kernels on random scaled feature data.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "itocsvm/kernels.hpp"
#include "itocsvm/ocsvm.hpp"

using namespace itocsvm;

static std::vector<FeatureValues> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<FeatureValues> out(n);
  for (auto& p : out) {
    for (auto& x : p) x = u(rng);
  }
  return out;
}

static OcsvmModel random_model(std::size_t n_sv) {
  OcsvmModel m;
  m.support_vectors = random_points(n_sv, 7);
  m.alphas.assign(n_sv, 1.0 / static_cast<double>(n_sv));
  m.rho = 0.5;
  m.kernel = RbfKernel{KernelMode::Gamma, 0.5};
  return m;
}

static void BM_KernelColumnSerial(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
  std::vector<double> out(pts.size());
  const RbfKernel k{KernelMode::Gamma, 0.5};
  std::size_t col = 0;
  for (auto _ : state) {
    kernels::kernel_column_serial(k, pts, col, out);
    col = (col + 1) % pts.size();
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_KernelColumnOmp(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
  std::vector<double> out(pts.size());
  const RbfKernel k{KernelMode::Gamma, 0.5};
  std::size_t col = 0;
  for (auto _ : state) {
    kernels::kernel_column_omp(k, pts, col, out);
    col = (col + 1) % pts.size();
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_DecisionSerial(benchmark::State& state) {
  const auto model = random_model(64);
  const auto inputs = random_points(static_cast<std::size_t>(state.range(0)), 2);
  std::vector<double> out(inputs.size());
  for (auto _ : state) {
    kernels::decision_values_serial(model, inputs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_DecisionOmp(benchmark::State& state) {
  const auto model = random_model(64);
  const auto inputs = random_points(static_cast<std::size_t>(state.range(0)), 2);
  std::vector<double> out(inputs.size());
  for (auto _ : state) {
    kernels::decision_values_omp(model, inputs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_Train(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 3);
  TrainOptions opt;
  opt.nu = 0.1;
  opt.kernel = RbfKernel{KernelMode::Gamma, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(train(pts, opt));
}

BENCHMARK(BM_KernelColumnSerial)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_KernelColumnOmp)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_DecisionSerial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_DecisionOmp)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_Train)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
