#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>
#include <vector>

#include "blip/kernels.hpp"
#include "blip/lattice.hpp"
#include "blip/scattering.hpp"

using namespace blip;

namespace {

std::vector<Complex> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

template <auto Kernel>
void BM_ExponentialSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 1);
  std::vector<Complex> out(n);
  const double dx = 400.0 / static_cast<double>(n);
  const kernels::Progression v{-200.0, dx};
  const kernels::Progression u{-3.1, 2.0 * 3.14159 / (static_cast<double>(n) * dx) / 1.5};
  for (auto _ : state) {
    Kernel(a, v, u, 1.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["threads"] = omp_get_max_threads();
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_ToeplitzConvolution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 2);
  std::vector<double> kernel(2 * n - 1);
  for (std::size_t i = 0; i < kernel.size(); ++i) kernel[i] = 1.0 / (1.0 + static_cast<double>(i));
  std::vector<Complex> out(n);
  for (auto _ : state) {
    Kernel(a, kernel, 0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["threads"] = omp_get_max_threads();
}

void BM_InterfaceScatter(benchmark::State& state) {
  const Grid g = make_grid(-200.0, 200.0, 16384);
  const auto p = gaussian_packet(g, {Direction::plus, Polarization::H}, -50.0, 30.0, 2.0);
  for (auto _ : state) {
    const ScatterOutcome out = interface_scatter(p, 1.5, 100.0);
    benchmark::DoNotOptimize(out.prob_t);
  }
}

}  // namespace

BENCHMARK(BM_ExponentialSum<kernels::exponential_sum>)->Name("exponential_sum/parallel")->Arg(1024)->Arg(4096);
BENCHMARK(BM_ExponentialSum<kernels::reference::exponential_sum>)
    ->Name("exponential_sum/serial")
    ->Arg(1024)
    ->Arg(4096);
BENCHMARK(BM_ToeplitzConvolution<kernels::toeplitz_convolution>)
    ->Name("toeplitz_convolution/parallel")
    ->Arg(1024)
    ->Arg(4096);
BENCHMARK(BM_ToeplitzConvolution<kernels::reference::toeplitz_convolution>)
    ->Name("toeplitz_convolution/serial")
    ->Arg(1024)
    ->Arg(4096);
BENCHMARK(BM_InterfaceScatter)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
