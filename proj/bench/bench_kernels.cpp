// Serial reference vs OpenMP kernels on solver-shaped workloads.
// Run with --benchmark_filter=... to pick a subset.

#include <benchmark/benchmark.h>

#include <random>

#include "bo/kernels.hpp"
#include "bo/profiles.hpp"
#include "bo/solver.hpp"

namespace {

using namespace bo;
using kernels::Backend;

fft::RealVec random_real(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  fft::RealVec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

fft::ComplexVec random_cplx(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  fft::ComplexVec v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

void set_backend_from_range(const benchmark::State& state) {
  kernels::set_backend(state.range(1) ? Backend::OpenMP : Backend::Serial);
}

void bm_square(benchmark::State& state) {
  set_backend_from_range(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto x = random_real(n, 1);
  fft::RealVec y(n);
  for (auto _ : state) {
    kernels::square(x.data(), y.data(), n);
    benchmark::DoNotOptimize(y.data());
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * n * 16);
}

void bm_rk4_combine(benchmark::State& state) {
  set_backend_from_range(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_cplx(n, 2);
  const auto k1 = random_cplx(n, 3), k2 = random_cplx(n, 4),
             k3 = random_cplx(n, 5), k4 = random_cplx(n, 6);
  const auto e = random_cplx(n, 7), e2 = random_cplx(n, 8);
  for (auto _ : state) {
    kernels::rk4_combine(a.data(), 1e-3, k1.data(), k2.data(), k3.data(),
                         k4.data(), e.data(), e2.data(), n);
    benchmark::DoNotOptimize(a.data());
  }
}

void bm_sum_sq(benchmark::State& state) {
  set_backend_from_range(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto x = random_real(n, 9);
  for (auto _ : state) {
    double s = kernels::sum_sq(x.data(), n);
    benchmark::DoNotOptimize(s);
  }
}

void bm_sobolev_weights(benchmark::State& state) {
  set_backend_from_range(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto c = random_cplx(n, 10);
  std::vector<double> w(n, 1.7);
  for (auto _ : state) {
    double s = kernels::weighted_mod2(c.data(), w.data(), n);
    benchmark::DoNotOptimize(s);
  }
}

// one full IFRK4 solver step at production sizes (FFT + kernels)
void bm_solver_step(benchmark::State& state) {
  set_backend_from_range(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = make_grid(100.0, n);
  RealVec v(n);
  for (std::size_t j = 0; j < n; ++j)
    v[j] = 0.5 * std::cos(SpectralGrid::kPi / 100.0 * 8.0 * g->node(j));
  Field u(g, std::move(v));
  for (auto _ : state) {
    Field next = step(u, 1e-3);
    benchmark::DoNotOptimize(next.values().data());
  }
}

void args(benchmark::internal::Benchmark* b) {
  for (int64_t n : {1 << 14, 1 << 18, 1 << 20})
    for (int64_t omp : {0, 1}) b->Args({n, omp});
}

BENCHMARK(bm_square)->Apply(args)->ArgNames({"n", "omp"});
BENCHMARK(bm_rk4_combine)->Apply(args)->ArgNames({"n", "omp"});
BENCHMARK(bm_sum_sq)->Apply(args)->ArgNames({"n", "omp"});
BENCHMARK(bm_sobolev_weights)->Apply(args)->ArgNames({"n", "omp"});
BENCHMARK(bm_solver_step)
    ->Args({1 << 14, 0})
    ->Args({1 << 14, 1})
    ->Args({1 << 18, 0})
    ->Args({1 << 18, 1})
    ->ArgNames({"n", "omp"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
