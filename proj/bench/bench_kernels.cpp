// Serial vs OpenMP kernels. Run with e.g. OMP_NUM_THREADS=8 ./bench_kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "convpow/attractor.hpp"
#include "convpow/catalog.hpp"
#include "convpow/expansion.hpp"
#include "convpow/kernels.hpp"

namespace {

using convpow::cplx;
using convpow::kernels::Exec;

std::vector<cplx> random_coeffs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

template <Exec E>
void direct_convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_coeffs(n, 1);
  const auto b = random_coeffs(n / 4 + 1, 2);
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (auto _ : state) {
    convpow::kernels::direct_convolve(E, a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size() * b.size()));
}

template <Exec E>
void attractor_bank(benchmark::State& state) {
  const auto plan = convpow::make_plan(convpow::catalog::o3(0.5), 3);
  const convpow::AttractorBank bank({2, 3.0 / 128.0}, plan.polynomials.at(0));
  const auto count = static_cast<std::size_t>(state.range(0));
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = -20.0 + 40.0 * static_cast<double>(i) / static_cast<double>(count);
  }
  std::vector<cplx> out(count * bank.banks());
  for (auto _ : state) {
    bank.evaluate(xs, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

template <Exec E>
void approximate_row(benchmark::State& state) {
  const convpow::Approximator approx(convpow::make_plan(convpow::catalog::o3(0.5), 3));
  const std::int64_t n = state.range(0);
  const auto [lo, hi] = approx.window(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx.approximate(n, lo, hi, E));
  }
}

}  // namespace

BENCHMARK(direct_convolve<Exec::serial>)->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(direct_convolve<Exec::parallel>)->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(attractor_bank<Exec::serial>)->Arg(256)->Arg(4096);
BENCHMARK(attractor_bank<Exec::parallel>)->Arg(256)->Arg(4096);
BENCHMARK(approximate_row<Exec::serial>)->Arg(1000)->Arg(100000);
BENCHMARK(approximate_row<Exec::parallel>)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
