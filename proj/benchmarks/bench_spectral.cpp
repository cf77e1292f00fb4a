#include <benchmark/benchmark.h>

#include <random>

#include "sclon/spectral/basis.hpp"
#include "sclon/spectral/fourier.hpp"
#include "sclon/spectral/legendre.hpp"

using namespace sclon::spectral;

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

void BM_Dft1d(benchmark::State& state) {
  const FourierGrid g(static_cast<int>(state.range(0)), 1);
  const auto u = noise(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(dft(g, u));
}
BENCHMARK(BM_Dft1d)->RangeMultiplier(4)->Range(32, 2048);

void BM_Dft2d(benchmark::State& state) {
  const FourierGrid g(static_cast<int>(state.range(0)), 2);
  const auto u = noise(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(dft(g, u));
}
BENCHMARK(BM_Dft2d)->RangeMultiplier(2)->Range(16, 128);

void BM_Roundtrip2d(benchmark::State& state) {
  const FourierGrid g(static_cast<int>(state.range(0)), 2);
  const auto a = dft(g, noise(g.size())).values;
  for (auto _ : state) benchmark::DoNotOptimize(idft_real(g, a));
}
BENCHMARK(BM_Roundtrip2d)->RangeMultiplier(2)->Range(16, 128);

void BM_GaussLobatto(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_lobatto(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussLobatto)->Arg(12)->Arg(52)->Arg(202);

void BM_DirichletBasis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_basis(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DirichletBasis)->Arg(10)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
