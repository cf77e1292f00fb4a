#include <benchmark/benchmark.h>

#include "sclon/residuals/residuals.hpp"
#include "sclon/sampling/dataset.hpp"
#include "sclon/solvers/solvers.hpp"

using namespace sclon;

namespace {

// Reference solve over the default horizon of each family.
void BM_Reference(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  const auto p = solvers::PdeProblem::defaults(family);
  const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(solvers::solve_reference(p, in));
  state.SetLabel(std::string(family_name(family)));
}

// Residual of a stored reference trajectory (forward only).
void BM_Residual(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  const auto p = solvers::PdeProblem::defaults(family);
  const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
  const auto traj = solvers::solve_reference(p, in);
  const auto res = residuals::make_residual(p);
  for (auto _ : state) benchmark::DoNotOptimize(residuals::evaluate_residual(*res, traj, in));
  state.SetLabel(std::string(family_name(family)));
}

void families(benchmark::internal::Benchmark* b) {
  for (int f = 0; f < 6; ++f) b->Arg(f);
  b->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_Reference)->Apply(families);
BENCHMARK(BM_Residual)->Apply(families);

}  // namespace

BENCHMARK_MAIN();
