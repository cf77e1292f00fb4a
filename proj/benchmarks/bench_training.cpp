#include <benchmark/benchmark.h>

#include "sclon/net/loss.hpp"
#include "sclon/net/network.hpp"
#include "sclon/residuals/residuals.hpp"
#include "sclon/sampling/dataset.hpp"
#include "sclon/solvers/solvers.hpp"
#include "sclon/train/lbfgs.hpp"

using namespace sclon;

namespace {

struct Setup {
  solvers::PdeProblem problem;
  net::Network network;
  std::unique_ptr<residuals::SchemeResidual> residual;
  std::vector<sampling::InputSample> inputs;
  std::vector<std::vector<double>> anchors;
  std::vector<double> params;

  Setup(Family family, int samples)
      : problem(solvers::PdeProblem::defaults(family)),
        network(net::default_network(problem), problem),
        residual(residuals::make_residual(problem)),
        inputs(sampling::training_inputs(problem, sampling::default_sampling(problem, 1), samples)),
        params(network.init(1)) {
    for (const auto& in : inputs) anchors.push_back(solvers::initial_state(problem, in));
  }

  net::SegmentBatch batch() const { return {inputs, anchors}; }
};

// One loss and gradient evaluation of the default network over a segment.
void BM_LossAndGrad(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  const Setup s(family, static_cast<int>(state.range(1)));
  std::vector<double> grad(s.params.size());
  for (auto _ : state) benchmark::DoNotOptimize(net::loss_and_grad(s.network, s.params, grad, s.batch(), *s.residual));
  state.SetLabel(std::string(family_name(family)) + " params=" + std::to_string(s.params.size()));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_LossAndGrad)
    ->ArgsProduct({{0, 1, 2, 3, 4, 5}, {4}})
    ->Unit(benchmark::kMillisecond);

void BM_LossOnly(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  const Setup s(family, 4);
  for (auto _ : state) benchmark::DoNotOptimize(net::loss_and_grad(s.network, s.params, {}, s.batch(), *s.residual));
  state.SetLabel(std::string(family_name(family)));
}
BENCHMARK(BM_LossOnly)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

// Ten L-BFGS iterations on a Burgers segment.
void BM_LbfgsIterations(benchmark::State& state) {
  const Setup s(Family::Burgers, 4);
  const train::Objective f = [&](std::span<const double> x, std::span<double> g) {
    return net::loss_and_grad(s.network, x, g, s.batch(), *s.residual);
  };
  train::LbfgsOptions o;
  o.plateau.max_iters = 10;
  for (auto _ : state) benchmark::DoNotOptimize(train::minimize_lbfgs(f, s.params, o));
}
BENCHMARK(BM_LbfgsIterations)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
