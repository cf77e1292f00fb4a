#include "sclon/train/trainer.hpp"

#include <chrono>

#include "sclon/error.hpp"
#include "sclon/solvers/solvers.hpp"

namespace sclon::train {

TrainState initial_train_state(const solvers::PdeProblem& problem, const net::Network& network,
                               const std::vector<sampling::InputSample>& inputs, std::uint64_t seed) {
  TrainState state;
  state.seed = seed;
  state.params = network.init(seed);
  for (const auto& input : inputs) {
    state.anchors.push_back(solvers::initial_state(problem, input));
    require(state.anchors.back().size() == network.state_width(), "trainer: initial state width mismatch");
  }
  return state;
}

TrainState train_segment(TrainState state, const net::Network& network, const std::vector<sampling::InputSample>& inputs,
                         const residuals::SchemeResidual& residual, const TrainerOptions& options) {
  require(state.anchors.size() == inputs.size(), "trainer: one anchor per input is required");
  const auto start = std::chrono::steady_clock::now();
  const net::SegmentBatch batch{inputs, state.anchors};
  const net::LossOptions loss_opts{options.threads, options.loss_scale};
  const Objective objective = [&](std::span<const double> x, std::span<double> g) {
    return net::loss_and_grad(network, x, g, batch, residual, loss_opts);
  };
  const int q = state.segment;
  const IterationCallback cb = [&](int it, double f) {
    if (options.progress) options.progress(q, it, f);
  };

  const MinimizeResult res = options.optimizer == OptimizerKind::Lbfgs
                                 ? minimize_lbfgs(objective, state.params, options.lbfgs, cb)
                                 : minimize_adam(objective, state.params, options.adam, cb);
  if (res.reason == StopReason::Diverged)
    fail(ErrorCode::Divergence, "segment " + std::to_string(q) + " diverged: loss " + std::to_string(res.f) +
                                    " after " + std::to_string(res.iterations) + " iterations");

  state.params = res.x;
  state.segment_params.push_back(res.x);
  state.loss_history.push_back(res.history);
  state.stop_reasons.push_back(res.reason);
  for (std::size_t p = 0; p < inputs.size(); ++p) state.anchors[p] = network.predict(res.x, inputs[p], state.anchors[p]).back();
  ++state.segment;
  state.wall_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return state;
}

TrainState train_all(TrainState state, int segments, const net::Network& network,
                     const std::vector<sampling::InputSample>& inputs, const residuals::SchemeResidual& residual,
                     const TrainerOptions& options) {
  while (state.segment < segments) state = train_segment(std::move(state), network, inputs, residual, options);
  return state;
}

solvers::Trajectory predict_trajectory(const solvers::PdeProblem& problem, const net::Network& network,
                                       const std::vector<std::vector<double>>& segment_params,
                                       const sampling::InputSample& input) {
  solvers::Trajectory traj;
  traj.rep = network.representation();
  traj.n = problem.n;
  traj.snapshots.push_back(solvers::initial_state(problem, input));
  for (const auto& params : segment_params) {
    const std::vector<double> anchor = traj.snapshots.back();
    for (auto& s : network.predict(params, input, anchor)) traj.snapshots.push_back(std::move(s));
  }
  return traj;
}

}  // namespace sclon::train
