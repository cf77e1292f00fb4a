#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sclon/net/loss.hpp"
#include "sclon/net/network.hpp"
#include "sclon/residuals/residuals.hpp"
#include "sclon/train/adam.hpp"
#include "sclon/train/lbfgs.hpp"

namespace sclon::train {

enum class OptimizerKind { Lbfgs, Adam };

struct TrainerOptions {
  OptimizerKind optimizer = OptimizerKind::Lbfgs;
  LbfgsOptions lbfgs;
  AdamOptions adam;
  int threads = 1;
  /// Multiplies the summed loss; 1/P turns it into a per-sample mean.
  double loss_scale = 1.0;
  /// Called after every accepted iteration with (segment, iteration, loss).
  std::function<void(int, int, double)> progress;
};

/// Algorithm state between segments.
struct TrainState {
  /// Index of the next segment to train, 0-based.
  int segment = 0;
  /// Current parameters; after segment q they warm-start segment q + 1.
  std::vector<double> params;
  /// Frozen state of every sample at the start of `segment`.
  std::vector<std::vector<double>> anchors;
  /// Trained parameters of each finished segment.
  std::vector<std::vector<double>> segment_params;
  /// Loss history of each finished segment.
  std::vector<std::vector<double>> loss_history;
  std::vector<StopReason> stop_reasons;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// Segment 0 state: fresh parameters and anchors from the initial data.
TrainState initial_train_state(const solvers::PdeProblem& problem, const net::Network& network,
                               const std::vector<sampling::InputSample>& inputs, std::uint64_t seed);

/// Trains G_q for q = state.segment, then freezes its final-step outputs as
/// the next anchors. Throws ErrorCode::Divergence when the optimizer reports
/// divergence.
TrainState train_segment(TrainState state, const net::Network& network, const std::vector<sampling::InputSample>& inputs,
                         const residuals::SchemeResidual& residual, const TrainerOptions& options);

/// Runs segments until `segments` have been trained.
TrainState train_all(TrainState state, int segments, const net::Network& network,
                     const std::vector<sampling::InputSample>& inputs, const residuals::SchemeResidual& residual,
                     const TrainerOptions& options);

/// Concatenated predictions for steps 1..Q R of one sample, preceded by the
/// initial state: a trajectory in the solver's representation.
solvers::Trajectory predict_trajectory(const solvers::PdeProblem& problem, const net::Network& network,
                                       const std::vector<std::vector<double>>& segment_params,
                                       const sampling::InputSample& input);

}  // namespace sclon::train
