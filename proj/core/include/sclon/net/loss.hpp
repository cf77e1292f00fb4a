#pragma once

#include <span>
#include <vector>

#include "sclon/net/network.hpp"
#include "sclon/residuals/residuals.hpp"

namespace sclon::net {

/// Inputs of one training segment: the sampled parameter functions and the
/// frozen anchor state of each sample at the segment start.
struct SegmentBatch {
  std::span<const sampling::InputSample> inputs;
  std::span<const std::vector<double>> anchors;
};

struct LossOptions {
  /// Worker threads; samples are split into contiguous chunks whose
  /// gradients are summed in chunk order.
  int threads = 1;
  /// Multiplies the loss (and therefore the gradient).
  double scale = 1.0;
};

/// Sum over samples of the segment residual of the network's prediction.
/// `grad` (same length as params) receives the gradient, overwriting it; pass
/// an empty span to skip the backward pass. Throws ErrorCode::NonFinite naming
/// the first offending sample.
double loss_and_grad(const Network& net, std::span<const double> params, std::span<double> grad,
                     const SegmentBatch& batch, const residuals::SchemeResidual& residual,
                     const LossOptions& options = {});

/// Per-sample segment losses without gradients.
std::vector<double> sample_losses(const Network& net, std::span<const double> params, const SegmentBatch& batch,
                                  const residuals::SchemeResidual& residual);

}  // namespace sclon::net
