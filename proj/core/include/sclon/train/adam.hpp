#pragma once

#include "sclon/train/lbfgs.hpp"

namespace sclon::train {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  PlateauOptions plateau;
  double divergence_factor = 10.0;
};

/// Plain Adam with bias correction; same stopping rules as minimize_lbfgs
/// except that history holds every iterate, not only decreasing ones.
MinimizeResult minimize_adam(const Objective& objective, std::vector<double> x0, const AdamOptions& options,
                             const IterationCallback& callback = {});

}  // namespace sclon::train
