#pragma once

#include <span>

namespace sclon::train {

struct PlateauOptions {
  int window = 50;
  double eps = 1e-8;
  int max_iters = 2000;
};

/// True when history (one loss per accepted iteration, index 0 = start) has
/// reached max_iters entries past the start, or when
/// (L[k-W] - L[k]) / |L[k-W]| < eps for the last index k >= W.
bool plateau_check(std::span<const double> history, const PlateauOptions& options);

}  // namespace sclon::train
