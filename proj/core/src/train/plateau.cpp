#include "sclon/train/plateau.hpp"

#include <cmath>

namespace sclon::train {

bool plateau_check(std::span<const double> history, const PlateauOptions& options) {
  if (history.empty()) return false;
  const auto k = history.size() - 1;
  if (static_cast<long>(k) >= options.max_iters) return true;
  if (options.window <= 0 || k < static_cast<std::size_t>(options.window)) return false;
  const double before = history[k - options.window];
  const double now = history[k];
  if (before == 0.0) return true;
  return (before - now) / std::abs(before) < options.eps;
}

}  // namespace sclon::train
