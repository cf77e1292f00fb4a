#include "sclon/train/adam.hpp"

#include <algorithm>
#include <cmath>

#include "sclon/error.hpp"

namespace sclon::train {

MinimizeResult minimize_adam(const Objective& objective, std::vector<double> x0, const AdamOptions& options,
                             const IterationCallback& callback) {
  MinimizeResult res;
  res.x = std::move(x0);
  const std::size_t n = res.x.size();
  std::vector<double> g(n), m(n, 0.0), v(n, 0.0);
  res.f = objective(res.x, g);
  res.evaluations = 1;
  if (!std::isfinite(res.f)) fail(ErrorCode::NonFinite, "Adam: non-finite objective at the start");
  res.history.push_back(res.f);
  double running_min = res.f;
  while (true) {
    if (res.f == 0.0) {
      res.reason = StopReason::ZeroLoss;
      break;
    }
    if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; })) {
      res.reason = StopReason::ZeroGradient;
      break;
    }
    if (res.iterations >= options.plateau.max_iters) {
      res.reason = StopReason::MaxIterations;
      break;
    }
    if (plateau_check(res.history, options.plateau)) {
      res.reason = StopReason::Plateau;
      break;
    }
    ++res.iterations;
    const double c1 = 1.0 - std::pow(options.beta1, res.iterations);
    const double c2 = 1.0 - std::pow(options.beta2, res.iterations);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = options.beta1 * m[i] + (1.0 - options.beta1) * g[i];
      v[i] = options.beta2 * v[i] + (1.0 - options.beta2) * g[i] * g[i];
      res.x[i] -= options.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + options.epsilon);
    }
    res.f = objective(res.x, g);
    ++res.evaluations;
    if (!std::isfinite(res.f)) fail(ErrorCode::NonFinite, "Adam: non-finite objective");
    res.history.push_back(res.f);
    if (callback) callback(res.iterations, res.f);
    running_min = std::min(running_min, res.f);
    if (res.f > options.divergence_factor * running_min) {
      res.reason = StopReason::Diverged;
      break;
    }
  }
  return res;
}

}  // namespace sclon::train
