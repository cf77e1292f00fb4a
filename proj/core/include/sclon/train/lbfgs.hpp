#pragma once

#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "sclon/train/plateau.hpp"

namespace sclon::train {

/// Writes the gradient into `grad` and returns the objective value.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
  int memory = 10;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 25;
  PlateauOptions plateau;
  /// Abort when the loss exceeds this factor times its running minimum.
  double divergence_factor = 10.0;
};

enum class StopReason { Plateau, MaxIterations, ZeroLoss, ZeroGradient, LineSearchStalled, Diverged };

/// Two-loop L-BFGS with a strong Wolfe line search.
class Lbfgs {
 public:
  Lbfgs(std::size_t dimension, LbfgsOptions options);

  struct Step {
    double f = 0.0;
    /// False when both the quasi-Newton and the steepest-descent retries
    /// failed to find an acceptable point; x is then unchanged.
    bool accepted = false;
    bool restarted = false;
    int evaluations = 0;
  };

  /// One iteration from (x, f, g), updating all three in place.
  Step step(const Objective& objective, std::vector<double>& x, double& f, std::vector<double>& g);

  /// Search direction -H g from the stored curvature pairs; the first
  /// direction is -g/||g||.
  std::vector<double> direction(std::span<const double> g) const;

  std::size_t pairs() const { return s_.size(); }
  void reset();

 private:
  std::size_t n_;
  LbfgsOptions opt_;
  std::deque<std::vector<double>> s_;
  std::deque<std::vector<double>> y_;
  std::deque<double> rho_;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  /// Loss at the start followed by one entry per accepted iteration.
  std::vector<double> history;
  int iterations = 0;
  int evaluations = 0;
  StopReason reason = StopReason::MaxIterations;
};

using IterationCallback = std::function<void(int iteration, double f)>;

MinimizeResult minimize_lbfgs(const Objective& objective, std::vector<double> x0, const LbfgsOptions& options,
                              const IterationCallback& callback = {});

const char* stop_reason_name(StopReason reason);

}  // namespace sclon::train
