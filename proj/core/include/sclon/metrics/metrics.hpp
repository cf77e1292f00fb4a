#pragma once

#include <string>
#include <vector>

#include "sclon/solvers/problem.hpp"
#include "sclon/solvers/trajectory.hpp"

namespace sclon::metrics {

/// Grid values indexed [sample][step][point].
struct NodalSeries {
  int samples = 0;
  int steps = 0;
  int points = 0;
  std::vector<double> values;

  NodalSeries() = default;
  NodalSeries(int p, int r, int g) : samples(p), steps(r), points(g), values(static_cast<std::size_t>(p) * r * g) {}

  double& at(int p, int r, int g) { return values[(static_cast<std::size_t>(p) * steps + r) * points + g]; }
  double at(int p, int r, int g) const { return values[(static_cast<std::size_t>(p) * steps + r) * points + g]; }
};

struct ErrorTriple {
  double mae = 0.0;
  double rel_l2 = 0.0;
  double l_inf = 0.0;
  /// Samples left out of rel_l2 because their reference is identically zero.
  int excluded = 0;
  std::vector<std::string> warnings;
};

/// MAE: mean of |u - u^| over samples, steps and points. Rel.L2: mean over
/// samples of sqrt(sum |u - u^|^2 / sum |u|^2) with sums over steps and
/// points. L-inf: mean over (sample, step) of the pointwise maximum.
ErrorTriple error_triple(const NodalSeries& pred, const NodalSeries& ref);

/// Grid values of snapshots first_step..end: Gauss-Lobatto nodes for Legendre
/// representations, the periodic grid otherwise. `problem` supplies N, nu and
/// the node count.
std::vector<std::vector<double>> reconstruct(const solvers::PdeProblem& problem, const solvers::Trajectory& traj,
                                             int first_step = 1);

/// Stacks reconstructed trajectories into a NodalSeries.
NodalSeries stack(const std::vector<std::vector<std::vector<double>>>& per_sample);

}  // namespace sclon::metrics
