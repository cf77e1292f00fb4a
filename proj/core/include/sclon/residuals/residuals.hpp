#pragma once

#include <memory>
#include <vector>

#include "sclon/net/tape.hpp"
#include "sclon/sampling/inputs.hpp"
#include "sclon/solvers/problem.hpp"
#include "sclon/solvers/trajectory.hpp"

namespace sclon::residuals {

/// One step of a family's time scheme written as a defect on the tape: the
/// defect vanishes exactly when `next` is what the reference solver would
/// produce from `prev`. The loss is the sum of squared defect entries.
///
/// Objects own the multiplier tables that the recorded ops reference, so a
/// residual must outlive every tape it records on.
class SchemeResidual {
 public:
  virtual ~SchemeResidual() = default;

  virtual Family family() const = 0;
  virtual solvers::Representation representation() const = 0;
  /// Doubles per state snapshot.
  virtual std::size_t state_width() const = 0;

  /// `input` is the sample's parameter function; it must outlive the tape.
  virtual net::Var defect(net::Var prev, net::Var next, const sampling::InputSample& input) const = 0;
};

std::unique_ptr<SchemeResidual> make_residual(const solvers::PdeProblem& problem);

struct ResidualReport {
  double total = 0.0;
  std::vector<double> per_step;
  /// per_term[r] holds the defect entries of step r -> r + 1.
  std::vector<std::vector<double>> per_term;
};

/// Evaluates the loss on a trajectory, with snapshot 0 as the anchor.
ResidualReport evaluate_residual(const SchemeResidual& residual, const solvers::Trajectory& traj,
                                 const sampling::InputSample& input);

ResidualReport residual_dre(const solvers::PdeProblem& problem, const solvers::Trajectory& traj,
                            const sampling::InputSample& forcing);
ResidualReport residual_burgers(const solvers::PdeProblem& problem, const solvers::Trajectory& traj);
ResidualReport residual_advection(const solvers::PdeProblem& problem, const solvers::Trajectory& traj,
                                  const sampling::InputSample& coefficient);
ResidualReport residual_cde(const solvers::PdeProblem& problem, const solvers::Trajectory& traj);
ResidualReport residual_kse(const solvers::PdeProblem& problem, const solvers::Trajectory& traj);
ResidualReport residual_nse(const solvers::PdeProblem& problem, const solvers::Trajectory& traj);

/// 1 + sum_r ||alpha^r||^2, the scale of the oracle-zero bound.
double trajectory_scale(const solvers::Trajectory& traj);

}  // namespace sclon::residuals
