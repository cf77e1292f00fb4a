#include <cmath>
#include <sstream>

#include "sclon/error.hpp"
#include "sclon/solvers/solvers.hpp"

namespace sclon::solvers {

namespace {

void check_finite(const Eigen::VectorXd& v, int step) {
  if (!v.allFinite()) fail(ErrorCode::NonFinite, "non-finite coefficients at step " + std::to_string(step));
}

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Trajectory solve_diffusion_reaction(const PdeProblem& problem,
                                    const std::function<std::vector<double>(double)>& forcing_at,
                                    std::vector<double> alpha0, int steps) {
  require(problem.family == Family::DiffusionReaction, "solve_diffusion_reaction: wrong family");
  problem.validate();
  const auto scheme = make_legendre_scheme(problem);
  const auto& basis = scheme.basis;
  require(static_cast<int>(alpha0.size()) == basis.size(), "solve_diffusion_reaction: alpha0 size mismatch");

  Trajectory traj;
  traj.rep = Representation::Legendre;
  traj.n = problem.n;
  traj.snapshots.reserve(steps + 1);
  traj.snapshots.push_back(std::move(alpha0));

  Eigen::VectorXd alpha = Eigen::Map<const Eigen::VectorXd>(traj.snapshots[0].data(), basis.size());
  for (int r = 0; r < steps; ++r) {
    const auto f = forcing_at((r + 1) * problem.dt);
    require(static_cast<int>(f.size()) == basis.node_count(), "forcing must be sampled on the basis nodes");
    const Eigen::VectorXd u = basis.values() * alpha;
    const Eigen::VectorXd nodal =
        Eigen::Map<const Eigen::VectorXd>(f.data(), basis.node_count()) - problem.mu * u.cwiseProduct(u);
    const Eigen::VectorXd rhs = scheme.mass_dt * alpha + scheme.load * nodal;
    alpha = scheme.lu.solve(rhs);
    check_finite(alpha, r + 1);
    traj.snapshots.push_back(as_vector(alpha));
  }
  return traj;
}

Trajectory solve_diffusion_reaction(const PdeProblem& problem, const sampling::InputSample& forcing) {
  const std::vector<double> f = forcing.values;
  return solve_diffusion_reaction(
      problem, [&f](double) { return f; }, std::vector<double>(problem.n, 0.0), problem.total_steps());
}

Trajectory solve_cde_boundary_layer(const PdeProblem& problem, const sampling::InputSample& u0) {
  require(problem.family == Family::ConvectionDiffusionBL, "solve_cde_boundary_layer: wrong family");
  problem.validate();
  const auto scheme = make_legendre_scheme(problem);
  const auto& basis = scheme.basis;
  require(static_cast<int>(u0.values.size()) == basis.node_count(), "u0 must be sampled on the basis nodes");

  Trajectory traj;
  traj.rep = basis.corrector_enabled() ? Representation::LegendreEnriched : Representation::Legendre;
  traj.n = problem.n;
  if (scheme.rcond < 1e-14) {
    std::ostringstream msg;
    msg << "ill-conditioned enriched system: condition estimate " << 1.0 / scheme.rcond;
    traj.warnings.push_back(msg.str());
  }

  Eigen::VectorXd alpha = basis.project_nodal(u0.values);
  traj.snapshots.push_back(as_vector(alpha));
  for (int r = 0; r < problem.total_steps(); ++r) {
    alpha = scheme.lu.solve(scheme.mass_dt * alpha);
    check_finite(alpha, r + 1);
    traj.snapshots.push_back(as_vector(alpha));
  }
  return traj;
}

}  // namespace sclon::solvers
