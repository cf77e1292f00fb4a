#include "sclon/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sclon/error.hpp"
#include "sclon/spectral/basis.hpp"
#include "sclon/spectral/fourier.hpp"

namespace sclon::metrics {

ErrorTriple error_triple(const NodalSeries& pred, const NodalSeries& ref) {
  require(pred.samples == ref.samples && pred.steps == ref.steps && pred.points == ref.points,
          "error_triple: shape mismatch");
  require(pred.values.size() == ref.values.size(), "error_triple: storage mismatch");
  require(ref.samples > 0 && ref.steps > 0 && ref.points > 0, "error_triple: empty series");
  ErrorTriple out;
  double abs_sum = 0.0;
  double max_sum = 0.0;
  double rel_sum = 0.0;
  int rel_count = 0;
  for (int p = 0; p < ref.samples; ++p) {
    double err2 = 0.0, ref2 = 0.0;
    for (int r = 0; r < ref.steps; ++r) {
      double peak = 0.0;
      for (int g = 0; g < ref.points; ++g) {
        const double e = std::abs(ref.at(p, r, g) - pred.at(p, r, g));
        abs_sum += e;
        err2 += e * e;
        ref2 += ref.at(p, r, g) * ref.at(p, r, g);
        peak = std::max(peak, e);
      }
      max_sum += peak;
    }
    if (ref2 > 0.0) {
      rel_sum += std::sqrt(err2 / ref2);
      ++rel_count;
    } else {
      ++out.excluded;
      out.warnings.push_back("sample " + std::to_string(p) + ": zero reference, excluded from rel_l2");
    }
  }
  const double cells = static_cast<double>(ref.samples) * ref.steps * ref.points;
  out.mae = abs_sum / cells;
  out.l_inf = max_sum / (static_cast<double>(ref.samples) * ref.steps);
  out.rel_l2 = rel_count > 0 ? rel_sum / rel_count : std::nan("");
  return out;
}

std::vector<std::vector<double>> reconstruct(const solvers::PdeProblem& problem, const solvers::Trajectory& traj,
                                             int first_step) {
  traj.check_shape();
  require(first_step >= 0 && first_step <= static_cast<int>(traj.snapshots.size()), "reconstruct: bad first step");
  std::vector<std::vector<double>> out;
  using R = solvers::Representation;
  if (traj.rep == R::Legendre || traj.rep == R::LegendreEnriched) {
    spectral::BasisOptions opts;
    opts.node_count = problem.node_count;
    if (traj.rep == R::LegendreEnriched) opts.corrector_nu = problem.nu;
    const auto basis = spectral::dirichlet_basis(traj.n, opts);
    for (std::size_t r = first_step; r < traj.snapshots.size(); ++r) {
      const Eigen::VectorXd u = basis.reconstruct(traj.snapshots[r]);
      out.emplace_back(u.data(), u.data() + u.size());
    }
  } else {
    const spectral::FourierGrid grid(traj.n, traj.rep == R::Fourier2D ? 2 : 1);
    for (std::size_t r = first_step; r < traj.snapshots.size(); ++r) {
      const auto& s = traj.snapshots[r];
      out.push_back(spectral::idft_real(grid, {reinterpret_cast<const spectral::Complex*>(s.data()), grid.size()}));
    }
  }
  return out;
}

NodalSeries stack(const std::vector<std::vector<std::vector<double>>>& per_sample) {
  require(!per_sample.empty() && !per_sample[0].empty(), "stack: empty input");
  const int p = static_cast<int>(per_sample.size());
  const int r = static_cast<int>(per_sample[0].size());
  const int g = static_cast<int>(per_sample[0][0].size());
  NodalSeries out(p, r, g);
  for (int i = 0; i < p; ++i) {
    require(static_cast<int>(per_sample[i].size()) == r, "stack: ragged step count");
    for (int j = 0; j < r; ++j) {
      require(static_cast<int>(per_sample[i][j].size()) == g, "stack: ragged point count");
      std::copy(per_sample[i][j].begin(), per_sample[i][j].end(), &out.at(i, j, 0));
    }
  }
  return out;
}

}  // namespace sclon::metrics
