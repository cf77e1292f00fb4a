#pragma once

// Numerical studies shared by the unit suites and the acceptance binary. Each
// returns raw numbers; callers apply the tolerances.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "sclon/net/loss.hpp"
#include "sclon/net/network.hpp"
#include "sclon/residuals/residuals.hpp"
#include "sclon/sampling/dataset.hpp"
#include "sclon/solvers/solvers.hpp"
#include "sclon/spectral/basis.hpp"
#include "sclon/train/trainer.hpp"

namespace study {

using namespace sclon;
using Complex = std::complex<double>;

inline solvers::PdeProblem with_horizon(solvers::PdeProblem p, double dt, int steps) {
  p.dt = dt;
  p.segments = 1;
  p.steps_per_segment = steps;
  p.t_final = dt * steps;
  return p;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct Order {
  double coarse = 0;
  double fine = 0;
  double ratio() const { return coarse / fine; }
};

/// Implicit Euler on u* = sin(pi t)(1 - x^2): error at T = 1 for dt and dt/2.
inline Order dre_manufactured(double dt = 0.02) {
  const double pi = std::numbers::pi;
  auto base = solvers::PdeProblem::defaults(Family::DiffusionReaction);
  base.n = 12;
  const auto run = [&](double h) {
    const int steps = static_cast<int>(std::lround(1.0 / h));
    const auto p = with_horizon(base, h, steps);
    const auto basis = spectral::dirichlet_basis(p.n);
    const auto& x = basis.nodes();
    const auto forcing = [&](double t) {
      std::vector<double> f(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double b = 1 - x[j] * x[j];
        const double s = std::sin(pi * t);
        f[j] = pi * std::cos(pi * t) * b + 2 * p.nu * s + p.mu * s * s * b * b;
      }
      return f;
    };
    const auto traj = solvers::solve_diffusion_reaction(p, forcing, std::vector<double>(p.n, 0.0), steps);
    const Eigen::VectorXd u = basis.reconstruct(traj.snapshots.back());
    double err = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      err = std::max(err, std::abs(u[j] - std::sin(pi * steps * h) * (1 - x[j] * x[j])));
    return err;
  };
  return {run(dt), run(dt / 2)};
}

/// err(dt) / err(dt/2) at a fixed horizon against a dt/16 run of the same
/// scheme. `solve(p)` returns the final snapshot.
template <class Solve>
Order self_reference(const solvers::PdeProblem& base, double dt, int steps, const Solve& solve) {
  const auto last = [&](double h, int k) { return solve(with_horizon(base, h, k)); };
  const auto ref = last(dt / 16, steps * 16);
  return {max_abs_diff(last(dt, steps), ref), max_abs_diff(last(dt / 2, steps * 2), ref)};
}

inline Order burgers_order() {
  const auto base = solvers::PdeProblem::defaults(Family::Burgers);
  const auto input = sampling::generate_input(base, sampling::default_sampling(base, 3), 0);
  return self_reference(base, 0.0025, 80, [&](const solvers::PdeProblem& p) {
    return solvers::solve_burgers(p, input).snapshots.back();
  });
}

inline Order advection_order() {
  const auto base = solvers::PdeProblem::defaults(Family::Advection);
  const auto input = sampling::generate_input(base, sampling::default_sampling(base, 3), 0);
  double amax = 0;
  for (double v : input.values) amax = std::max(amax, v);
  // Keep a_max * N/2 * dt inside the RK4 stability interval.
  const double dt = std::min(0.01, 1.0 / (amax * base.n / 2));
  return self_reference(base, dt, 20, [&](const solvers::PdeProblem& p) {
    return solvers::solve_advection(p, input).snapshots.back();
  });
}

inline Order cde_order() {
  auto base = solvers::PdeProblem::defaults(Family::ConvectionDiffusionBL);
  const auto input = sampling::generate_input(base, sampling::default_sampling(base, 3), 0);
  return self_reference(base, 0.02, 10, [&](const solvers::PdeProblem& p) {
    return solvers::solve_cde_boundary_layer(p, input).snapshots.back();
  });
}

/// Smooth trigonometric data. GRF draws carry high modes whose decay is far
/// faster than any practical step, and that transient masks the order.
inline Order kse_order() {
  const auto base = solvers::PdeProblem::defaults(Family::KSE2D);
  const spectral::FourierGrid grid(base.n, 2);
  std::vector<double> u(grid.size());
  for (int i = 0; i < base.n; ++i)
    for (int j = 0; j < base.n; ++j) {
      const double x = grid.node(i), y = grid.node(j);
      u[i * base.n + j] = 0.3 * std::cos(x) + 0.2 * std::sin(x + 2 * y) + 0.2 * std::cos(2 * x - y);
    }
  const auto alpha0 = spectral::dft(grid, u).values;
  return self_reference(base, 0.05, 8, [&](const solvers::PdeProblem& p) {
    return solvers::solve_kse_2d_from(p, alpha0, p.total_steps()).snapshots.back();
  });
}

/// Crank-Nicolson/Heun at a Reynolds number low enough that the diffusive
/// error is visible above round-off.
inline Order nse_order() {
  auto base = solvers::PdeProblem::defaults(Family::NSE2D);
  base.n = 16;
  base.re = 1.0;
  const auto input = sampling::generate_input(base, sampling::default_sampling(base, 3), 0);
  return self_reference(base, 0.02, 10, [&](const solvers::PdeProblem& p) {
    return solvers::solve_nse_2d(p, input).snapshots.back();
  });
}

inline Order order_of(Family f) {
  switch (f) {
    case Family::DiffusionReaction: return dre_manufactured();
    case Family::Burgers: return burgers_order();
    case Family::Advection: return advection_order();
    case Family::ConvectionDiffusionBL: return cde_order();
    case Family::KSE2D: return kse_order();
    case Family::NSE2D: return nse_order();
  }
  return {};
}

/// Accepted ratio window under dt halving.
inline std::pair<double, double> order_window(Family f) {
  if (is_legendre(f)) return {1.7, 2.3};
  if (f == Family::NSE2D) return {3.4, 4.6};
  return {12.0, 20.0};
}

/// Largest total / (1 + sum ||alpha^r||^2) over `samples` reference runs.
inline double oracle_zero_worst(Family f, int samples, std::uint64_t seed) {
  const auto p = solvers::PdeProblem::defaults(f);
  const auto spec = sampling::default_sampling(p, seed);
  const auto res = residuals::make_residual(p);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const auto in = sampling::generate_input(p, spec, i);
    const auto traj = solvers::solve_reference(p, in);
    const auto rep = residuals::evaluate_residual(*res, traj, in);
    worst = std::max(worst, rep.total / residuals::trajectory_scale(traj));
  }
  return worst;
}

inline solvers::PdeProblem tiny_problem(Family f) {
  auto p = solvers::PdeProblem::defaults(f);
  p.n = 8;
  p.steps_per_segment = 2;
  p.segments = 1;
  p.t_final = 2 * p.dt;
  return p;
}

struct GradientCheck {
  double worst_rel = 0;
  int directions = 0;
};

/// Directional derivatives of the segment loss against a fourth-order central
/// difference along random unit directions. `spec` defaults to the family's
/// default architecture.
inline GradientCheck gradient_check(const solvers::PdeProblem& p, const net::NetworkSpec& spec, int directions,
                                    std::uint64_t seed) {
  const net::Network net(spec, p);
  const auto res = residuals::make_residual(p);
  const auto inputs = sampling::generate_inputs(p, sampling::default_sampling(p, seed), 0, 2);
  std::vector<std::vector<double>> anchors;
  for (const auto& in : inputs) anchors.push_back(solvers::initial_state(p, in));
  const net::SegmentBatch batch{inputs, anchors};

  const auto theta = net.init(seed);
  std::vector<double> grad(theta.size());
  net::loss_and_grad(net, theta, grad, batch, *res);
  const auto loss_at = [&](const std::vector<double>& d, double h) {
    std::vector<double> x = theta;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += h * d[i];
    return net::loss_and_grad(net, x, {}, batch, *res);
  };

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  GradientCheck out;
  out.directions = directions;
  for (int k = 0; k < directions; ++k) {
    std::vector<double> d(theta.size());
    double norm = 0;
    for (auto& v : d) {
      v = normal(gen);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    double ad = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] /= norm;
      ad += grad[i] * d[i];
    }
    const double h = 1e-3;
    const double fd = (8 * (loss_at(d, h) - loss_at(d, -h)) - (loss_at(d, 2 * h) - loss_at(d, -2 * h))) / (12 * h);
    out.worst_rel = std::max(out.worst_rel, std::abs(fd - ad) / std::max(std::abs(ad), 1e-12));
  }
  return out;
}

inline GradientCheck gradient_check(Family f, int directions, std::uint64_t seed) {
  const auto p = tiny_problem(f);
  return gradient_check(p, net::default_network(p), directions, seed);
}

}  // namespace study
