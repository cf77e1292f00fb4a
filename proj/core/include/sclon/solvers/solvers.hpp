#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sclon/sampling/inputs.hpp"
#include "sclon/solvers/problem.hpp"
#include "sclon/solvers/schemes.hpp"
#include "sclon/solvers/trajectory.hpp"

namespace sclon::solvers {

/// Implicit Euler for u_t - nu u_xx + mu u^2 = f with mu u^2 lagged, starting
/// from u0 = 0. `forcing` holds f on the Gauss-Lobatto nodes.
Trajectory solve_diffusion_reaction(const PdeProblem& problem, const sampling::InputSample& forcing);

/// Same scheme with a time-dependent forcing: forcing_at(t) returns nodal
/// values of f(t, x); step r -> r+1 uses t = (r+1) dt. The initial
/// coefficients are given explicitly.
Trajectory solve_diffusion_reaction(const PdeProblem& problem,
                                    const std::function<std::vector<double>(double)>& forcing_at,
                                    std::vector<double> alpha0, int steps);

/// Classical RK4 for u_t + mu u u_x = nu u_xx in Fourier coefficients.
Trajectory solve_burgers(const PdeProblem& problem, const sampling::InputSample& u0);
Trajectory solve_burgers_from(const PdeProblem& problem, std::vector<std::complex<double>> alpha0, int steps);

/// Classical RK4 for u_t + a(x) u_x = 0 with u0 = (1 - cos x)/2.
Trajectory solve_advection(const PdeProblem& problem, const sampling::InputSample& coefficient);
Trajectory solve_advection_from(const PdeProblem& problem, const sampling::InputSample& coefficient,
                                std::vector<std::complex<double>> alpha0, int steps);

/// Fully implicit Euler for u_t - nu u_xx - mu u_x = 0 on the enriched space
/// (or the plain polynomial space when the corrector is disabled).
Trajectory solve_cde_boundary_layer(const PdeProblem& problem, const sampling::InputSample& u0);

/// ETDRK4 for u_t + Lap u + Lap^2 u + |grad u|^2 = 0 on the 2D torus.
Trajectory solve_kse_2d(const PdeProblem& problem, const sampling::InputSample& u0);
Trajectory solve_kse_2d_from(const PdeProblem& problem, std::vector<std::complex<double>> alpha0, int steps);

struct Velocity {
  std::vector<double> u;
  std::vector<double> v;
};

/// Stream function psi with Lap psi = w, then (u, v) = (psi_y, -psi_x) on the
/// grid.
Velocity poisson_curl(const spectral::FourierGrid& grid, std::span<const std::complex<double>> w_hat);

/// Crank-Nicolson diffusion with a Heun predictor-corrector for advection of
/// vorticity, Kolmogorov forcing per problem.kolmogorov_mode.
Trajectory solve_nse_2d(const PdeProblem& problem, const sampling::InputSample& w0);
Trajectory solve_nse_2d_from(const PdeProblem& problem, std::vector<std::complex<double>> alpha0, int steps);

/// Initial coefficient snapshot for a family: the projected/transformed
/// initial data or zero (DRE).
std::vector<double> initial_state(const PdeProblem& problem, const sampling::InputSample& input);

/// Dispatch on problem.family over the full horizon.
Trajectory solve_reference(const PdeProblem& problem, const sampling::InputSample& input);

}  // namespace sclon::solvers
