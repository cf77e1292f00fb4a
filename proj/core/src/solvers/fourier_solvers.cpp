#include <cmath>
#include <numbers>

#include "sclon/error.hpp"
#include "sclon/solvers/solvers.hpp"

namespace sclon::solvers {

namespace {

using C = std::complex<double>;
using Spectrum = std::vector<C>;
constexpr C kI{0.0, 1.0};

Spectrum times_ik(const std::vector<double>& k, const Spectrum& y) {
  Spectrum out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = kI * k[i] * y[i];
  return out;
}

Spectrum hat(const spectral::FourierGrid& grid, const std::vector<double>& u) {
  Spectrum out(grid.size());
  spectral::dft_into(grid, u, out);
  return out;
}

// y + h k
Spectrum axpy(const Spectrum& y, double h, const Spectrum& k) {
  Spectrum out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

void check_finite(const Spectrum& y, int step) {
  for (const auto& c : y)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorCode::NonFinite, "non-finite coefficients at step " + std::to_string(step));
}

template <class Rhs>
Spectrum rk4_step(const Spectrum& y, double dt, const Rhs& f) {
  const Spectrum k1 = f(y);
  const Spectrum k2 = f(axpy(y, 0.5 * dt, k1));
  const Spectrum k3 = f(axpy(y, 0.5 * dt, k2));
  const Spectrum k4 = f(axpy(y, dt, k3));
  Spectrum out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

Trajectory start(Representation rep, int n, const Spectrum& alpha0) {
  Trajectory traj;
  traj.rep = rep;
  traj.n = n;
  traj.snapshots.push_back(to_interleaved(alpha0));
  return traj;
}

template <class Step>
Trajectory march(Representation rep, int n, Spectrum y, int steps, const Step& step) {
  auto traj = start(rep, n, y);
  traj.snapshots.reserve(steps + 1);
  for (int r = 0; r < steps; ++r) {
    y = step(y);
    check_finite(y, r + 1);
    traj.snapshots.push_back(to_interleaved(y));
  }
  return traj;
}

Spectrum spectrum_of(const spectral::FourierGrid& grid, const sampling::InputSample& input) {
  require(input.values.size() == grid.size(), "input does not match the Fourier grid");
  return spectral::dft(grid, input.values).values;
}

std::vector<double> advection_u0(const spectral::FourierGrid& grid) {
  std::vector<double> u(grid.size());
  for (int i = 0; i < grid.n(); ++i) u[i] = 0.5 * (1.0 - std::cos(grid.node(i)));
  return u;
}

}  // namespace

Trajectory solve_burgers_from(const PdeProblem& problem, Spectrum alpha0, int steps) {
  require(problem.family == Family::Burgers, "solve_burgers: wrong family");
  const auto s = make_fourier_scheme(problem);
  require(alpha0.size() == s.grid.size(), "solve_burgers: alpha0 size mismatch");
  const auto rhs = [&](const Spectrum& y) {
    const auto u = spectral::idft_real(s.grid, y);
    const auto ux = spectral::idft_real(s.grid, times_ik(s.kx, y));
    std::vector<double> prod(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) prod[i] = u[i] * ux[i];
    const auto g = hat(s.grid, prod);
    Spectrum out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = -problem.nu * s.k2[i] * y[i] - problem.mu * g[i];
    return out;
  };
  return march(Representation::Fourier1D, problem.n, std::move(alpha0), steps,
               [&](const Spectrum& y) { return rk4_step(y, problem.dt, rhs); });
}

Trajectory solve_burgers(const PdeProblem& problem, const sampling::InputSample& u0) {
  problem.validate();
  const spectral::FourierGrid grid(problem.n, 1);
  return solve_burgers_from(problem, spectrum_of(grid, u0), problem.total_steps());
}

Trajectory solve_advection_from(const PdeProblem& problem, const sampling::InputSample& coefficient,
                                Spectrum alpha0, int steps) {
  require(problem.family == Family::Advection, "solve_advection: wrong family");
  const auto s = make_fourier_scheme(problem);
  require(coefficient.values.size() == s.grid.size(), "coefficient does not match the Fourier grid");
  require(alpha0.size() == s.grid.size(), "solve_advection: alpha0 size mismatch");
  const auto& a = coefficient.values;
  const auto rhs = [&](const Spectrum& y) {
    auto ux = spectral::idft_real(s.grid, times_ik(s.kx, y));
    for (std::size_t i = 0; i < ux.size(); ++i) ux[i] *= a[i];
    auto g = hat(s.grid, ux);
    for (auto& c : g) c = -c;
    return g;
  };
  return march(Representation::Fourier1D, problem.n, std::move(alpha0), steps,
               [&](const Spectrum& y) { return rk4_step(y, problem.dt, rhs); });
}

Trajectory solve_advection(const PdeProblem& problem, const sampling::InputSample& coefficient) {
  problem.validate();
  const spectral::FourierGrid grid(problem.n, 1);
  return solve_advection_from(problem, coefficient, spectral::dft(grid, advection_u0(grid)).values,
                              problem.total_steps());
}

Trajectory solve_kse_2d_from(const PdeProblem& problem, Spectrum alpha0, int steps) {
  require(problem.family == Family::KSE2D, "solve_kse_2d: wrong family");
  const auto s = make_fourier_scheme(problem);
  require(alpha0.size() == s.grid.size(), "solve_kse_2d: alpha0 size mismatch");
  const auto& e = s.etd;
  // N(y) = -F((d_x u)^2 + (d_y u)^2)
  const auto nonlinear = [&](const Spectrum& y) {
    const auto ux = spectral::idft_real(s.grid, times_ik(s.kx, y));
    const auto uy = spectral::idft_real(s.grid, times_ik(s.ky, y));
    std::vector<double> g(ux.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = ux[i] * ux[i] + uy[i] * uy[i];
    auto out = hat(s.grid, g);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= -s.mask[i];
    return out;
  };
  const auto step = [&](const Spectrum& y) {
    const std::size_t m = y.size();
    const Spectrum nu = nonlinear(y);
    Spectrum a(m), b(m), c(m), out(m);
    for (std::size_t k = 0; k < m; ++k) a[k] = e.e2[k] * y[k] + e.q[k] * nu[k];
    const Spectrum na = nonlinear(a);
    for (std::size_t k = 0; k < m; ++k) b[k] = e.e2[k] * y[k] + e.q[k] * na[k];
    const Spectrum nb = nonlinear(b);
    for (std::size_t k = 0; k < m; ++k) c[k] = e.e2[k] * a[k] + e.q[k] * (2.0 * nb[k] - nu[k]);
    const Spectrum nc = nonlinear(c);
    for (std::size_t k = 0; k < m; ++k)
      out[k] = e.e[k] * y[k] + e.f1[k] * nu[k] + 2.0 * e.f2[k] * (na[k] + nb[k]) + e.f3[k] * nc[k];
    return out;
  };
  return march(Representation::Fourier2D, problem.n, std::move(alpha0), steps, step);
}

Trajectory solve_kse_2d(const PdeProblem& problem, const sampling::InputSample& u0) {
  problem.validate();
  const spectral::FourierGrid grid(problem.n, 2);
  return solve_kse_2d_from(problem, spectrum_of(grid, u0), problem.total_steps());
}

Velocity poisson_curl(const spectral::FourierGrid& grid, std::span<const C> w_hat) {
  require(grid.dims() == 2 && w_hat.size() == grid.size(), "poisson_curl: expects a 2D spectrum");
  const auto kx = grid.xi_x();
  const auto ky = grid.xi_y();
  const auto k2 = grid.k_squared();
  Spectrum u_hat(w_hat.size()), v_hat(w_hat.size());
  for (std::size_t i = 0; i < w_hat.size(); ++i) {
    const C psi = k2[i] > 0.0 ? -w_hat[i] / k2[i] : C{};
    u_hat[i] = kI * ky[i] * psi;
    v_hat[i] = -kI * kx[i] * psi;
  }
  return {spectral::idft_real(grid, u_hat), spectral::idft_real(grid, v_hat)};
}

Trajectory solve_nse_2d_from(const PdeProblem& problem, Spectrum alpha0, int steps) {
  require(problem.family == Family::NSE2D, "solve_nse_2d: wrong family");
  const auto s = make_fourier_scheme(problem);
  require(alpha0.size() == s.grid.size(), "solve_nse_2d: alpha0 size mismatch");
  const double dt = problem.dt;
  // Advective flux in conservative form: i kx F(u w) + i ky F(v w).
  const auto flux = [&](const Spectrum& w_hat) {
    const auto vel = poisson_curl(s.grid, w_hat);
    const auto w = spectral::idft_real(s.grid, w_hat);
    std::vector<double> uw(w.size()), vw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      uw[i] = vel.u[i] * w[i];
      vw[i] = vel.v[i] * w[i];
    }
    const auto a = hat(s.grid, uw);
    const auto b = hat(s.grid, vw);
    Spectrum out(w.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.mask[i] * kI * (s.kx[i] * a[i] + s.ky[i] * b[i]);
    return out;
  };
  const auto step = [&](const Spectrum& w) {
    const std::size_t m = w.size();
    const Spectrum n0 = flux(w);
    Spectrum pred(m), next(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double a = s.cn_half[k];
      pred[k] = ((1.0 - a) * w[k] - dt * n0[k] + dt * s.forcing_hat[k]) / (1.0 + a);
    }
    const Spectrum n1 = flux(pred);
    for (std::size_t k = 0; k < m; ++k) {
      const double a = s.cn_half[k];
      next[k] = ((1.0 - a) * w[k] - 0.5 * dt * (n0[k] + n1[k]) + dt * s.forcing_hat[k]) / (1.0 + a);
    }
    return next;
  };
  return march(Representation::Fourier2D, problem.n, std::move(alpha0), steps, step);
}

Trajectory solve_nse_2d(const PdeProblem& problem, const sampling::InputSample& w0) {
  problem.validate();
  const spectral::FourierGrid grid(problem.n, 2);
  return solve_nse_2d_from(problem, spectrum_of(grid, w0), problem.total_steps());
}

std::vector<double> initial_state(const PdeProblem& problem, const sampling::InputSample& input) {
  switch (problem.family) {
    case Family::DiffusionReaction:
      return std::vector<double>(problem.n, 0.0);
    case Family::ConvectionDiffusionBL: {
      spectral::BasisOptions opts;
      opts.node_count = problem.node_count;
      if (problem.corrector) opts.corrector_nu = problem.nu;
      const auto basis = spectral::dirichlet_basis(problem.n, opts);
      const Eigen::VectorXd a = basis.project_nodal(input.values);
      return {a.data(), a.data() + a.size()};
    }
    case Family::Advection: {
      const spectral::FourierGrid grid(problem.n, 1);
      return to_interleaved(spectral::dft(grid, advection_u0(grid)).values);
    }
    case Family::Burgers:
    case Family::KSE2D:
    case Family::NSE2D: {
      const spectral::FourierGrid grid(problem.n, is_2d(problem.family) ? 2 : 1);
      return to_interleaved(spectrum_of(grid, input));
    }
  }
  return {};
}

Trajectory solve_reference(const PdeProblem& problem, const sampling::InputSample& input) {
  switch (problem.family) {
    case Family::DiffusionReaction:
      return solve_diffusion_reaction(problem, input);
    case Family::Burgers:
      return solve_burgers(problem, input);
    case Family::Advection:
      return solve_advection(problem, input);
    case Family::ConvectionDiffusionBL:
      return solve_cde_boundary_layer(problem, input);
    case Family::KSE2D:
      return solve_kse_2d(problem, input);
    case Family::NSE2D:
      return solve_nse_2d(problem, input);
  }
  fail(ErrorCode::ContractViolation, "unknown family");
}

}  // namespace sclon::solvers
