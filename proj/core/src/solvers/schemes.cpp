#include "sclon/solvers/schemes.hpp"

#include <cmath>
#include <numbers>

#include "sclon/error.hpp"

namespace sclon::solvers {

LegendreScheme make_legendre_scheme(const PdeProblem& problem) {
  require(is_legendre(problem.family), "make_legendre_scheme: not a Legendre family");
  spectral::BasisOptions opts;
  opts.node_count = problem.node_count;
  if (problem.family == Family::ConvectionDiffusionBL && problem.corrector) opts.corrector_nu = problem.nu;

  LegendreScheme s{spectral::dirichlet_basis(problem.n, opts), {}, {}, {}, {}, 0.0};
  const auto& b = s.basis;
  s.mass_dt = b.mass() / problem.dt;
  s.lhs = s.mass_dt + problem.nu * b.stiffness();
  if (problem.family == Family::ConvectionDiffusionBL) s.lhs -= problem.mu * b.convection();

  const Eigen::Map<const Eigen::VectorXd> w(b.weights().data(), b.node_count());
  s.load = b.values().transpose() * w.asDiagonal();

  s.lu.compute(s.lhs);
  s.rcond = s.lu.rcond();
  if (!(s.rcond > 0.0) || !std::isfinite(s.rcond))
    fail(ErrorCode::SingularSystem, "implicit Euler system is singular");
  return s;
}

EtdCoefficients etd_coefficients(const std::vector<double>& c, double dt, int points) {
  require(points >= 4, "etd_coefficients: need at least 4 contour points");
  using C = std::complex<double>;
  EtdCoefficients out;
  const auto n = c.size();
  out.e.resize(n);
  out.e2.resize(n);
  out.q.resize(n);
  out.f1.resize(n);
  out.f2.resize(n);
  out.f3.resize(n);
  std::vector<C> roots(points);
  for (int j = 0; j < points; ++j)
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / points);

  for (std::size_t k = 0; k < n; ++k) {
    const double l = c[k] * dt;
    out.e[k] = std::exp(l);
    out.e2[k] = std::exp(0.5 * l);
    C q{}, f1{}, f2{}, f3{};
    for (const C& r : roots) {
      const C z = l + r;
      const C ez = std::exp(z);
      const C z3 = z * z * z;
      q += (std::exp(0.5 * z) - 1.0) / z;
      f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
      f2 += (2.0 + z + ez * (z - 2.0)) / z3;
      f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    out.q[k] = dt * q.real() / points;
    out.f1[k] = dt * f1.real() / points;
    out.f2[k] = dt * f2.real() / points;
    out.f3[k] = dt * f3.real() / points;
  }
  return out;
}

std::vector<double> kolmogorov_forcing(const spectral::FourierGrid& grid, int mode) {
  std::vector<double> f(grid.size(), 0.0);
  if (mode == 0) return f;
  const int n = grid.n();
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) f[ix * n + iy] = -mode * std::cos(mode * grid.node(iy));
  return f;
}

FourierScheme make_fourier_scheme(const PdeProblem& problem) {
  require(!is_legendre(problem.family), "make_fourier_scheme: not a Fourier family");
  const int dims = is_2d(problem.family) ? 2 : 1;
  FourierScheme s{spectral::FourierGrid(problem.n, dims), {}, {}, {}, {}, {}, {}, {}, {}, {}};
  s.kx = s.grid.xi_x();
  s.ky = s.grid.xi_y();
  s.k2 = s.grid.k_squared();
  const auto m = s.grid.size();

  s.mask.assign(m, 1.0);
  if (problem.dealias) {
    const double cut = problem.n / 3.0;
    for (std::size_t k = 0; k < m; ++k)
      if (std::abs(s.kx[k]) > cut || std::abs(s.ky[k]) > cut) s.mask[k] = 0.0;
  }

  if (problem.family == Family::KSE2D) {
    s.kse_symbol.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double k2 = s.k2[k];
      s.kse_symbol[k] = problem.kse_printed_symbol ? -k2 * k2 - k2 : k2 - k2 * k2;
    }
    s.etd = etd_coefficients(s.kse_symbol, problem.dt);
  }

  if (problem.family == Family::NSE2D) {
    s.inv_k2.resize(m);
    s.cn_half.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      s.inv_k2[k] = s.k2[k] > 0.0 ? 1.0 / s.k2[k] : 0.0;
      s.cn_half[k] = problem.dt * s.k2[k] / (2.0 * problem.re);
    }
    const auto f = kolmogorov_forcing(s.grid, problem.kolmogorov_mode);
    s.forcing_hat = spectral::dft(s.grid, f).values;
  }
  return s;
}

}  // namespace sclon::solvers
