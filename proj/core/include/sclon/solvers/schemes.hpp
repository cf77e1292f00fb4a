#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sclon/solvers/problem.hpp"
#include "sclon/spectral/basis.hpp"
#include "sclon/spectral/fourier.hpp"

namespace sclon::solvers {

/// Matrices of the implicit Euler step on a Legendre space. The step reads
///   lhs * alpha^{r+1} = mass_dt * alpha^r + rhs(alpha^r)
/// where the explicit part is family specific. Solvers and residuals both
/// build from this struct so that the two stay the same discrete object.
struct LegendreScheme {
  spectral::LegendreBasis basis;
  Eigen::MatrixXd lhs;
  Eigen::MatrixXd mass_dt;
  /// Phi^T W: maps nodal values to load vectors by Gauss-Lobatto quadrature.
  Eigen::MatrixXd load;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  /// Reciprocal condition estimate of lhs (1-norm).
  double rcond = 0.0;
};

/// DRE: lhs = M/dt + nu S. CDE: lhs = M/dt + nu S - mu C on the (optionally
/// enriched) space. Throws ErrorCode::SingularSystem if lhs is singular.
LegendreScheme make_legendre_scheme(const PdeProblem& problem);

/// Per-mode ETDRK4 coefficients for dalpha/dt = c alpha + N(alpha).
struct EtdCoefficients {
  std::vector<double> e;
  std::vector<double> e2;
  std::vector<double> q;
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<double> f3;
};

/// Contour-averaged coefficients (radius 1 around c dt, `points` nodes on the
/// full circle, real part kept). Stable at c = 0.
EtdCoefficients etd_coefficients(const std::vector<double>& c, double dt, int points = 32);

/// Wavenumber tables and per-family multipliers for the Fourier schemes.
struct FourierScheme {
  spectral::FourierGrid grid;
  std::vector<double> kx;
  std::vector<double> ky;
  std::vector<double> k2;
  /// 1 on retained modes, 0 on modes removed by the 2/3 rule (all 1 when
  /// dealiasing is off).
  std::vector<double> mask;

  /// KSE linear symbol and ETD data.
  std::vector<double> kse_symbol;
  EtdCoefficients etd;

  /// NSE: psi = -w/|k|^2, zero at k = 0.
  std::vector<double> inv_k2;
  /// NSE: dt |k|^2 / (2 Re).
  std::vector<double> cn_half;
  /// NSE: F(f) as a full spectrum.
  std::vector<std::complex<double>> forcing_hat;
};

FourierScheme make_fourier_scheme(const PdeProblem& problem);

/// Nodal values of the NSE forcing -m cos(m y) on the 2D grid.
std::vector<double> kolmogorov_forcing(const spectral::FourierGrid& grid, int mode);

}  // namespace sclon::solvers
