#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sclon/error.hpp"
#include "sclon/sampling/dataset.hpp"
#include "sclon/solvers/schemes.hpp"
#include "sclon/solvers/solvers.hpp"
#include "studies.hpp"

using namespace sclon;
using namespace sclon::solvers;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

sampling::InputSample periodic_input(Family f, int n, int dims, const std::vector<double>& values) {
  sampling::InputSample s;
  s.family = f;
  s.n = n;
  s.dims = dims;
  s.values = values;
  return s;
}

// Implicit Euler for u_t = nu u_xx + mu u_x with homogeneous Dirichlet data on
// a uniform grid, second-order central differences, Thomas algorithm.
std::vector<double> fd_convection_diffusion(double nu, double mu, double dt, int steps, int cells,
                                            const std::function<double(double)>& u0) {
  const double h = 2.0 / cells;
  const int m = cells - 1;
  std::vector<double> u(m);
  for (int i = 0; i < m; ++i) u[i] = u0(-1 + (i + 1) * h);
  const double lo = -dt * (nu / (h * h) - mu / (2 * h));
  const double di = 1 + 2 * dt * nu / (h * h);
  const double up = -dt * (nu / (h * h) + mu / (2 * h));
  std::vector<double> c(m), d(m);
  for (int s = 0; s < steps; ++s) {
    c[0] = up / di;
    d[0] = u[0] / di;
    for (int i = 1; i < m; ++i) {
      const double den = di - lo * c[i - 1];
      c[i] = up / den;
      d[i] = (u[i] - lo * d[i - 1]) / den;
    }
    u[m - 1] = d[m - 1];
    for (int i = m - 2; i >= 0; --i) u[i] = d[i] - c[i] * u[i + 1];
  }
  return u;
}

}  // namespace

TEST_CASE("zero data is a fixed point") {
  for (Family f : {Family::Burgers, Family::KSE2D}) {
    auto p = study::tiny_problem(f);
    const int dims = is_2d(f) ? 2 : 1;
    const auto in = periodic_input(f, p.n, dims, std::vector<double>(dims == 2 ? 64 : 8, 0.0));
    const auto traj = solve_reference(p, in);
    for (const auto& s : traj.snapshots)
      for (double v : s) CHECK(v == 0.0);
  }
  auto p = study::tiny_problem(Family::DiffusionReaction);
  const auto basis = spectral::dirichlet_basis(p.n);
  sampling::InputSample f;
  f.values.assign(basis.node_count(), 0.0);
  const auto traj = solve_diffusion_reaction(p, f);
  for (const auto& s : traj.snapshots)
    for (double v : s) CHECK(v == 0.0);
}

TEST_CASE("trajectory shapes") {
  for (Family f : {Family::DiffusionReaction, Family::Burgers, Family::Advection, Family::ConvectionDiffusionBL,
                   Family::KSE2D, Family::NSE2D}) {
    const auto p = study::tiny_problem(f);
    const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
    const auto traj = solve_reference(p, in);
    CHECK(traj.snapshots.size() == 3);
    CHECK_NOTHROW(traj.check_shape());
    CHECK(traj.snapshots[0] == initial_state(p, in));
  }
}

TEST_CASE("temporal orders under dt halving") {
  for (Family f : {Family::DiffusionReaction, Family::Burgers, Family::Advection, Family::ConvectionDiffusionBL,
                   Family::KSE2D, Family::NSE2D}) {
    CAPTURE(family_name(f));
    const auto o = study::order_of(f);
    const auto [lo, hi] = study::order_window(f);
    CHECK(o.ratio() >= lo);
    CHECK(o.ratio() <= hi);
  }
}

TEST_CASE("manufactured diffusion-reaction converges") {
  const auto o = study::dre_manufactured(0.01);
  CHECK(o.fine < 2e-2);
}

TEST_CASE("unit-speed advection translates the initial profile") {
  auto p = PdeProblem::defaults(Family::Advection);
  p.dt = 0.005;
  p.segments = 1;
  p.steps_per_segment = 200;
  p.t_final = 1.0;
  const spectral::FourierGrid grid(p.n, 1);
  const auto a = periodic_input(Family::Advection, p.n, 1, std::vector<double>(p.n, 1.0));
  const auto traj = solve_advection(p, a);

  // u0 = (1 - cos x)/2 has alpha_0 = pi and alpha_{+-1} = -pi/2.
  const auto alpha0 = to_complex(traj.snapshots.front());
  CHECK(std::abs(alpha0[0] - Complex(kPi, 0)) < 1e-12);
  CHECK(std::abs(alpha0[1] - Complex(-kPi / 2, 0)) < 1e-12);
  CHECK(std::abs(alpha0[p.n - 1] - Complex(-kPi / 2, 0)) < 1e-12);

  const auto u = spectral::idft_real(grid, to_complex(traj.snapshots.back()));
  double err = 0;
  for (int i = 0; i < p.n; ++i) err = std::max(err, std::abs(u[i] - 0.5 * (1 - std::cos(grid.node(i) - 1.0))));
  CHECK(err <= 1e-6);
}

TEST_CASE("convection-diffusion without corrector matches a fine finite-difference solve") {
  auto p = PdeProblem::defaults(Family::ConvectionDiffusionBL);
  p.nu = 0.1;
  p.corrector = false;
  p.dt = 0.01;
  p.segments = 1;
  p.steps_per_segment = 20;
  p.t_final = 0.2;
  const auto basis = spectral::dirichlet_basis(p.n);
  const std::vector<double> weights{0.3, 0.9, 0.1, 0.5};
  const auto in = sampling::cde_initial_from_weights(basis, weights);
  const auto traj = solve_cde_boundary_layer(p, in);
  CHECK(traj.rep == Representation::Legendre);

  const auto u0 = [&](double x) {
    double s = 0;
    for (int j = 0; j < 4; ++j) s += weights[j] * basis.eval(j, x);
    return std::pow(1 - x, 4) * (1 + x) * s;
  };
  const int cells = 4000;
  const auto fd = fd_convection_diffusion(p.nu, p.mu, p.dt, p.total_steps(), cells, u0);
  double err = 0;
  for (int i = 0; i < cells - 1; i += 40) {
    const double x = -1 + (i + 1) * 2.0 / cells;
    double u = 0;
    for (int n = 0; n < p.n; ++n) u += traj.snapshots.back()[n] * basis.eval(n, x);
    err = std::max(err, std::abs(u - fd[i]));
  }
  CHECK(err <= 1e-3);
}

TEST_CASE("enriched convection-diffusion stays finite and warns only when ill-conditioned") {
  const auto p = PdeProblem::defaults(Family::ConvectionDiffusionBL);
  const auto in = sampling::generate_input(p, sampling::default_sampling(p, 2), 0);
  const auto traj = solve_cde_boundary_layer(p, in);
  CHECK(traj.rep == Representation::LegendreEnriched);
  CHECK(traj.snapshots.back().size() == static_cast<std::size_t>(p.n + 1));
  for (double v : traj.snapshots.back()) CHECK(std::isfinite(v));
}

TEST_CASE("kse linear mode decays at its symbol") {
  auto p = PdeProblem::defaults(Family::KSE2D);
  p.n = 16;
  const spectral::FourierGrid grid(p.n, 2);
  const double eps = 1e-6;
  std::vector<double> u(grid.size());
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) u[i * p.n + j] = eps * std::cos(grid.node(i) + grid.node(j));
  const auto traj = solve_kse_2d(p, periodic_input(Family::KSE2D, p.n, 2, u));
  const std::size_t mode = static_cast<std::size_t>(grid.index_of(1)) * p.n + grid.index_of(1);
  const double a0 = std::abs(to_complex(traj.snapshots.front())[mode]);
  const double a1 = std::abs(to_complex(traj.snapshots.back())[mode]);
  // |k|^2 = 2 gives the symbol 2 - 4 = -2.
  CHECK(a1 / a0 == doctest::Approx(std::exp(-2 * p.t_final)).epsilon(1e-2));
}

TEST_CASE("etd coefficients reduce to rk4 weights at zero symbol") {
  const auto e = etd_coefficients({0.0, -3.0}, 0.1);
  CHECK(e.e[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.q[0] == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(e.f1[0] == doctest::Approx(0.1 / 6).epsilon(1e-13));
  CHECK(e.f2[0] == doctest::Approx(0.1 / 6).epsilon(1e-13));
  CHECK(e.f3[0] == doctest::Approx(0.1 / 6).epsilon(1e-13));
  // Closed forms at c dt = -0.3.
  const double z = -0.3;
  CHECK(e.q[1] == doctest::Approx(0.1 * (std::exp(z / 2) - 1) / z).epsilon(1e-12));
  CHECK(e.f1[1] == doctest::Approx(0.1 * (-4 - z + std::exp(z) * (4 - 3 * z + z * z)) / (z * z * z)).epsilon(1e-10));
  CHECK(e.f3[1] == doctest::Approx(0.1 * (-4 - 3 * z - z * z + std::exp(z) * (4 - z)) / (z * z * z)).epsilon(1e-10));
}

TEST_CASE("poisson curl of sin x") {
  const spectral::FourierGrid grid(16, 2);
  std::vector<double> w(grid.size());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) w[i * 16 + j] = std::sin(grid.node(i));
  const auto vel = poisson_curl(grid, spectral::dft(grid, w).values);
  double eu = 0, ev = 0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      eu = std::max(eu, std::abs(vel.u[i * 16 + j]));
      ev = std::max(ev, std::abs(vel.v[i * 16 + j] - std::cos(grid.node(i))));
    }
  CHECK(eu <= 1e-13);
  CHECK(ev <= 1e-13);

  // Divergence of the velocity of an arbitrary field vanishes spectrally.
  const auto p = PdeProblem::defaults(Family::NSE2D);
  auto q = p;
  q.n = 16;
  const auto in = sampling::generate_input(q, sampling::default_sampling(q, 4), 0);
  const auto v2 = poisson_curl(grid, spectral::dft(grid, in.values).values);
  const auto uh = spectral::dft(grid, v2.u).values;
  const auto vh = spectral::dft(grid, v2.v).values;
  const auto kx = grid.xi_x(), ky = grid.xi_y();
  double div = 0, scale = 0;
  for (std::size_t k = 0; k < uh.size(); ++k) {
    if (std::abs(kx[k]) == 8 || std::abs(ky[k]) == 8) continue;
    div = std::max(div, std::abs(kx[k] * uh[k] + ky[k] * vh[k]));
    scale = std::max(scale, std::abs(uh[k]));
  }
  CHECK(div <= 1e-12 * scale);
}

TEST_CASE("unforced vorticity sin x decays viscously") {
  auto p = PdeProblem::defaults(Family::NSE2D);
  p.n = 16;
  p.re = 2.0;
  p.kolmogorov_mode = 0;
  p.dt = 0.01;
  p.segments = 1;
  p.steps_per_segment = 50;
  p.t_final = 0.5;
  const spectral::FourierGrid grid(p.n, 2);
  std::vector<double> w(grid.size());
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) w[i * p.n + j] = std::sin(grid.node(i));
  const auto traj = solve_nse_2d(p, periodic_input(Family::NSE2D, p.n, 2, w));
  const auto wt = spectral::idft_real(grid, to_complex(traj.snapshots.back()));
  double err = 0;
  for (std::size_t k = 0; k < w.size(); ++k) err = std::max(err, std::abs(wt[k] - std::exp(-p.t_final / p.re) * w[k]));
  CHECK(err <= 1e-4);
}

TEST_CASE("kolmogorov steady state is preserved") {
  auto p = PdeProblem::defaults(Family::NSE2D);
  p.n = 16;
  const spectral::FourierGrid grid(p.n, 2);
  std::vector<double> w(grid.size());
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) w[i * p.n + j] = -p.re * std::cos(grid.node(j));
  const auto traj = solve_nse_2d(p, periodic_input(Family::NSE2D, p.n, 2, w));
  CHECK(study::max_abs_diff(traj.snapshots.back(), traj.snapshots.front()) <= 1e-9 * p.re * 4 * kPi * kPi);

  const auto f = kolmogorov_forcing(grid, 1);
  CHECK(f[3] == doctest::Approx(-std::cos(grid.node(3))).epsilon(1e-15));
}

TEST_CASE("invalid problems are rejected") {
  auto p = PdeProblem::defaults(Family::Burgers);
  p.t_final = 0.7;
  CHECK_THROWS_AS(p.validate(), Error);
  p = PdeProblem::defaults(Family::Burgers);
  p.n = 31;
  CHECK_THROWS_AS(p.validate(), Error);
  p = PdeProblem::defaults(Family::NSE2D);
  p.re = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = PdeProblem::defaults(Family::Burgers);
  p.re = 3;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("a blow-up is reported as non-finite") {
  auto p = PdeProblem::defaults(Family::Burgers);
  p.dt = 0.5;
  p.t_final = 50;
  const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
  try {
    solve_burgers(p, in);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}
