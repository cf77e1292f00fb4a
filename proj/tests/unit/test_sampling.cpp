#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sclon/error.hpp"
#include "sclon/sampling/dataset.hpp"
#include "sclon/sampling/grf.hpp"
#include "sclon/sampling/inputs.hpp"
#include "sclon/sampling/rng.hpp"
#include "sclon/spectral/basis.hpp"
#include "sclon/spectral/fourier.hpp"
#include "sclon/spectral/legendre.hpp"

using namespace sclon;
using namespace sclon::sampling;

TEST_CASE("keyed streams depend only on key and position") {
  KeyedStream a(7, {1, 2}), b(7, {1, 2}), c(7, {2, 1}), d(8, {1, 2});
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
  }
  KeyedStream u(1, {0});
  double lo = 1, hi = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = u.uniform();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("grf spec validation") {
  GrfSpec s;
  s.gamma = 0.4;
  CHECK_THROWS_AS(s.validate(), Error);
  s = GrfSpec{};
  s.sigma = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = GrfSpec{};
  s.dims = 2;
  s.gamma = 1.0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("grf samples are deterministic, real and mean free") {
  GrfSpec s;
  s.seed = 99;
  const auto a = sample_grf_periodic(s, 3);
  const auto b = sample_grf_periodic(s, 3);
  const auto c = sample_grf_periodic(s, 4);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  const double mean = std::accumulate(a.values.begin(), a.values.end(), 0.0) / a.values.size();
  CHECK(std::abs(mean) <= 1e-12);
  const auto modes = grf_modes(s, 3);
  const spectral::FourierGrid g(s.n, 1);
  for (std::size_t k = 0; k < modes.size(); ++k) CHECK(modes[g.conjugate_index(k)] == std::conj(modes[k]));
  // dft of the field returns the drawn modes.
  const auto back = spectral::dft(g, a.values);
  for (std::size_t k = 0; k < modes.size(); ++k) CHECK(std::abs(back.values[k] - modes[k]) <= 1e-12);
}

TEST_CASE("grf per-mode variance and decay") {
  GrfSpec s;
  s.seed = 5;
  const int draws = 4000;
  const spectral::FourierGrid g(s.n, 1);
  std::vector<double> var(s.n, 0.0);
  for (int p = 0; p < draws; ++p) {
    const auto f = sample_grf_periodic(s, p);
    const auto a = spectral::dft(g, f.values);
    for (int k = 0; k < s.n; ++k) var[k] += std::norm(a.values[k]) / draws;
  }
  CHECK(var[0] <= 1e-24);  // mean mode is zero up to transform roundoff
  for (int xi = 1; xi < s.n / 2; ++xi) {
    const double expect = s.sigma * s.sigma * std::pow(xi * xi + s.tau * s.tau, -s.gamma);
    CHECK(std::abs(var[xi] / expect - 1.0) <= 0.1);
  }
  for (int xi = 1; xi <= 7; ++xi) {
    const double expect = std::pow((4.0 * xi * xi + 25) / (xi * xi + 25), -2.0);
    CHECK(std::abs(var[2 * xi] / var[xi] / expect - 1.0) <= 0.15);
  }
}

TEST_CASE("diffusion-reaction forcing statistics") {
  const std::vector<double> nodes{-0.5, -0.3, 0.0, 0.2};
  const auto a = sample_forcing_dre(3, nodes, 0);
  CHECK(a.values == sample_forcing_dre(3, nodes, 0).values);
  const int draws = 10000;
  double var = 0, cov = 0;
  for (int p = 0; p < draws; ++p) {
    const auto f = sample_forcing_dre(3, nodes, p);
    var += f.values[2] * f.values[2] / draws;
    cov += f.values[2] * f.values[3] / draws;
  }
  CHECK(std::abs(var / 625.0 - 1.0) <= 0.1);
  CHECK(std::abs(cov / (625.0 * std::exp(-0.5)) - 1.0) <= 0.1);
}

TEST_CASE("advection coefficients have unit minimum") {
  GrfSpec s;
  s.sigma = 30;
  s.tau = 8;
  s.seed = 2;
  for (int p = 0; p < 20; ++p) {
    const auto a = sample_advection_coefficient(s, p);
    CHECK(*std::min_element(a.values.begin(), a.values.end()) == 1.0);
    const double lo = *std::min_element(a.raw.begin(), a.raw.end());
    double mean = 0, raw_mean = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      mean += a.values[i] / a.values.size();
      raw_mean += a.raw[i] / a.raw.size();
    }
    CHECK(mean == doctest::Approx(1.0 + raw_mean - lo).epsilon(1e-12));
  }
  const auto flat = shift_to_unit_minimum(std::vector<double>(8, 0.0), 8);
  for (double v : flat.values) CHECK(v == 1.0);
}

TEST_CASE("cde initial data") {
  const auto basis = spectral::dirichlet_basis(32, {0, 1e-6});
  const auto u = sample_cde_initial(4, basis, 0);
  CHECK(u.values.front() == 0.0);
  CHECK(std::abs(u.values.back()) <= 1e-14);
  for (double w : u.raw) {
    CHECK(w >= 0.0);
    CHECK(w < 1.0);
  }
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double x = basis.nodes()[i];
    double sum = 0;
    for (int j = 0; j < 4; ++j) sum += u.raw[j] * (spectral::legendre(j, x) - spectral::legendre(j + 2, x));
    CHECK(std::abs(u.values[i] - std::pow(1 - x, 4) * (1 + x) * sum) <= 1e-14);
  }
  const auto e0 = cde_initial_from_weights(basis, {1, 0, 0, 0});
  for (std::size_t i = 0; i < e0.values.size(); ++i) {
    const double x = basis.nodes()[i];
    CHECK(std::abs(e0.values[i] - std::pow(1 - x, 4) * (1 + x) * 1.5 * (1 - x * x)) <= 1e-13);
  }
}

TEST_CASE("datasets are index addressed") {
  for (auto f : {Family::DiffusionReaction, Family::Burgers, Family::Advection, Family::ConvectionDiffusionBL,
                 Family::KSE2D, Family::NSE2D}) {
    const auto p = solvers::PdeProblem::defaults(f);
    const auto spec = default_sampling(p, 17);
    const auto batch = generate_inputs(p, spec, 5, 3);
    REQUIRE(batch.size() == 3);
    CHECK(batch[1].values == generate_input(p, spec, 6).values);
    CHECK(batch[0].values != batch[1].values);
  }
  const auto kse = default_sampling(solvers::PdeProblem::defaults(Family::KSE2D));
  CHECK(kse.grf.sigma == 4.0);
  CHECK(kse.grf.tau == 2.0);
  CHECK(kse.grf.gamma == 2.5);
  const auto nse = default_sampling(solvers::PdeProblem::defaults(Family::NSE2D));
  CHECK(nse.grf.sigma == 9.0);
  CHECK(nse.grf.tau == 3.0);
}
