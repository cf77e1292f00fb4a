#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sclon/error.hpp"
#include "sclon/io/csv.hpp"
#include "sclon/metrics/benchmark_run.hpp"
#include "sclon/metrics/metrics.hpp"
#include "studies.hpp"

using namespace sclon;
using namespace sclon::metrics;

namespace {

using Cube = std::vector<std::vector<std::vector<double>>>;

// P = 2, R = 2, N = 3.
const Cube kRef = {{{1.0, -2.0, 0.5}, {0.0, 3.0, -1.0}}, {{2.0, 2.0, 2.0}, {-1.5, 0.25, 4.0}}};
const Cube kPred = {{{1.5, -2.0, 0.0}, {0.25, 2.0, -1.0}}, {{2.0, 1.0, 2.5}, {-1.0, 0.25, 3.0}}};

}  // namespace

TEST_CASE("error triple on a hand-sized case") {
  const auto e = error_triple(stack(kPred), stack(kRef));
  const auto o = oracle::direct_errors(kPred, kRef);
  CHECK(std::abs(e.mae - o.mae) <= 1e-14);
  CHECK(std::abs(e.rel_l2 - o.rel) <= 1e-14);
  CHECK(std::abs(e.l_inf - o.linf) <= 1e-14);

  // By hand: |e| = {.5,0,.5,.25,1,0 | 0,1,.5,.5,0,1}.
  CHECK(e.mae == doctest::Approx(5.25 / 12).epsilon(1e-15));
  CHECK(e.l_inf == doctest::Approx((0.5 + 1 + 1 + 1) / 4).epsilon(1e-15));
  const double rel0 = std::sqrt((0.25 + 0.25 + 0.0625 + 1) / (1 + 4 + 0.25 + 9 + 1));
  const double rel1 = std::sqrt((1 + 0.25 + 0.25 + 1) / (12 + 2.25 + 0.0625 + 16));
  CHECK(e.rel_l2 == doctest::Approx(0.5 * (rel0 + rel1)).epsilon(1e-15));
  CHECK(e.excluded == 0);
}

TEST_CASE("identical series have zero error") {
  const auto e = error_triple(stack(kRef), stack(kRef));
  CHECK(e.mae == 0.0);
  CHECK(e.rel_l2 == 0.0);
  CHECK(e.l_inf == 0.0);
}

TEST_CASE("zero-reference samples are excluded from rel_l2 with a warning") {
  Cube ref = kRef, pred = kPred;
  for (auto& step : ref[1])
    for (auto& v : step) v = 0.0;
  const auto e = error_triple(stack(pred), stack(ref));
  CHECK(e.excluded == 1);
  CHECK(e.warnings.size() == 1);
  CHECK(e.rel_l2 == doctest::Approx(oracle::direct_errors({pred[0]}, {ref[0]}).rel).epsilon(1e-15));
}

TEST_CASE("shape mismatches are rejected") {
  Cube short_pred = kPred;
  short_pred[0].pop_back();
  short_pred[1].pop_back();
  CHECK_THROWS_AS(error_triple(stack(short_pred), stack(kRef)), Error);
}

TEST_CASE("reconstruction on the evaluation grid") {
  auto p = study::tiny_problem(Family::DiffusionReaction);
  solvers::Trajectory t;
  t.rep = solvers::Representation::Legendre;
  t.n = p.n;
  t.snapshots.assign(2, std::vector<double>(p.n, 0.0));
  t.snapshots[1][0] = 2.0 / 3.0;  // phi_0 = 3/2 (1 - x^2)
  const auto u = reconstruct(p, t);
  REQUIRE(u.size() == 1);
  const auto basis = spectral::dirichlet_basis(p.n);
  for (int j = 0; j < basis.node_count(); ++j) {
    const double x = basis.nodes()[j];
    CHECK(u[0][j] == doctest::Approx(1 - x * x).epsilon(1e-14).scale(1.0));
  }

  const auto q = study::tiny_problem(Family::Burgers);
  const spectral::FourierGrid grid(q.n, 1);
  std::vector<double> f(q.n);
  for (int i = 0; i < q.n; ++i) f[i] = std::cos(2 * grid.node(i));
  solvers::Trajectory tf;
  tf.rep = solvers::Representation::Fourier1D;
  tf.n = q.n;
  tf.snapshots = {solvers::to_interleaved(spectral::dft(grid, f).values)};
  const auto v = reconstruct(q, tf, 0);
  for (int i = 0; i < q.n; ++i) CHECK(v[0][i] == doctest::Approx(f[i]).epsilon(1e-14).scale(1.0));
}

TEST_CASE("benchmark csv column order") {
  BenchmarkRow row{"Burgers", "Initial conditions", {}};
  row.errors.mae = 0.5;
  row.errors.rel_l2 = 0.25;
  row.errors.l_inf = 2.0;
  const auto csv = benchmark_csv({row});
  CHECK(csv.rfind("equation,random_input,mae,rel_l2,l_inf\n", 0) == 0);
  CHECK(csv.find("Burgers,Initial conditions,0.5,0.25,2\n") != std::string::npos);
  CHECK(instance_csv({row.errors}).rfind("instance,mae,rel_l2,l_inf\n", 0) == 0);
  CHECK(equation_label(Family::NSE2D) == "2D Navier-Stokes");
  CHECK(input_label(Family::DiffusionReaction) == "Forcing functions");
  CHECK(input_label(Family::Advection) == "Variable coefficients");
}

TEST_CASE("csv quoting and exact doubles") {
  io::CsvTable t{{"a", "b"}, {{"x,y", "say \"hi\""}}};
  CHECK(io::to_csv(t) == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::matrix_csv(std::vector<double>{1, 2, 3, 4}, 2, 2) == "c0,c1\n1,2\n3,4\n");
}

TEST_CASE("benchmark run of a frozen network") {
  // Zero parameters with anchored output predict the initial state forever.
  auto p = study::tiny_problem(Family::ConvectionDiffusionBL);
  auto spec = net::default_network(p);
  spec.anchored = true;
  const net::Network network(spec, p);
  const std::vector<double> zero(network.parameter_count(), 0.0);
  const auto inputs = sampling::generate_inputs(p, sampling::default_sampling(p, 1), 0, 3);
  const auto result = benchmark_run(p, p, network, {zero}, inputs);
  CHECK(result.per_instance.size() == 3);
  CHECK(result.row.equation == equation_label(p.family));

  Cube pred, ref;
  for (const auto& in : inputs) {
    const auto traj = solvers::solve_reference(p, in);
    ref.push_back(reconstruct(p, traj));
    pred.push_back(std::vector<std::vector<double>>(2, reconstruct(p, traj, 0)[0]));
  }
  const auto o = oracle::direct_errors(pred, ref);
  CHECK(result.row.errors.mae == doctest::Approx(o.mae).epsilon(1e-12));
  CHECK(result.row.errors.rel_l2 == doctest::Approx(o.rel).epsilon(1e-12));
  CHECK(result.row.errors.l_inf == doctest::Approx(o.linf).epsilon(1e-12));
  CHECK(result.per_instance[1].rel_l2 == doctest::Approx(oracle::direct_errors({pred[1]}, {ref[1]}).rel).epsilon(1e-12));
}
