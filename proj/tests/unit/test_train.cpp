#include <doctest.h>

#include <cmath>

#include "sclon/error.hpp"
#include "sclon/train/adam.hpp"
#include "sclon/train/lbfgs.hpp"
#include "sclon/train/plateau.hpp"
#include "sclon/train/trainer.hpp"
#include "studies.hpp"

using namespace sclon;
using namespace sclon::train;

namespace {

double rosenbrock(std::span<const double> x, std::span<double> g) {
  double f = 0;
  std::fill(g.begin(), g.end(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i], b = 1 - x[i];
    f += 100 * a * a + b * b;
    g[i] += -400 * x[i] * a - 2 * b;
    g[i + 1] += 200 * a;
  }
  return f;
}

// f = 1/2 x^T D x with D = diag(1..n).
double diag_quadratic(std::span<const double> x, std::span<double> g) {
  double f = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(i + 1);
    f += 0.5 * d * x[i] * x[i];
    g[i] = d * x[i];
  }
  return f;
}

}  // namespace

TEST_CASE("plateau rule") {
  PlateauOptions o;
  o.window = 2;
  o.eps = 0.1;
  o.max_iters = 5;
  const std::vector<double> falling{8, 4, 2, 1};
  CHECK_FALSE(plateau_check(falling, o));
  const std::vector<double> flat{8, 4, 3.9, 3.8};
  CHECK(plateau_check(flat, o));
  const std::vector<double> young{8, 8};
  CHECK_FALSE(plateau_check(young, o));
  const std::vector<double> long_run{6, 5, 4, 3, 2, 1};
  CHECK(plateau_check(long_run, o));
}

TEST_CASE("first l-bfgs direction is normalised steepest descent") {
  Lbfgs opt(3, {});
  const std::vector<double> g{3, 0, 4};
  const auto d = opt.direction(g);
  CHECK(d[0] == doctest::Approx(-0.6));
  CHECK(d[2] == doctest::Approx(-0.8));
}

TEST_CASE("l-bfgs solves rosenbrock") {
  LbfgsOptions o;
  o.plateau.max_iters = 500;
  o.plateau.eps = 0;
  o.divergence_factor = 1e300;
  const auto res = minimize_lbfgs(rosenbrock, {-1.2, 1.0, -0.5, 0.8}, o);
  for (double v : res.x) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t i = 1; i < res.history.size(); ++i) CHECK(res.history[i] <= res.history[i - 1]);
}

TEST_CASE("l-bfgs on a quadratic") {
  LbfgsOptions o;
  o.plateau.max_iters = 100;
  const auto res = minimize_lbfgs(diag_quadratic, std::vector<double>(6, 1.0), o);
  CHECK(res.f <= 1e-20);
  CHECK(res.reason != StopReason::Diverged);
  // Superlinear: machine-level loss well before the iteration cap.
  std::size_t reached = 0;
  while (reached < res.history.size() && res.history[reached] > 1e-20) ++reached;
  CHECK(reached <= 30);
}

TEST_CASE("l-bfgs stops on zero loss and zero gradient") {
  LbfgsOptions o;
  auto res = minimize_lbfgs(diag_quadratic, std::vector<double>(3, 0.0), o);
  CHECK(res.reason == StopReason::ZeroLoss);
  const Objective shifted = [](std::span<const double> x, std::span<double> g) {
    g[0] = 0;
    return 1.0 + 0 * x[0];
  };
  res = minimize_lbfgs(shifted, {2.0}, o);
  CHECK(res.reason == StopReason::ZeroGradient);
}

TEST_CASE("iteration callback sees every accepted iterate") {
  LbfgsOptions o;
  o.plateau.max_iters = 7;
  o.plateau.eps = 0;
  int calls = 0;
  const auto res = minimize_lbfgs(rosenbrock, {-1.2, 1.0}, o, [&](int, double) { ++calls; });
  CHECK(calls == res.iterations);
  CHECK(res.history.size() == static_cast<std::size_t>(res.iterations) + 1);
}

TEST_CASE("adam on a quadratic and divergence detection") {
  // The bias-corrected first step moves every coordinate by the learning rate.
  AdamOptions one;
  one.learning_rate = 0.05;
  one.plateau.max_iters = 1;
  const auto first = minimize_adam(diag_quadratic, {1.0, -2.0}, one);
  CHECK(first.x[0] == doctest::Approx(0.95).epsilon(1e-6));
  CHECK(first.x[1] == doctest::Approx(-1.95).epsilon(1e-6));

  AdamOptions o;
  o.learning_rate = 0.01;
  o.plateau.max_iters = 3000;
  o.plateau.eps = 0;
  const auto res = minimize_adam(diag_quadratic, std::vector<double>(4, 1.0), o);
  CHECK(res.f < 1e-4);

  AdamOptions wild;
  wild.learning_rate = 1.0;
  wild.divergence_factor = 2.0;
  const Objective cliff = [](std::span<const double> x, std::span<double> g) {
    g[0] = -std::exp(-x[0]);
    return std::exp(-x[0]) + (x[0] > 0.5 ? 1e6 : 0.0);
  };
  CHECK(minimize_adam(cliff, {0.0}, wild).reason == StopReason::Diverged);
}

TEST_CASE("one training segment reduces the loss and freezes anchors") {
  const auto p = study::tiny_problem(Family::Burgers);
  const net::Network net(net::default_network(p), p);
  const auto res = residuals::make_residual(p);
  const auto inputs = sampling::generate_inputs(p, sampling::default_sampling(p, 1), 0, 3);
  TrainerOptions o;
  o.lbfgs.plateau.max_iters = 30;
  o.loss_scale = 1.0 / 3;
  int seen = 0;
  o.progress = [&](int q, int, double) {
    CHECK(q == 0);
    ++seen;
  };
  auto st = initial_train_state(p, net, inputs, 9);
  CHECK(st.anchors[0] == solvers::initial_state(p, inputs[0]));
  const auto before = st.params;
  st = train_segment(std::move(st), net, inputs, *res, o);
  CHECK(st.segment == 1);
  REQUIRE(st.loss_history.size() == 1);
  CHECK(st.loss_history[0].back() < 1e-2 * st.loss_history[0].front());
  CHECK(seen == static_cast<int>(st.loss_history[0].size()) - 1);
  CHECK(st.segment_params[0] == st.params);
  CHECK(st.params != before);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    CHECK(st.anchors[i] == net.predict(st.params, inputs[i], solvers::initial_state(p, inputs[i])).back());

  // Training is a deterministic function of the seed.
  auto again = train_segment(initial_train_state(p, net, inputs, 9), net, inputs, *res, o);
  CHECK(again.params == st.params);
}

TEST_CASE("segments chain through the anchors") {
  auto p = study::tiny_problem(Family::DiffusionReaction);
  p.segments = 2;
  p.t_final = 4 * p.dt;
  net::NetworkSpec spec;
  spec.layers = {{net::LayerKind::Conv1dZero, 4, 3, net::Activation::Swish},
                 {net::LayerKind::Conv1dZero, 2, 3, net::Activation::Identity}};
  spec.output = net::OutputMap::Nodal;
  spec.cumulative = true;
  spec.anchored = true;
  spec.anchor_input = true;
  const net::Network net(spec, p);
  const auto res = residuals::make_residual(p);
  const auto inputs = sampling::generate_inputs(p, sampling::default_sampling(p, 1), 0, 2);
  TrainerOptions o;
  o.lbfgs.plateau.max_iters = 10;
  const auto st = train_all(initial_train_state(p, net, inputs, 1), 2, net, inputs, *res, o);
  CHECK(st.segment == 2);
  CHECK(st.segment_params.size() == 2);
  CHECK(st.stop_reasons.size() == 2);

  const auto traj = predict_trajectory(p, net, st.segment_params, inputs[1]);
  REQUIRE(traj.snapshots.size() == 5);
  CHECK(traj.snapshots[0] == solvers::initial_state(p, inputs[1]));
  const auto first = net.predict(st.segment_params[0], inputs[1], traj.snapshots[0]);
  const auto second = net.predict(st.segment_params[1], inputs[1], first.back());
  CHECK(traj.snapshots[2] == first[1]);
  CHECK(traj.snapshots[4] == second[1]);
  CHECK(traj.snapshots[4] == st.anchors[1]);
}
