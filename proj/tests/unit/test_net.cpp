#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "sclon/error.hpp"
#include "sclon/net/hermitian.hpp"
#include "sclon/net/layers.hpp"
#include "sclon/net/loss.hpp"
#include "sclon/net/network.hpp"
#include "sclon/net/ops.hpp"
#include "sclon/net/tape.hpp"
#include "studies.hpp"

using namespace sclon;
using namespace sclon::net;

namespace {

std::vector<double> randn(std::size_t n, unsigned seed, double s = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d(0.0, s);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

// Checks the tape gradient of f(x) . w (w random) against central differences.
double op_gradient_error(std::size_t n, const std::function<Var(Tape&, Var)>& f, unsigned seed = 1) {
  const auto x0 = randn(n, seed);
  std::vector<double> w;
  const auto objective = [&](const std::vector<double>& x, std::vector<double>* grad) {
    Tape tape;
    const Var xv = tape.variable(x);
    const Var y = f(tape, xv);
    if (w.empty()) w = randn(y.size(), seed + 100);
    const Var obj = sum_squares(mul_const(y, w));
    if (grad) {
      tape.backward(obj);
      *grad = tape.grad(xv.id);
    }
    return obj.value()[0];
  };
  std::vector<double> g;
  objective(x0, &g);
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(x0[i]));
    auto xp = x0, xm = x0;
    xp[i] += h;
    xm[i] -= h;
    const double fd = (objective(xp, nullptr) - objective(xm, nullptr)) / (2 * h);
    worst = std::max(worst, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
  }
  return worst;
}

}  // namespace

TEST_CASE("tape ops differentiate correctly") {
  const spectral::FourierGrid g1(8, 1), g2(4, 2);
  const std::vector<double> c = randn(6, 9);
  const std::vector<double> s = randn(8, 10);
  const std::vector<std::complex<double>> cc = {{1, 2}, {-0.5, 0.3}, {0, 1}, {2, -1}};
  Eigen::MatrixXd a(4, 6);
  a.setRandom();
  CHECK(op_gradient_error(6, [](Tape&, Var x) { return add(x, mul(x, x)); }) < 1e-8);
  CHECK(op_gradient_error(6, [](Tape&, Var x) { return sub(scale(x, 3.0), x); }) < 1e-8);
  CHECK(op_gradient_error(6, [](Tape&, Var x) { return lincomb({{2.0, x}, {-1.5, swish(x)}}); }) < 1e-8);
  CHECK(op_gradient_error(6, [&](Tape&, Var x) { return add_const(mul_const(x, c), c); }) < 1e-8);
  CHECK(op_gradient_error(6, [&](Tape&, Var x) { return apply_matrix(a, x); }) < 1e-8);
  CHECK(op_gradient_error(6, [](Tape&, Var x) {
          return sum_scalars({sum_squares(x), sum_squares(slice(x, 1, 3))});
        }) < 1e-7);
  CHECK(op_gradient_error(6, [](Tape&, Var x) { return concat({slice(x, 3, 3), slice(x, 0, 2)}); }) < 1e-8);
  CHECK(op_gradient_error(8, [&](Tape&, Var x) { return cmul_const(x, cc); }) < 1e-8);
  CHECK(op_gradient_error(16, [&](Tape&, Var x) { return mode_scale(mode_scale_i(x, s), s); }) < 1e-8);
  CHECK(op_gradient_error(8, [&](Tape&, Var x) { return dft_real(g1, x); }) < 1e-8);
  CHECK(op_gradient_error(16, [&](Tape&, Var x) { return idft_real(g1, x); }) < 1e-8);
  CHECK(op_gradient_error(16, [&](Tape&, Var x) { return dft_real(g2, mul(x, x)); }) < 1e-7);
  CHECK(op_gradient_error(32, [&](Tape&, Var x) { return idft_real(g2, x); }) < 1e-8);
}

TEST_CASE("swish value") {
  Tape tape;
  const Var x = tape.constant({-2.0, 0.0, 1.5});
  const auto y = swish(x).value();
  CHECK(y[0] == doctest::Approx(-2.0 / (1 + std::exp(2.0))).epsilon(1e-15));
  CHECK(y[1] == 0.0);
  CHECK(y[2] == doctest::Approx(1.5 / (1 + std::exp(-1.5))).epsilon(1e-15));
}

TEST_CASE("external leaves accumulate into the sink") {
  const std::vector<double> p{1.0, 2.0};
  std::vector<double> sink{10.0, 10.0};
  Tape tape;
  const Var v = tape.external(p, sink);
  tape.backward(sum_squares(v));
  CHECK(sink[0] == 12.0);
  CHECK(sink[1] == 14.0);
}

TEST_CASE("conv layers match a direct stencil sum") {
  for (LayerKind kind : {LayerKind::Conv1dCircular, LayerKind::Conv1dZero, LayerKind::Conv2dCircular}) {
    const bool two_d = kind == LayerKind::Conv2dCircular;
    const int n = two_d ? 5 : 9, cin = 2, cout = 3, k = 3;
    const auto geo = make_conv_geometry(kind, cin, cout, k, n, 4);
    const int points = two_d ? n * n : n;
    const auto x = randn(static_cast<std::size_t>(cin) * points, 1);
    const auto params = randn(geo.bias_offset + cout, 2);
    Tape tape;
    const auto y = conv(tape.constant(x), tape.constant(params), geo).value();
    const int taps = two_d ? k * k : k;
    for (int o = 0; o < cout; ++o)
      for (int i = 0; i < points; ++i) {
        double acc = params[geo.bias_offset + o];
        for (int c = 0; c < cin; ++c)
          for (int t = 0; t < taps; ++t) {
            const double wgt = params[4 + (static_cast<std::size_t>(o) * cin + c) * taps + t];
            int src;
            if (two_d) {
              const int ix = i / n, iy = i % n;
              const int sx = ((ix + t / k - 1) % n + n) % n, sy = ((iy + t % k - 1) % n + n) % n;
              src = sx * n + sy;
            } else {
              src = i + t - 1;
              if (kind == LayerKind::Conv1dCircular) src = (src + n) % n;
              if (src < 0 || src >= n) continue;
            }
            acc += wgt * x[static_cast<std::size_t>(c) * points + src];
          }
        CHECK(y[static_cast<std::size_t>(o) * points + i] == doctest::Approx(acc).epsilon(1e-13));
      }
    CHECK(op_gradient_error(x.size(), [&](Tape& t, Var xv) { return conv(xv, t.constant(params), geo); }) < 1e-8);
    CHECK(op_gradient_error(params.size(), [&](Tape& t, Var pv) { return conv(t.constant(x), pv, geo); }) < 1e-8);
  }
}

TEST_CASE("dense layer") {
  const auto x = randn(3, 1);
  const auto params = randn(2 + 2 * 3 + 2, 2);
  Tape tape;
  const auto y = dense(tape.constant(x), tape.constant(params), 2, 2, 3).value();
  for (int o = 0; o < 2; ++o) {
    double acc = params[8 + o];
    for (int i = 0; i < 3; ++i) acc += params[2 + o * 3 + i] * x[i];
    CHECK(y[o] == doctest::Approx(acc).epsilon(1e-14));
  }
  CHECK(op_gradient_error(params.size(), [&](Tape& t, Var p) { return dense(t.constant(x), p, 2, 2, 3); }) < 1e-8);
}

TEST_CASE("hermitian layout expands to real fields") {
  for (int dims : {1, 2}) {
    const spectral::FourierGrid grid(6, dims);
    const HermitianLayout lay(grid);
    CHECK(lay.free_count() == grid.size());
    const auto free = randn(lay.free_count(), 3);
    const auto full = lay.expand(free);
    spectral::CoeffSpectrum s;
    s.values = solvers::to_complex(full);
    s.n = 6;
    s.dims = dims;
    CHECK(s.hermitian_defect() == 0.0);
    CHECK(lay.restrict(full) == free);
    // A Hermitian spectrum synthesizes a real field.
    const auto z = spectral::idft(grid, s.values);
    double imag = 0;
    for (const auto& v : z) imag = std::max(imag, std::abs(v.imag()));
    CHECK(imag < 1e-13);
    Tape tape;
    const auto taped = lay.expand(tape.constant(free)).value();
    CHECK(std::vector<double>(taped.begin(), taped.end()) == full);
    CHECK(op_gradient_error(free.size(), [&](Tape&, Var x) { return lay.expand(x); }) < 1e-8);
  }
}

TEST_CASE("network shapes and initialisation") {
  const auto p = solvers::PdeProblem::defaults(Family::DiffusionReaction);
  const Network net(default_network(p), p);
  CHECK(net.steps() == 10);
  CHECK(net.state_width() == 50);
  CHECK(net.input_points() == 52);
  // 5 conv layers of 50 channels, kernel 5, then a dense head to 10 x 50.
  const std::size_t expect = (1 * 5 * 50 + 50) + 4 * (50 * 5 * 50 + 50) + (500 * 2600 + 500);
  CHECK(net.parameter_count() == expect);
  const auto a = net.init(3), b = net.init(3), c = net.init(4);
  CHECK(a == b);
  CHECK(a != c);
  // Last layer: weights with std sqrt(1/fan_in), zero biases.
  const auto& last = net.layout().back();
  double ss = 0;
  const std::size_t nw = last.count - 500;
  for (std::size_t i = 0; i < nw; ++i) ss += a[last.offset + i] * a[last.offset + i];
  CHECK(ss / nw == doctest::Approx(1.0 / 2600).epsilon(0.02));
  for (std::size_t i = nw; i < last.count; ++i) CHECK(a[last.offset + i] == 0.0);

  const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
  const auto out = net.predict(a, in);
  CHECK(out.size() == 10);
  CHECK(out[0].size() == 50);
}

TEST_CASE("fourier networks emit hermitian spectra") {
  for (Family f : {Family::Burgers, Family::NSE2D}) {
    const auto p = study::tiny_problem(f);
    for (OutputMap map : {OutputMap::Coefficients, OutputMap::Nodal}) {
      auto spec = default_network(p);
      if (map == OutputMap::Nodal) {
        spec.output = map;
        spec.layers.back().width = p.steps_per_segment * (is_2d(f) ? 64 : 8);
      }
      const Network net(spec, p);
      const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
      for (const auto& s : net.predict(net.init(1), in)) {
        spectral::CoeffSpectrum cs;
        cs.values = solvers::to_complex(s);
        cs.n = p.n;
        cs.dims = is_2d(f) ? 2 : 1;
        CHECK(cs.hermitian_defect() <= 1e-12);
      }
    }
  }
}

TEST_CASE("cumulative and anchored outputs") {
  const auto p = study::tiny_problem(Family::Burgers);
  const auto in = sampling::generate_input(p, sampling::default_sampling(p, 1), 0);
  const auto anchor = solvers::initial_state(p, in);
  auto spec = default_network(p);
  const Network plain(spec, p);
  spec.cumulative = true;
  const Network cum(spec, p);
  spec.anchored = true;
  const Network anch(spec, p);
  const auto theta = plain.init(2);
  const auto a = plain.predict(theta, in);
  const auto b = cum.predict(theta, in);
  const auto c = anch.predict(theta, in, anchor);
  for (std::size_t i = 0; i < a[0].size(); ++i) {
    CHECK(b[0][i] == doctest::Approx(a[0][i]).epsilon(1e-14));
    CHECK(b[1][i] == doctest::Approx(a[0][i] + a[1][i]).epsilon(1e-12));
    CHECK(c[1][i] == doctest::Approx(anchor[i] + b[1][i]).epsilon(1e-12));
  }
  CHECK(anch.needs_anchor());
  CHECK_THROWS_AS(anch.predict(theta, in), Error);
}

TEST_CASE("network gradients for every output variant") {
  for (Family f : {Family::DiffusionReaction, Family::Burgers, Family::ConvectionDiffusionBL, Family::KSE2D}) {
    CAPTURE(family_name(f));
    const auto p = study::tiny_problem(f);
    auto spec = default_network(p);
    spec.cumulative = true;
    spec.anchored = true;
    spec.anchor_input = true;
    spec.anchor_scale = 0.5;
    spec.input_scale = 0.3;
    spec.output_scale = 0.7;
    CHECK(study::gradient_check(p, spec, 10, 4).worst_rel <= 1e-5);
  }
  const auto p = study::tiny_problem(Family::DiffusionReaction);
  NetworkSpec nodal;
  nodal.layers = {{LayerKind::Conv1dZero, 4, 3, Activation::Swish}, {LayerKind::Conv1dZero, 2, 3, Activation::Identity}};
  nodal.output = OutputMap::Nodal;
  CHECK(study::gradient_check(p, nodal, 10, 5).worst_rel <= 1e-5);
}

TEST_CASE("invalid architectures are rejected") {
  const auto p = study::tiny_problem(Family::Burgers);
  NetworkSpec spec;
  CHECK_THROWS_AS(Network(spec, p), Error);
  spec.layers = {{LayerKind::Dense, 3, 1, Activation::Identity}};
  CHECK_THROWS_AS(Network(spec, p), Error);
  spec.layers = {{LayerKind::Dense, 16, 1, Activation::Swish}};
  CHECK_THROWS_AS(Network(spec, p), Error);
  spec.layers = {{LayerKind::Conv2dCircular, 2, 3, Activation::Identity}};
  CHECK_THROWS_AS(Network(spec, p), Error);
  const auto cde = study::tiny_problem(Family::ConvectionDiffusionBL);
  NetworkSpec nodal;
  nodal.layers = {{LayerKind::Conv1dZero, 2, 3, Activation::Identity}};
  nodal.output = OutputMap::Nodal;
  CHECK_THROWS_AS(Network(nodal, cde), Error);
}

TEST_CASE("loss is thread-count independent and flags non-finite samples") {
  const auto p = study::tiny_problem(Family::Burgers);
  const Network net(default_network(p), p);
  const auto res = residuals::make_residual(p);
  const auto inputs = sampling::generate_inputs(p, sampling::default_sampling(p, 1), 0, 5);
  std::vector<std::vector<double>> anchors;
  for (const auto& in : inputs) anchors.push_back(solvers::initial_state(p, in));
  const SegmentBatch batch{inputs, anchors};
  const auto theta = net.init(7);
  std::vector<double> g1(theta.size()), g3(theta.size());
  LossOptions one, three;
  three.threads = 3;
  const double l1 = loss_and_grad(net, theta, g1, batch, *res, one);
  const double l3 = loss_and_grad(net, theta, g3, batch, *res, three);
  CHECK(l3 == doctest::Approx(l1).epsilon(1e-14));
  for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g3[i] == doctest::Approx(g1[i]).epsilon(1e-12).scale(1e-12));

  const auto per = sample_losses(net, theta, batch, *res);
  double sum = 0;
  for (double v : per) sum += v;
  CHECK(sum == doctest::Approx(l1).epsilon(1e-13));

  LossOptions half;
  half.scale = 0.5;
  CHECK(loss_and_grad(net, theta, {}, batch, *res, half) == doctest::Approx(0.5 * l1).epsilon(1e-14));

  auto bad = theta;
  bad[0] = std::numeric_limits<double>::quiet_NaN();
  try {
    loss_and_grad(net, bad, g1, batch, *res);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}
