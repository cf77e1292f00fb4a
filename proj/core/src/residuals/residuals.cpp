#include "sclon/residuals/residuals.hpp"

#include "sclon/error.hpp"
#include "sclon/net/ops.hpp"
#include "sclon/solvers/schemes.hpp"

namespace sclon::residuals {

using net::Var;

namespace {

// Implicit Euler on a Legendre space:
//   lhs next - mass_dt prev + load (mu u_prev^2 - f) = 0
// with the u^2 and f terms present for DRE only.
class LegendreResidual final : public SchemeResidual {
 public:
  explicit LegendreResidual(const solvers::PdeProblem& p)
      : family_(p.family), mu_(p.mu), scheme_(solvers::make_legendre_scheme(p)) {}

  Family family() const override { return family_; }
  solvers::Representation representation() const override {
    return scheme_.basis.corrector_enabled() ? solvers::Representation::LegendreEnriched
                                             : solvers::Representation::Legendre;
  }
  std::size_t state_width() const override { return static_cast<std::size_t>(scheme_.basis.size()); }

  Var defect(Var prev, Var next, const sampling::InputSample& input) const override {
    const Var implicit = net::apply_matrix(scheme_.lhs, next);
    const Var carried = net::apply_matrix(scheme_.mass_dt, prev);
    if (family_ == Family::ConvectionDiffusionBL) return net::sub(implicit, carried);

    const auto& b = scheme_.basis;
    require(static_cast<int>(input.values.size()) == b.node_count(), "DRE residual: forcing not on basis nodes");
    const Var u = net::apply_matrix(b.values(), prev);
    const Var reaction = net::apply_matrix(scheme_.load, net::mul(u, u));
    const Eigen::VectorXd load_f =
        scheme_.load * Eigen::Map<const Eigen::VectorXd>(input.values.data(), b.node_count());
    const Var forcing = prev.tape->constant({load_f.data(), load_f.data() + load_f.size()});
    return net::lincomb({{1.0, implicit}, {-1.0, carried}, {mu_, reaction}, {-1.0, forcing}});
  }

 private:
  Family family_;
  double mu_;
  solvers::LegendreScheme scheme_;
};

class FourierResidual : public SchemeResidual {
 public:
  explicit FourierResidual(const solvers::PdeProblem& p) : problem_(p), s_(solvers::make_fourier_scheme(p)) {}

  Family family() const override { return problem_.family; }
  solvers::Representation representation() const override {
    return s_.grid.dims() == 2 ? solvers::Representation::Fourier2D : solvers::Representation::Fourier1D;
  }
  std::size_t state_width() const override { return 2 * s_.grid.size(); }

 protected:
  const spectral::FourierGrid& grid() const { return s_.grid; }

  template <class Rhs>
  Var rk4_defect(Var prev, Var next, const Rhs& f) const {
    const double dt = problem_.dt;
    const Var k1 = f(prev);
    const Var k2 = f(net::lincomb({{1.0, prev}, {0.5 * dt, k1}}));
    const Var k3 = f(net::lincomb({{1.0, prev}, {0.5 * dt, k2}}));
    const Var k4 = f(net::lincomb({{1.0, prev}, {dt, k3}}));
    return net::lincomb(
        {{1.0, next}, {-1.0, prev}, {-dt / 6.0, k1}, {-dt / 3.0, k2}, {-dt / 3.0, k3}, {-dt / 6.0, k4}});
  }

  solvers::PdeProblem problem_;
  solvers::FourierScheme s_;
};

// RK4 on dy/dt = -nu k^2 y - mu F(u u_x).
class BurgersResidual final : public FourierResidual {
 public:
  explicit BurgersResidual(const solvers::PdeProblem& p) : FourierResidual(p) {
    for (double k2 : s_.k2) diffusion_.push_back(-p.nu * k2);
  }

  Var defect(Var prev, Var next, const sampling::InputSample&) const override {
    return rk4_defect(prev, next, [this](Var y) {
      const Var u = net::idft_real(grid(), y);
      const Var ux = net::idft_real(grid(), net::mode_scale_i(y, s_.kx));
      const Var g = net::dft_real(grid(), net::mul(u, ux));
      return net::lincomb({{1.0, net::mode_scale(y, diffusion_)}, {-problem_.mu, g}});
    });
  }

 private:
  std::vector<double> diffusion_;
};

// RK4 on dy/dt = -F(a F^-1(i k y)).
class AdvectionResidual final : public FourierResidual {
 public:
  using FourierResidual::FourierResidual;

  Var defect(Var prev, Var next, const sampling::InputSample& input) const override {
    require(input.values.size() == grid().size(), "advection residual: coefficient not on the grid");
    const auto& a = input.values;
    return rk4_defect(prev, next, [this, &a](Var y) {
      const Var ux = net::idft_real(grid(), net::mode_scale_i(y, s_.kx));
      return net::scale(net::dft_real(grid(), net::mul_const(ux, a)), -1.0);
    });
  }
};

// ETDRK4 with N(y) = -F(|grad u|^2); the e^{c dt} propagation of the state is
// part of the defect.
class KseResidual final : public FourierResidual {
 public:
  explicit KseResidual(const solvers::PdeProblem& p) : FourierResidual(p) {
    for (double m : s_.mask) neg_mask_.push_back(-m);
    two_f2_ = s_.etd.f2;
    for (auto& v : two_f2_) v *= 2.0;
  }

  Var defect(Var prev, Var next, const sampling::InputSample&) const override {
    const auto& e = s_.etd;
    const auto nonlinear = [this](Var y) {
      const Var ux = net::idft_real(grid(), net::mode_scale_i(y, s_.kx));
      const Var uy = net::idft_real(grid(), net::mode_scale_i(y, s_.ky));
      const Var g = net::dft_real(grid(), net::add(net::mul(ux, ux), net::mul(uy, uy)));
      return net::mode_scale(g, neg_mask_);
    };
    const Var nu = nonlinear(prev);
    const Var a = net::add(net::mode_scale(prev, e.e2), net::mode_scale(nu, e.q));
    const Var na = nonlinear(a);
    const Var b = net::add(net::mode_scale(prev, e.e2), net::mode_scale(na, e.q));
    const Var nb = nonlinear(b);
    const Var c = net::add(net::mode_scale(a, e.e2),
                           net::mode_scale(net::lincomb({{2.0, nb}, {-1.0, nu}}), e.q));
    const Var nc = nonlinear(c);
    return net::lincomb({{1.0, next},
                         {-1.0, net::mode_scale(prev, e.e)},
                         {-1.0, net::mode_scale(nu, e.f1)},
                         {-1.0, net::mode_scale(net::add(na, nb), two_f2_)},
                         {-1.0, net::mode_scale(nc, e.f3)}});
  }

 private:
  std::vector<double> neg_mask_;
  std::vector<double> two_f2_;
};

// Crank-Nicolson diffusion with Heun-averaged advection:
//   (w1 - w0)/dt + k^2/(2 Re) (w1 + w0) + (N(w0) + N(w~))/2 - F(f) = 0
// where w~ is the predictor computed from w0 exactly as the solver does.
class NseResidual final : public FourierResidual {
 public:
  explicit NseResidual(const solvers::PdeProblem& p) : FourierResidual(p) {
    const auto m = s_.grid.size();
    u_mult_.resize(m);
    v_mult_.resize(m);
    one_minus_.resize(m);
    inv_one_plus_.resize(m);
    viscous_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      u_mult_[k] = -s_.ky[k] * s_.inv_k2[k];
      v_mult_[k] = s_.kx[k] * s_.inv_k2[k];
      one_minus_[k] = 1.0 - s_.cn_half[k];
      inv_one_plus_[k] = 1.0 / (1.0 + s_.cn_half[k]);
      viscous_[k] = s_.cn_half[k] / p.dt;
    }
    forcing_ = solvers::to_interleaved(s_.forcing_hat);
  }

  Var defect(Var prev, Var next, const sampling::InputSample&) const override {
    const double dt = problem_.dt;
    Var f = prev.tape->constant(forcing_);
    const auto flux = [this](Var w) {
      const Var u = net::idft_real(grid(), net::mode_scale_i(w, u_mult_));
      const Var v = net::idft_real(grid(), net::mode_scale_i(w, v_mult_));
      const Var wn = net::idft_real(grid(), w);
      const Var a = net::dft_real(grid(), net::mul(u, wn));
      const Var b = net::dft_real(grid(), net::mul(v, wn));
      return net::mode_scale(net::add(net::mode_scale_i(a, s_.kx), net::mode_scale_i(b, s_.ky)), s_.mask);
    };
    const Var n0 = flux(prev);
    const Var pred = net::mode_scale(
        net::lincomb({{1.0, net::mode_scale(prev, one_minus_)}, {-dt, n0}, {dt, f}}), inv_one_plus_);
    const Var n1 = flux(pred);
    return net::lincomb({{1.0 / dt, next},
                         {-1.0 / dt, prev},
                         {1.0, net::mode_scale(net::add(next, prev), viscous_)},
                         {0.5, n0},
                         {0.5, n1},
                         {-1.0, f}});
  }

 private:
  std::vector<double> u_mult_;
  std::vector<double> v_mult_;
  std::vector<double> one_minus_;
  std::vector<double> inv_one_plus_;
  std::vector<double> viscous_;
  std::vector<double> forcing_;
};

}  // namespace

std::unique_ptr<SchemeResidual> make_residual(const solvers::PdeProblem& problem) {
  problem.validate();
  switch (problem.family) {
    case Family::DiffusionReaction:
    case Family::ConvectionDiffusionBL:
      return std::make_unique<LegendreResidual>(problem);
    case Family::Burgers:
      return std::make_unique<BurgersResidual>(problem);
    case Family::Advection:
      return std::make_unique<AdvectionResidual>(problem);
    case Family::KSE2D:
      return std::make_unique<KseResidual>(problem);
    case Family::NSE2D:
      return std::make_unique<NseResidual>(problem);
  }
  fail(ErrorCode::ContractViolation, "unknown family");
}

ResidualReport evaluate_residual(const SchemeResidual& residual, const solvers::Trajectory& traj,
                                 const sampling::InputSample& input) {
  require(traj.rep == residual.representation(), "residual: trajectory representation mismatch");
  traj.check_shape();
  require(traj.width() == residual.state_width(), "residual: snapshot width mismatch");
  ResidualReport report;
  for (std::size_t r = 0; r + 1 < traj.snapshots.size(); ++r) {
    net::Tape tape;
    const Var prev = tape.constant(traj.snapshots[r]);
    const Var next = tape.constant(traj.snapshots[r + 1]);
    const Var d = residual.defect(prev, next, input);
    const auto values = d.value();
    double step = 0.0;
    for (double v : values) step += v * v;
    report.per_step.push_back(step);
    report.per_term.emplace_back(values.begin(), values.end());
    report.total += step;
  }
  return report;
}

namespace {

ResidualReport report_for(const solvers::PdeProblem& problem, Family expected, const solvers::Trajectory& traj,
                          const sampling::InputSample& input) {
  require(problem.family == expected, "residual: problem family mismatch");
  return evaluate_residual(*make_residual(problem), traj, input);
}

}  // namespace

ResidualReport residual_dre(const solvers::PdeProblem& problem, const solvers::Trajectory& traj,
                            const sampling::InputSample& forcing) {
  return report_for(problem, Family::DiffusionReaction, traj, forcing);
}

ResidualReport residual_burgers(const solvers::PdeProblem& problem, const solvers::Trajectory& traj) {
  return report_for(problem, Family::Burgers, traj, {});
}

ResidualReport residual_advection(const solvers::PdeProblem& problem, const solvers::Trajectory& traj,
                                  const sampling::InputSample& coefficient) {
  return report_for(problem, Family::Advection, traj, coefficient);
}

ResidualReport residual_cde(const solvers::PdeProblem& problem, const solvers::Trajectory& traj) {
  return report_for(problem, Family::ConvectionDiffusionBL, traj, {});
}

ResidualReport residual_kse(const solvers::PdeProblem& problem, const solvers::Trajectory& traj) {
  return report_for(problem, Family::KSE2D, traj, {});
}

ResidualReport residual_nse(const solvers::PdeProblem& problem, const solvers::Trajectory& traj) {
  return report_for(problem, Family::NSE2D, traj, {});
}

double trajectory_scale(const solvers::Trajectory& traj) {
  double s = 1.0;
  for (const auto& snap : traj.snapshots)
    for (double v : snap) s += v * v;
  return s;
}

}  // namespace sclon::residuals
