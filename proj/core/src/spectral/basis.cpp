#include "sclon/spectral/basis.hpp"

#include <algorithm>
#include <cmath>

#include "sclon/error.hpp"
#include "sclon/spectral/corrector.hpp"
#include "sclon/spectral/legendre.hpp"

namespace sclon::spectral {

namespace {

std::pair<double, double> phi_with_derivative(int n, double x) {
  const auto [a, da] = legendre_with_derivative(n, x);
  const auto [b, db] = legendre_with_derivative(n + 2, x);
  return {a - b, da - db};
}

// Composite Gauss-Legendre rule on [-1, 1] with panels doubling in width away
// from x = -1, starting at nu / 4.
QuadratureRule graded_rule(double nu, int points_per_panel) {
  std::vector<double> breaks{-1.0};
  double width = 0.25 * nu;
  while (breaks.back() + width < 1.0) {
    breaks.push_back(breaks.back() + width);
    width *= 2.0;
  }
  breaks.push_back(1.0);

  const QuadratureRule ref = gauss_legendre(points_per_panel);
  QuadratureRule out;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      out.nodes.push_back(mid + half * ref.nodes[k]);
      out.weights.push_back(half * ref.weights[k]);
    }
  }
  return out;
}

}  // namespace

double LegendreBasis::eval(int n, double x) const {
  require(n >= 0 && n < size(), "LegendreBasis::eval: index out of range");
  if (n == poly_count_) return corrector_eval(*corrector_nu_, x);
  return legendre(n, x) - legendre(n + 2, x);
}

Eigen::VectorXd LegendreBasis::reconstruct(std::span<const double> coeffs) const {
  require(static_cast<int>(coeffs.size()) == size(),
          "LegendreBasis::reconstruct: coefficient count mismatch");
  const Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), size());
  return values_ * c;
}

Eigen::VectorXd LegendreBasis::project_nodal(std::span<const double> nodal_values) const {
  require(static_cast<int>(nodal_values.size()) == node_count(),
          "LegendreBasis::project_nodal: nodal value count mismatch");
  const Eigen::Map<const Eigen::VectorXd> u(nodal_values.data(), node_count());
  const Eigen::Map<const Eigen::VectorXd> w(weights_.data(), node_count());
  const auto phi = values_.leftCols(poly_count_);
  const Eigen::MatrixXd gram = phi.transpose() * w.asDiagonal() * phi;
  const Eigen::VectorXd rhs = phi.transpose() * (w.asDiagonal() * u);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(size());
  coeffs.head(poly_count_) = gram.ldlt().solve(rhs);
  return coeffs;
}

LegendreBasis dirichlet_basis(int count, BasisOptions options) {
  require(count >= 1, "dirichlet_basis: need at least one basis function");
  const int m = options.node_count == 0 ? count + 2 : options.node_count;
  require(m >= 2, "dirichlet_basis: need at least two nodes");
  if (options.corrector_nu) require(*options.corrector_nu > 0.0, "dirichlet_basis: nu must be positive");

  LegendreBasis basis;
  basis.poly_count_ = count;
  basis.corrector_nu_ = options.corrector_nu;
  QuadratureRule rule = gauss_lobatto(m);
  basis.nodes_ = std::move(rule.nodes);
  basis.weights_ = std::move(rule.weights);

  const int size = basis.size();
  basis.values_.resize(m, size);
  basis.derivs_.resize(m, size);
  for (int j = 0; j < m; ++j) {
    const double x = basis.nodes_[j];
    for (int n = 0; n < count; ++n) {
      const auto [v, d] = phi_with_derivative(n, x);
      basis.values_(j, n) = v;
      basis.derivs_(j, n) = d;
    }
    if (basis.corrector_enabled()) {
      basis.values_(j, count) = corrector_eval(*basis.corrector_nu_, x);
      basis.derivs_(j, count) = corrector_derivative(*basis.corrector_nu_, x);
    }
  }

  const Eigen::Map<const Eigen::VectorXd> w(basis.weights_.data(), m);
  const auto phi = basis.values_.leftCols(count);
  const auto dphi = basis.derivs_.leftCols(count);
  basis.mass_ = Eigen::MatrixXd::Zero(size, size);
  basis.stiffness_ = Eigen::MatrixXd::Zero(size, size);
  basis.convection_ = Eigen::MatrixXd::Zero(size, size);
  basis.mass_.topLeftCorner(count, count) = phi.transpose() * w.asDiagonal() * phi;
  basis.stiffness_.topLeftCorner(count, count) = dphi.transpose() * w.asDiagonal() * dphi;
  basis.convection_.topLeftCorner(count, count) = phi.transpose() * w.asDiagonal() * dphi;

  if (basis.corrector_enabled()) {
    const double nu = *basis.corrector_nu_;
    const QuadratureRule fine = graded_rule(nu, std::max(24, count + 12));
    const std::size_t q = fine.size();
    Eigen::MatrixXd fv(q, size);
    Eigen::MatrixXd fd(q, size);
    for (std::size_t k = 0; k < q; ++k) {
      const double x = fine.nodes[k];
      for (int n = 0; n < count; ++n) {
        const auto [v, d] = phi_with_derivative(n, x);
        fv(k, n) = v;
        fd(k, n) = d;
      }
      fv(k, count) = corrector_eval(nu, x);
      fd(k, count) = corrector_derivative(nu, x);
    }
    const Eigen::Map<const Eigen::VectorXd> fw(fine.weights.data(), q);
    const Eigen::MatrixXd mass = fv.transpose() * fw.asDiagonal() * fv;
    const Eigen::MatrixXd stiff = fd.transpose() * fw.asDiagonal() * fd;
    const Eigen::MatrixXd conv = fv.transpose() * fw.asDiagonal() * fd;
    basis.mass_.row(count) = mass.row(count);
    basis.mass_.col(count) = mass.col(count);
    basis.stiffness_.row(count) = stiff.row(count);
    basis.stiffness_.col(count) = stiff.col(count);
    basis.convection_.row(count) = conv.row(count);
    basis.convection_.col(count) = conv.col(count);
  }
  return basis;
}

}  // namespace sclon::spectral
