#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace sclon::spectral {

struct BasisOptions {
  /// Gauss-Lobatto node count; 0 selects N + 2.
  int node_count = 0;
  /// When set, the boundary-layer corrector with this diffusivity is appended
  /// as basis function N.
  std::optional<double> corrector_nu;
};

/// Dirichlet Legendre basis phi_n = L_n - L_{n+2}, n = 0..N-1, tabulated on a
/// Gauss-Lobatto grid, optionally enriched with the boundary-layer corrector.
///
/// Gram matrices follow the test-row convention: entry (i, j) pairs test
/// function i with trial function j. Polynomial-polynomial entries use the
/// Gauss-Lobatto rule of the grid. Entries involving the corrector are
/// integrated with a composite Gauss-Legendre rule graded toward x = -1, since
/// the corrector's layer of width nu is invisible to the collocation grid.
class LegendreBasis {
 public:
  int poly_count() const { return poly_count_; }
  /// Number of coefficients: N, or N + 1 with the corrector.
  int size() const { return poly_count_ + (corrector_nu_ ? 1 : 0); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  bool corrector_enabled() const { return corrector_nu_.has_value(); }
  double nu() const { return corrector_nu_.value_or(0.0); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// node_count x size tables of basis values and x-derivatives.
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::MatrixXd& derivs() const { return derivs_; }

  const Eigen::MatrixXd& mass() const { return mass_; }
  const Eigen::MatrixXd& stiffness() const { return stiffness_; }
  /// (i, j) = integral of phi_j' phi_i.
  const Eigen::MatrixXd& convection() const { return convection_; }

  /// Nodal values of sum_n coeffs[n] phi_n.
  Eigen::VectorXd reconstruct(std::span<const double> coeffs) const;

  /// Discrete L2 projection of nodal data onto the polynomial part. Exact for
  /// data that is a polynomial of degree <= N+1 vanishing at +-1. The corrector
  /// coefficient, if any, is zero.
  Eigen::VectorXd project_nodal(std::span<const double> nodal_values) const;

  /// phi_n(x) at an arbitrary point; n == poly_count() is the corrector.
  double eval(int n, double x) const;

 private:
  friend LegendreBasis dirichlet_basis(int, BasisOptions);

  int poly_count_ = 0;
  std::optional<double> corrector_nu_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd derivs_;
  Eigen::MatrixXd mass_;
  Eigen::MatrixXd stiffness_;
  Eigen::MatrixXd convection_;
};

LegendreBasis dirichlet_basis(int count, BasisOptions options = {});

}  // namespace sclon::spectral
