#pragma once

#include <utility>
#include <vector>

namespace sclon::spectral {

/// L_n(x) by the three-term recurrence. Endpoint values are exact.
double legendre(int n, double x);

/// (L_n(x), L'_n(x)). The derivative uses L'_{k+1} = L'_{k-1} + (2k+1) L_k,
/// which stays finite at x = +-1.
std::pair<double, double> legendre_with_derivative(int n, double x);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// M-point Gauss-Lobatto rule on [-1, 1]: endpoints plus the roots of
/// L'_{M-1}. Exact for polynomials of degree <= 2M-3. Throws
/// ErrorCode::NumericalFailure when Newton does not converge.
QuadratureRule gauss_lobatto(int point_count);

/// n-point Gauss-Legendre rule on [-1, 1]; exact to degree 2n-1.
QuadratureRule gauss_legendre(int point_count);

}  // namespace sclon::spectral
