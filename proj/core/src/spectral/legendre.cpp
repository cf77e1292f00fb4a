#include "sclon/spectral/legendre.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sclon/error.hpp"

namespace sclon::spectral {

namespace {

constexpr int kMaxNewton = 100;
constexpr double kNewtonTol = 1e-15;

}  // namespace

double legendre(int n, double x) {
  require(n >= 0, "legendre: degree must be non-negative");
  if (x == 1.0) return 1.0;
  if (x == -1.0) return (n % 2 == 0) ? 1.0 : -1.0;
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::pair<double, double> legendre_with_derivative(int n, double x) {
  require(n >= 0, "legendre: degree must be non-negative");
  if (n == 0) return {1.0, 0.0};
  // Values L_{k-1}, L_k and derivatives L'_{k-1}, L'_k.
  double lm1 = 1.0, l = x;
  double dm1 = 0.0, d = 1.0;
  for (int k = 1; k < n; ++k) {
    const double lnext = ((2.0 * k + 1.0) * x * l - k * lm1) / (k + 1.0);
    const double dnext = dm1 + (2.0 * k + 1.0) * l;
    lm1 = l;
    l = lnext;
    dm1 = d;
    d = dnext;
  }
  if (x == 1.0) l = 1.0;
  if (x == -1.0) l = (n % 2 == 0) ? 1.0 : -1.0;
  return {l, d};
}

QuadratureRule gauss_lobatto(int point_count) {
  require(point_count >= 2, "gauss_lobatto: need at least 2 points");
  const int m = point_count;
  const int deg = m - 1;  // interior nodes are roots of L'_deg
  QuadratureRule rule;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;

  for (int j = 1; j < m - 1; ++j) {
    double x = -std::cos(std::numbers::pi * j / deg);
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [l, dl] = legendre_with_derivative(deg, x);
      // (1 - x^2) L'' = 2x L' - n(n+1) L
      const double d2 = (2.0 * x * dl - deg * (deg + 1.0) * l) / (1.0 - x * x);
      const double step = dl / d2;
      x -= step;
      if (std::abs(step) <= kNewtonTol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      fail(ErrorCode::NumericalFailure,
           "gauss_lobatto: Newton did not converge for node " + std::to_string(j) +
               " of " + std::to_string(m));
    }
    rule.nodes[j] = x;
  }
  // Symmetrize to remove round-off asymmetry.
  for (int j = 0; j < m / 2; ++j) {
    const double a = 0.5 * (rule.nodes[m - 1 - j] - rule.nodes[j]);
    rule.nodes[j] = -a;
    rule.nodes[m - 1 - j] = a;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;

  const double scale = 2.0 / (static_cast<double>(m) * deg);
  for (int j = 0; j < m; ++j) {
    const double l = legendre(deg, rule.nodes[j]);
    rule.weights[j] = scale / (l * l);
  }
  return rule;
}

QuadratureRule gauss_legendre(int point_count) {
  require(point_count >= 1, "gauss_legendre: need at least 1 point");
  const int n = point_count;
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int j = 0; j < (n + 1) / 2; ++j) {
    double x = std::cos(std::numbers::pi * (j + 0.75) / (n + 0.5));
    bool converged = false;
    double dl = 0.0;
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [l, d] = legendre_with_derivative(n, x);
      const double step = l / d;
      x -= step;
      dl = d;
      if (std::abs(step) <= kNewtonTol) {
        converged = true;
        dl = legendre_with_derivative(n, x).second;
        break;
      }
    }
    if (!converged) {
      fail(ErrorCode::NumericalFailure, "gauss_legendre: Newton did not converge");
    }
    const double w = 2.0 / ((1.0 - x * x) * dl * dl);
    rule.nodes[j] = -x;
    rule.nodes[n - 1 - j] = x;
    rule.weights[j] = w;
    rule.weights[n - 1 - j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace sclon::spectral
