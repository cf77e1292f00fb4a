#include "sclon/spectral/corrector.hpp"

#include <cmath>

#include "sclon/error.hpp"

namespace sclon::spectral {

double corrector_eval(double nu, double x) {
  require(nu > 0.0, "corrector: nu must be positive");
  require(std::abs(x) <= 1.0, "corrector: x outside [-1, 1]");
  const double layer = std::exp(-(1.0 + x) / nu);
  const double tail = std::exp(-2.0 / nu);
  return layer - (1.0 - 0.5 * (1.0 - tail) * (x + 1.0));
}

double corrector_derivative(double nu, double x) {
  require(nu > 0.0, "corrector: nu must be positive");
  require(std::abs(x) <= 1.0, "corrector: x outside [-1, 1]");
  const double layer = std::exp(-(1.0 + x) / nu);
  const double tail = std::exp(-2.0 / nu);
  return -layer / nu + 0.5 * (1.0 - tail);
}

}  // namespace sclon::spectral
