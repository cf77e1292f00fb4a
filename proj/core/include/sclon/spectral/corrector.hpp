#pragma once

namespace sclon::spectral {

/// Boundary-layer corrector for -nu u_xx - u_x at the outflow x = -1:
///   exp(-(1+x)/nu) - (1 - (1 - exp(-2/nu))/2 * (x+1)).
/// Vanishes at both endpoints. For small nu the exponential underflows to an
/// exact 0 away from x = -1.
double corrector_eval(double nu, double x);

/// d/dx of corrector_eval.
double corrector_derivative(double nu, double x);

}  // namespace sclon::spectral
