#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sclon::sampling {

/// Law N(0, sigma^2 (-Laplacian + tau^2 I)^-gamma) on the periodic box.
struct GrfSpec {
  double sigma = 25.0;
  double tau = 5.0;
  double gamma = 2.0;
  int dims = 1;
  int n = 32;
  bool periodic = true;
  std::uint64_t seed = 0;

  /// Throws ErrorCode::InvalidConfig unless sigma > 0, tau >= 0,
  /// gamma > dims/2 and the grid is even.
  void validate() const;
};

/// Spectral coefficients c_xi of sample `index` in FourierGrid storage order;
/// the field is idft(c), so dft of the field returns c. Pairs get
/// sigma (|xi|^2 + tau^2)^(-gamma/2) (a + ib)/sqrt(2) with standard normals a,
/// b; self-conjugate modes get a real normal; the mean mode is zero.
std::vector<std::complex<double>> grf_modes(const GrfSpec& spec, std::uint64_t index);

/// Real grid values of the field with the given modes.
std::vector<double> grf_synthesize(const GrfSpec& spec, const std::vector<std::complex<double>>& modes);

}  // namespace sclon::sampling
