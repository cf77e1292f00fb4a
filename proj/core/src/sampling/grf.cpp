#include "sclon/sampling/grf.hpp"

#include <cmath>

#include "sclon/error.hpp"
#include "sclon/sampling/rng.hpp"
#include "sclon/spectral/fourier.hpp"

namespace sclon::sampling {

void GrfSpec::validate() const {
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidConfig, "GRF: sigma must be positive");
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidConfig, "GRF: tau must be non-negative");
  if (dims != 1 && dims != 2) fail(ErrorCode::InvalidConfig, "GRF: dims must be 1 or 2");
  if (!(gamma > 0.5 * dims)) fail(ErrorCode::InvalidConfig, "GRF: gamma must exceed dims/2");
  if (n < 2 || n % 2 != 0) fail(ErrorCode::InvalidConfig, "GRF: N must be even and >= 2");
  if (!periodic) fail(ErrorCode::InvalidConfig, "GRF: only periodic fields are supported");
}

std::vector<std::complex<double>> grf_modes(const GrfSpec& spec, std::uint64_t index) {
  spec.validate();
  const spectral::FourierGrid grid(spec.n, spec.dims);
  const auto k2 = grid.k_squared();
  std::vector<std::complex<double>> c(grid.size());
  for (std::size_t k = 1; k < c.size(); ++k) {
    const auto partner = grid.conjugate_index(k);
    if (partner < k) continue;
    const double scale = spec.sigma * std::pow(k2[k] + spec.tau * spec.tau, -0.5 * spec.gamma);
    KeyedStream rng(spec.seed, {index, k});
    if (partner == k) {
      c[k] = scale * rng.normal();
    } else {
      const double re = rng.normal();
      const double im = rng.normal();
      c[k] = scale * std::complex<double>(re, im) / std::sqrt(2.0);
      c[partner] = std::conj(c[k]);
    }
  }
  return c;
}

std::vector<double> grf_synthesize(const GrfSpec& spec, const std::vector<std::complex<double>>& modes) {
  const spectral::FourierGrid grid(spec.n, spec.dims);
  const auto field = spectral::idft(grid, modes);
  std::vector<double> out(field.size());
  double peak = 0.0;
  double residue = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    out[i] = field[i].real();
    peak = std::max(peak, std::abs(field[i].real()));
    residue = std::max(residue, std::abs(field[i].imag()));
  }
  if (residue > 1e-13 * std::max(1.0, peak))
    fail(ErrorCode::NumericalFailure, "GRF synthesis: imaginary residue above 1e-13");
  return out;
}

}  // namespace sclon::sampling
