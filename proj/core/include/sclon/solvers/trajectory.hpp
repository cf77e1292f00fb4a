#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace sclon::solvers {

enum class Representation { Legendre, LegendreEnriched, Fourier1D, Fourier2D };

/// Coefficient snapshots alpha^0 .. alpha^K. Legendre snapshots hold N (or
/// N + 1) real coefficients; Fourier snapshots hold the full spectrum in
/// FourierGrid storage order, interleaved as (re, im).
struct Trajectory {
  Representation rep = Representation::Legendre;
  int n = 0;
  std::vector<std::vector<double>> snapshots;
  std::vector<std::string> warnings;

  /// Doubles per snapshot implied by rep and n.
  std::size_t width() const;
  /// Throws ContractViolation unless every snapshot has width() entries.
  void check_shape() const;
};

std::size_t representation_width(Representation rep, int n);

std::vector<std::complex<double>> to_complex(std::span<const double> interleaved);
std::vector<double> to_interleaved(std::span<const std::complex<double>> values);

}  // namespace sclon::solvers
