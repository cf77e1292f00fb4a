#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sclon::spectral {

using Complex = std::complex<double>;

/// Uniform periodic grid on [0, 2pi)^dims with N points per dimension.
///
/// Spectral storage order per dimension is {0, 1, ..., N/2, -N/2+1, ..., -1}.
/// 2D data is row-major with the x index outermost: entry (ix, iy) lives at
/// ix * N + iy, for grid values and spectra alike.
class FourierGrid {
 public:
  FourierGrid(int n, int dims);

  int n() const { return n_; }
  int dims() const { return dims_; }
  /// Total number of grid points (N or N^2).
  std::size_t size() const;
  double spacing() const;
  double node(int i) const;

  /// Wavenumber stored at per-dimension index i.
  int wavenumber(int index) const;
  /// Per-dimension storage index of wavenumber xi in (-N/2, N/2].
  int index_of(int xi) const;

  /// Wavenumbers of every stored mode along x (and y in 2D), flattened in
  /// storage order.
  std::vector<double> xi_x() const;
  std::vector<double> xi_y() const;
  /// |k|^2 per stored mode.
  std::vector<double> k_squared() const;

  /// Storage index of the conjugate partner of mode `flat`: the mode with
  /// wavenumber -xi, where -N/2 aliases to N/2.
  std::size_t conjugate_index(std::size_t flat) const;

  bool operator==(const FourierGrid&) const = default;

 private:
  int n_;
  int dims_;
};

/// Complex coefficients alpha_xi indexed by storage order of a FourierGrid.
struct CoeffSpectrum {
  std::vector<Complex> values;
  int n = 0;
  int dims = 1;
  /// Asserts alpha_{-xi} == conj(alpha_xi) for the whole array.
  bool real_field = false;

  /// Largest |alpha_{-xi} - conj(alpha_xi)| over all modes.
  double hermitian_defect() const;
  /// Averages each conjugate pair so the array is exactly Hermitian and sets
  /// real_field.
  void symmetrize();
};

/// F_xi(u) = h^d sum_n exp(-i xi . x_n) u(x_n).
CoeffSpectrum dft(const FourierGrid& grid, std::span<const double> values);
std::vector<Complex> dft_complex(const FourierGrid& grid, std::span<const Complex> values);

/// u(x_n) = (2pi)^-d sum_xi exp(i xi . x_n) alpha_xi.
std::vector<Complex> idft(const FourierGrid& grid, std::span<const Complex> coeffs);
/// Real part of idft. Odd-derivative Nyquist contributions are purely
/// imaginary on the grid and drop out here.
std::vector<double> idft_real(const FourierGrid& grid, std::span<const Complex> coeffs);

/// In-place variants writing into caller storage of grid.size() entries.
void dft_into(const FourierGrid& grid, std::span<const double> values, std::span<Complex> out);
void idft_real_into(const FourierGrid& grid, std::span<const Complex> coeffs, std::span<double> out);

}  // namespace sclon::spectral
