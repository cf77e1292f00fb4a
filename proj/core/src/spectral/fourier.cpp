#include "sclon/spectral/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "sclon/error.hpp"

namespace sclon::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (n, dims, sign) under a lock and reused.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int dims, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, dims, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = dims == 1 ? n : static_cast<std::size_t>(n) * n;
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dims == 1 ? fftw_plan_dft_1d(n, in, out, sign, flags)
                               : fftw_plan_dft_2d(n, n, in, out, sign, flags);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) fail(ErrorCode::NumericalFailure, "FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const FourierGrid& grid, int sign, const Complex* in, Complex* out) {
  fftw_plan plan = PlanCache::instance().get(grid.n(), grid.dims(), sign);
  // std::complex<double> is layout-compatible with fftw_complex.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

FourierGrid::FourierGrid(int n, int dims) : n_(n), dims_(dims) {
  require(n >= 2 && n % 2 == 0, "FourierGrid: N must be even and >= 2");
  require(dims == 1 || dims == 2, "FourierGrid: dims must be 1 or 2");
}

std::size_t FourierGrid::size() const {
  return dims_ == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * n_;
}

double FourierGrid::spacing() const { return kTwoPi / n_; }

double FourierGrid::node(int i) const { return i * spacing(); }

int FourierGrid::wavenumber(int index) const { return index <= n_ / 2 ? index : index - n_; }

int FourierGrid::index_of(int xi) const {
  require(xi > -n_ / 2 && xi <= n_ / 2, "FourierGrid::index_of: wavenumber out of range");
  return xi >= 0 ? xi : xi + n_;
}

std::vector<double> FourierGrid::xi_x() const {
  std::vector<double> out(size());
  if (dims_ == 1) {
    for (int i = 0; i < n_; ++i) out[i] = wavenumber(i);
  } else {
    for (int ix = 0; ix < n_; ++ix)
      for (int iy = 0; iy < n_; ++iy) out[ix * n_ + iy] = wavenumber(ix);
  }
  return out;
}

std::vector<double> FourierGrid::xi_y() const {
  std::vector<double> out(size(), 0.0);
  if (dims_ == 2) {
    for (int ix = 0; ix < n_; ++ix)
      for (int iy = 0; iy < n_; ++iy) out[ix * n_ + iy] = wavenumber(iy);
  }
  return out;
}

std::vector<double> FourierGrid::k_squared() const {
  auto kx = xi_x();
  const auto ky = xi_y();
  for (std::size_t i = 0; i < kx.size(); ++i) kx[i] = kx[i] * kx[i] + ky[i] * ky[i];
  return kx;
}

std::size_t FourierGrid::conjugate_index(std::size_t flat) const {
  const auto neg = [this](int i) { return (n_ - i) % n_; };
  if (dims_ == 1) return static_cast<std::size_t>(neg(static_cast<int>(flat)));
  const int ix = static_cast<int>(flat) / n_;
  const int iy = static_cast<int>(flat) % n_;
  return static_cast<std::size_t>(neg(ix) * n_ + neg(iy));
}

double CoeffSpectrum::hermitian_defect() const {
  const FourierGrid grid(n, dims);
  double worst = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto partner = grid.conjugate_index(k);
    worst = std::max(worst, std::abs(values[partner] - std::conj(values[k])));
  }
  return worst;
}

void CoeffSpectrum::symmetrize() {
  const FourierGrid grid(n, dims);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto partner = grid.conjugate_index(k);
    if (partner < k) continue;
    if (partner == k) {
      values[k] = Complex(values[k].real(), 0.0);
    } else {
      const Complex avg = 0.5 * (values[k] + std::conj(values[partner]));
      values[k] = avg;
      values[partner] = std::conj(avg);
    }
  }
  real_field = true;
}

void dft_into(const FourierGrid& grid, std::span<const double> values, std::span<Complex> out) {
  require(values.size() == grid.size() && out.size() == grid.size(), "dft: length mismatch with grid");
  std::vector<Complex> in(values.begin(), values.end());
  execute(grid, FFTW_FORWARD, in.data(), out.data());
  const double scale = std::pow(grid.spacing(), grid.dims());
  for (auto& c : out) c *= scale;
}

CoeffSpectrum dft(const FourierGrid& grid, std::span<const double> values) {
  CoeffSpectrum spec;
  spec.n = grid.n();
  spec.dims = grid.dims();
  spec.values.resize(grid.size());
  dft_into(grid, values, spec.values);
  spec.symmetrize();
  return spec;
}

std::vector<Complex> dft_complex(const FourierGrid& grid, std::span<const Complex> values) {
  require(values.size() == grid.size(), "dft: length mismatch with grid");
  std::vector<Complex> out(grid.size());
  execute(grid, FFTW_FORWARD, values.data(), out.data());
  const double scale = std::pow(grid.spacing(), grid.dims());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<Complex> idft(const FourierGrid& grid, std::span<const Complex> coeffs) {
  require(coeffs.size() == grid.size(), "idft: length mismatch with grid");
  std::vector<Complex> out(grid.size());
  execute(grid, FFTW_BACKWARD, coeffs.data(), out.data());
  const double scale = std::pow(1.0 / kTwoPi, grid.dims());
  for (auto& c : out) c *= scale;
  return out;
}

void idft_real_into(const FourierGrid& grid, std::span<const Complex> coeffs, std::span<double> out) {
  require(coeffs.size() == grid.size() && out.size() == grid.size(), "idft: length mismatch with grid");
  std::vector<Complex> tmp(grid.size());
  execute(grid, FFTW_BACKWARD, coeffs.data(), tmp.data());
  const double scale = std::pow(1.0 / kTwoPi, grid.dims());
  for (std::size_t i = 0; i < tmp.size(); ++i) out[i] = tmp[i].real() * scale;
}

std::vector<double> idft_real(const FourierGrid& grid, std::span<const Complex> coeffs) {
  std::vector<double> out(grid.size());
  idft_real_into(grid, coeffs, out);
  return out;
}

}  // namespace sclon::spectral
