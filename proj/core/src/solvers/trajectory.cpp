#include "sclon/solvers/trajectory.hpp"

#include "sclon/error.hpp"

namespace sclon::solvers {

std::size_t representation_width(Representation rep, int n) {
  const auto nn = static_cast<std::size_t>(n);
  switch (rep) {
    case Representation::Legendre:
      return nn;
    case Representation::LegendreEnriched:
      return nn + 1;
    case Representation::Fourier1D:
      return 2 * nn;
    case Representation::Fourier2D:
      return 2 * nn * nn;
  }
  return 0;
}

std::size_t Trajectory::width() const { return representation_width(rep, n); }

void Trajectory::check_shape() const {
  const auto w = width();
  for (const auto& s : snapshots) require(s.size() == w, "trajectory snapshot width does not match representation");
}

std::vector<std::complex<double>> to_complex(std::span<const double> interleaved) {
  require(interleaved.size() % 2 == 0, "to_complex: odd length");
  std::vector<std::complex<double>> out(interleaved.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {interleaved[2 * k], interleaved[2 * k + 1]};
  return out;
}

std::vector<double> to_interleaved(std::span<const std::complex<double>> values) {
  std::vector<double> out(2 * values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out[2 * k] = values[k].real();
    out[2 * k + 1] = values[k].imag();
  }
  return out;
}

}  // namespace sclon::solvers
