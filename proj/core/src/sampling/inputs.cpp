#include "sclon/sampling/inputs.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "sclon/error.hpp"
#include "sclon/sampling/rng.hpp"

namespace sclon::sampling {

InputSample sample_grf_periodic(const GrfSpec& spec, std::uint64_t index, InputKind kind, Family family) {
  InputSample s;
  s.kind = kind;
  s.family = family;
  s.n = spec.n;
  s.dims = spec.dims;
  s.values = grf_synthesize(spec, grf_modes(spec, index));
  return s;
}

InputSample sample_forcing_dre(std::uint64_t seed, const std::vector<double>& nodes, std::uint64_t index,
                               double length_scale, double amplitude) {
  require(nodes.size() >= 2, "sample_forcing_dre: need at least two nodes");
  require(length_scale > 0.0, "sample_forcing_dre: length scale must be positive");
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = nodes[i] - nodes[j];
      cov(i, j) = amplitude * amplitude * std::exp(-d * d / (2.0 * length_scale * length_scale));
    }

  Eigen::LLT<Eigen::MatrixXd> llt;
  bool ok = false;
  for (double jitter = 1e-10; jitter <= 1e-2 && !ok; jitter *= 10.0) {
    llt.compute(cov + jitter * amplitude * amplitude * Eigen::MatrixXd::Identity(m, m));
    ok = llt.info() == Eigen::Success;
  }
  if (!ok) fail(ErrorCode::NumericalFailure, "sample_forcing_dre: Cholesky failed after jitter escalation");

  KeyedStream rng(seed, {index, 0xd7e});
  Eigen::VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = rng.normal();
  const Eigen::VectorXd f = llt.matrixL() * z;

  InputSample s;
  s.kind = InputKind::Forcing;
  s.family = Family::DiffusionReaction;
  s.n = static_cast<int>(m) - 2;
  s.values.assign(f.data(), f.data() + m);
  return s;
}

InputSample shift_to_unit_minimum(std::vector<double> raw, int n) {
  require(!raw.empty(), "shift_to_unit_minimum: empty field");
  const double lo = *std::min_element(raw.begin(), raw.end());
  InputSample s;
  s.kind = InputKind::Coefficient;
  s.family = Family::Advection;
  s.n = n;
  s.values.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) s.values[i] = raw[i] - lo + 1.0;
  s.raw = std::move(raw);
  return s;
}

InputSample sample_advection_coefficient(const GrfSpec& spec, std::uint64_t index) {
  require(spec.dims == 1, "sample_advection_coefficient: 1D only");
  return shift_to_unit_minimum(grf_synthesize(spec, grf_modes(spec, index)), spec.n);
}

InputSample cde_initial_from_weights(const spectral::LegendreBasis& basis, const std::vector<double>& weights) {
  require(weights.size() == 4, "cde_initial: expects four weights");
  require(basis.poly_count() >= 4, "cde_initial: basis needs at least four functions");
  InputSample s;
  s.kind = InputKind::InitialCondition;
  s.family = Family::ConvectionDiffusionBL;
  s.n = basis.poly_count();
  s.raw = weights;
  const auto& x = basis.nodes();
  const auto& phi = basis.values();
  s.values.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) sum += weights[j] * phi(static_cast<Eigen::Index>(i), j);
    s.values[i] = std::pow(1.0 - x[i], 4) * (1.0 + x[i]) * sum;
  }
  return s;
}

InputSample sample_cde_initial(std::uint64_t seed, const spectral::LegendreBasis& basis, std::uint64_t index) {
  KeyedStream rng(seed, {index, 0xcde});
  std::vector<double> a(4);
  for (auto& v : a) v = rng.uniform();
  return cde_initial_from_weights(basis, a);
}

}  // namespace sclon::sampling
