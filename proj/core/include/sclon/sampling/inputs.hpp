#pragma once

#include <cstdint>
#include <vector>

#include "sclon/family.hpp"
#include "sclon/sampling/grf.hpp"
#include "sclon/spectral/basis.hpp"

namespace sclon::sampling {

enum class InputKind { Forcing, Coefficient, InitialCondition };

/// One drawn parameter function on the solver grid.
struct InputSample {
  InputKind kind = InputKind::Forcing;
  Family family = Family::DiffusionReaction;
  int n = 0;
  int dims = 1;
  /// Nodal values: Gauss-Lobatto nodes for Legendre families, N or N*N
  /// periodic nodes otherwise.
  std::vector<double> values;
  /// Sampler-specific raw draw: the unshifted field for advection
  /// coefficients, the uniform weights a_j for CDE initial data.
  std::vector<double> raw;
};

InputSample sample_grf_periodic(const GrfSpec& spec, std::uint64_t index,
                                InputKind kind = InputKind::InitialCondition,
                                Family family = Family::Burgers);

/// Mean-zero Gaussian process with covariance 25^2 exp(-(x-x')^2 / (2 l^2))
/// on the given nodes. Cholesky starts with 1e-10 diagonal jitter and
/// escalates by 10x; gives up with ErrorCode::NumericalFailure.
InputSample sample_forcing_dre(std::uint64_t seed, const std::vector<double>& nodes,
                               std::uint64_t index, double length_scale = 0.2,
                               double amplitude = 25.0);

/// a = a~ - min a~ + 1 so that min over the grid is exactly 1.
InputSample sample_advection_coefficient(const GrfSpec& spec, std::uint64_t index);
InputSample shift_to_unit_minimum(std::vector<double> raw, int n);

/// u0 = (1-x)^4 (1+x) sum_{j<4} a_j phi_j(x) with a_j ~ U[0,1).
InputSample sample_cde_initial(std::uint64_t seed, const spectral::LegendreBasis& basis,
                               std::uint64_t index);
InputSample cde_initial_from_weights(const spectral::LegendreBasis& basis,
                                     const std::vector<double>& weights);

}  // namespace sclon::sampling
