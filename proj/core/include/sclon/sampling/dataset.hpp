#pragma once

#include <cstdint>
#include <vector>

#include "sclon/sampling/grf.hpp"
#include "sclon/sampling/inputs.hpp"
#include "sclon/solvers/problem.hpp"

namespace sclon::sampling {

/// Everything needed to draw the inputs of one family.
struct SamplingSpec {
  /// Periodic law; ignored by the Legendre families.
  GrfSpec grf;
  /// Squared-exponential length scale of the diffusion-reaction forcing.
  double length_scale = 0.2;
  double amplitude = 25.0;
  std::uint64_t seed = 0;
};

/// GRF (sigma, tau, gamma) defaults: Burgers (25, 5, 2), advection (30, 8, 2),
/// KSE (4, 2, 5/2), NSE (9, 3, 5/2); grid size taken from the problem.
SamplingSpec default_sampling(const solvers::PdeProblem& problem, std::uint64_t seed = 0);

/// Sample `index` of the family's input law. Indices are global so that
/// training and test sets drawn from disjoint ranges never overlap.
InputSample generate_input(const solvers::PdeProblem& problem, const SamplingSpec& spec, std::uint64_t index);

std::vector<InputSample> generate_inputs(const solvers::PdeProblem& problem, const SamplingSpec& spec,
                                         std::uint64_t first, std::size_t count);

/// Training sets use indices [0, P); test sets start here.
inline constexpr std::uint64_t kTestIndexOffset = 100000;

inline std::vector<InputSample> training_inputs(const solvers::PdeProblem& problem, const SamplingSpec& spec,
                                                std::size_t count) {
  return generate_inputs(problem, spec, 0, count);
}
inline std::vector<InputSample> test_inputs(const solvers::PdeProblem& problem, const SamplingSpec& spec,
                                            std::size_t count) {
  return generate_inputs(problem, spec, kTestIndexOffset, count);
}

}  // namespace sclon::sampling
