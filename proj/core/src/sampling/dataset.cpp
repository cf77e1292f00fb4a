#include "sclon/sampling/dataset.hpp"

#include "sclon/error.hpp"
#include "sclon/spectral/basis.hpp"

namespace sclon::sampling {

SamplingSpec default_sampling(const solvers::PdeProblem& problem, std::uint64_t seed) {
  SamplingSpec s;
  s.seed = seed;
  s.grf.seed = seed;
  s.grf.n = problem.n;
  s.grf.dims = is_2d(problem.family) ? 2 : 1;
  switch (problem.family) {
    case Family::Burgers: s.grf.sigma = 25; s.grf.tau = 5; s.grf.gamma = 2; break;
    case Family::Advection: s.grf.sigma = 30; s.grf.tau = 8; s.grf.gamma = 2; break;
    case Family::KSE2D: s.grf.sigma = 4; s.grf.tau = 2; s.grf.gamma = 2.5; break;
    case Family::NSE2D: s.grf.sigma = 9; s.grf.tau = 3; s.grf.gamma = 2.5; break;
    case Family::DiffusionReaction:
      s.length_scale = problem.forcing_length_scale;
      s.grf.periodic = false;
      break;
    case Family::ConvectionDiffusionBL: s.grf.periodic = false; break;
  }
  return s;
}

InputSample generate_input(const solvers::PdeProblem& problem, const SamplingSpec& spec, std::uint64_t index) {
  switch (problem.family) {
    case Family::DiffusionReaction: {
      const auto basis = spectral::dirichlet_basis(problem.n, {problem.node_count, std::nullopt});
      return sample_forcing_dre(spec.seed, basis.nodes(), index, spec.length_scale, spec.amplitude);
    }
    case Family::ConvectionDiffusionBL: {
      std::optional<double> nu;
      if (problem.corrector) nu = problem.nu;
      const auto basis = spectral::dirichlet_basis(problem.n, {problem.node_count, nu});
      return sample_cde_initial(spec.seed, basis, index);
    }
    case Family::Advection: return sample_advection_coefficient(spec.grf, index);
    case Family::Burgers:
    case Family::KSE2D:
    case Family::NSE2D: return sample_grf_periodic(spec.grf, index, InputKind::InitialCondition, problem.family);
  }
  fail(ErrorCode::ContractViolation, "generate_input: unknown family");
}

std::vector<InputSample> generate_inputs(const solvers::PdeProblem& problem, const SamplingSpec& spec,
                                         std::uint64_t first, std::size_t count) {
  if (spec.grf.periodic) spec.grf.validate();
  require(spec.grf.n == problem.n || !spec.grf.periodic, "generate_inputs: sampling grid differs from problem grid");
  std::vector<InputSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate_input(problem, spec, first + i));
  return out;
}

}  // namespace sclon::sampling
