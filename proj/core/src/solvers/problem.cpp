#include "sclon/solvers/problem.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sclon/error.hpp"

namespace sclon {

namespace {
constexpr std::array<std::string_view, 6> kNames = {
    "diffusion_reaction", "burgers", "advection", "convection_diffusion_bl", "kse2d", "nse2d"};
}

std::string_view family_name(Family family) noexcept { return kNames[static_cast<int>(family)]; }

Family family_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<Family>(i);
  fail(ErrorCode::InvalidConfig, "unknown family '" + std::string(name) + "'");
}

}  // namespace sclon

namespace sclon::solvers {

PdeProblem PdeProblem::defaults(Family family) {
  PdeProblem p;
  p.family = family;
  switch (family) {
    case Family::DiffusionReaction:
      p.nu = 0.01;
      p.mu = -0.01;
      p.n = 50;
      break;
    case Family::Burgers:
      p.nu = 0.5;
      p.mu = 5.0;
      p.n = 32;
      break;
    case Family::Advection:
      p.nu = 0.0;
      p.mu = 0.0;
      p.n = 32;
      break;
    case Family::ConvectionDiffusionBL:
      p.nu = 1e-6;
      p.mu = 1.0;
      p.n = 32;
      break;
    case Family::KSE2D:
      p.nu = 0.0;
      p.mu = 0.0;
      p.n = 30;
      p.t_final = 0.5;
      p.steps_per_segment = 5;
      break;
    case Family::NSE2D:
      p.nu = 0.0;
      p.mu = 0.0;
      p.re = 200.0;
      p.n = 32;
      p.t_final = 0.5;
      p.steps_per_segment = 5;
      break;
  }
  return p;
}

void PdeProblem::validate() const {
  const auto bad = [](const std::string& msg) { fail(ErrorCode::InvalidConfig, msg); };
  if (!(dt > 0.0)) bad("dt must be positive");
  if (segments < 1 || steps_per_segment < 1) bad("segments and steps_per_segment must be >= 1");
  const double horizon = dt * segments * steps_per_segment;
  if (std::abs(horizon - t_final) > 1e-12 * std::max(1.0, t_final))
    bad("T must equal dt * Q * R (got T=" + std::to_string(t_final) + ", dt*Q*R=" + std::to_string(horizon) + ")");
  if (is_legendre(family)) {
    if (n < 1) bad("N must be >= 1");
    if (node_count != 0 && node_count < n + 1) bad("node_count must be 0 or >= N + 1");
  } else if (n < 2 || n % 2 != 0) {
    bad("Fourier families need an even N >= 2");
  }
  switch (family) {
    case Family::DiffusionReaction:
    case Family::Burgers:
      if (!(nu > 0.0)) bad("nu must be positive");
      break;
    case Family::ConvectionDiffusionBL:
      if (!(nu > 0.0)) bad("nu must be positive");
      if (n < 4) bad("CDE initial data needs N >= 4");
      break;
    case Family::NSE2D:
      if (!(re > 0.0)) bad("Re must be positive for NSE2D");
      break;
    default:
      break;
  }
  if (family != Family::NSE2D && re != 0.0) bad("Re applies to NSE2D only");
  if (!(forcing_length_scale > 0.0)) bad("forcing_length_scale must be positive");
}

}  // namespace sclon::solvers
