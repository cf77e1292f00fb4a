#pragma once

#include "sclon/family.hpp"

namespace sclon::solvers {

/// Physical parameters and discretization of one PDE family.
struct PdeProblem {
  Family family = Family::DiffusionReaction;
  double nu = 0.01;
  double mu = -0.01;
  /// Reynolds number; NSE2D only.
  double re = 0.0;
  /// Basis functions (Legendre) or modes per dimension (Fourier).
  int n = 50;
  double dt = 0.01;
  /// Final time; must equal dt * segments * steps_per_segment.
  double t_final = 1.0;
  int segments = 10;
  int steps_per_segment = 10;

  /// Gauss-Lobatto node count; 0 selects n + 2.
  int node_count = 0;
  /// CDE: enrich the basis with the boundary-layer corrector.
  bool corrector = true;
  /// 2D families: 2/3-rule truncation of nonlinear products.
  bool dealias = false;
  /// KSE: use the linear symbol -|k|^4 - |k|^2 instead of |k|^2 - |k|^4.
  bool kse_printed_symbol = false;
  /// NSE: Kolmogorov forcing -n cos(n y) with this n; 0 disables forcing.
  int kolmogorov_mode = 1;
  /// DRE forcing: squared-exponential length scale.
  double forcing_length_scale = 0.2;

  static PdeProblem defaults(Family family);

  int total_steps() const { return segments * steps_per_segment; }
  /// Throws ErrorCode::InvalidConfig on violated invariants.
  void validate() const;
};

}  // namespace sclon::solvers
