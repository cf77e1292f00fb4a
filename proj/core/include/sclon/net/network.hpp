#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sclon/net/hermitian.hpp"
#include "sclon/net/layers.hpp"
#include "sclon/sampling/inputs.hpp"
#include "sclon/solvers/problem.hpp"
#include "sclon/solvers/trajectory.hpp"

namespace sclon::net {

/// How the last layer's output becomes R coefficient snapshots.
enum class OutputMap {
  /// R x D free coefficients: Legendre coefficients, or Hermitian free modes
  /// expanded to a full spectrum.
  Coefficients,
  /// R x G nodal values: transformed by the DFT (Fourier) or the discrete L2
  /// projection (Legendre, polynomial part only).
  Nodal,
};

struct NetworkSpec {
  std::vector<LayerSpec> layers;
  OutputMap output = OutputMap::Coefficients;
  /// Inputs are multiplied by input_scale, raw outputs by output_scale.
  double input_scale = 1.0;
  double output_scale = 1.0;
  /// When set, the R raw blocks are increments: step r is the sum of blocks
  /// 0..r. A fixed linear map, applied before the output map.
  bool cumulative = false;
  /// When set, every predicted state is the segment anchor (the frozen last
  /// state of the previous segment) plus the mapped output.
  bool anchored = false;
  /// When set, the anchor's nodal values, times anchor_scale, enter as a
  /// second input channel.
  bool anchor_input = false;
  double anchor_scale = 1.0;
};

/// Offsets of one layer inside the flat parameter vector.
struct LayerLayout {
  LayerSpec spec;
  std::size_t offset = 0;
  std::size_t count = 0;
  int in_channels = 0;
  int in_features = 0;
  std::optional<ConvGeometry> conv;
};

/// G_q: input function values -> coefficient snapshots for R steps.
class Network {
 public:
  Network(NetworkSpec spec, const solvers::PdeProblem& problem);

  const NetworkSpec& spec() const { return spec_; }
  const std::vector<LayerLayout>& layout() const { return layout_; }
  std::size_t parameter_count() const { return parameter_count_; }
  int steps() const { return steps_; }
  /// Grid points of one input sample.
  int input_points() const { return input_points_; }
  /// Doubles per predicted state (full interleaved spectrum for Fourier).
  std::size_t state_width() const { return state_width_; }
  solvers::Representation representation() const { return rep_; }

  /// Fan-in Gaussian weights (std sqrt(1/fan_in)) and zero biases, drawn from
  /// a keyed stream so the result depends only on the seed.
  std::vector<double> init(std::uint64_t seed) const;

  /// Records the forward pass; returns the R predicted states. `anchor` is
  /// required by anchored networks and ignored otherwise.
  std::vector<Var> forward(Tape& tape, Var params, const sampling::InputSample& input,
                           std::span<const double> anchor = {}) const;
  /// Raw last-layer output before the output map, for inspection.
  Var raw_forward(Tape& tape, Var params, const sampling::InputSample& input,
                  std::span<const double> anchor = {}) const;
  /// Whether forward() needs the segment anchor.
  bool needs_anchor() const { return spec_.anchored || spec_.anchor_input; }

  std::vector<std::vector<double>> predict(std::span<const double> params, const sampling::InputSample& input,
                                           std::span<const double> anchor = {}) const;

 private:
  NetworkSpec spec_;
  std::vector<LayerLayout> layout_;
  std::size_t parameter_count_ = 0;
  int steps_ = 0;
  int input_points_ = 0;
  int spatial_n_ = 0;
  std::size_t state_width_ = 0;
  std::size_t free_width_ = 0;
  solvers::Representation rep_ = solvers::Representation::Legendre;
  std::optional<spectral::FourierGrid> grid_;
  std::optional<HermitianLayout> hermitian_;
  /// Nodal -> coefficient projection (Legendre, Nodal output).
  Eigen::MatrixXd projection_;
  /// Coefficient -> nodal values (Legendre, anchor input).
  Eigen::MatrixXd evaluation_;
};

/// Default architecture per family: conv layers of
/// `width` channels (kernel 5, circular padding when periodic, zero padding
/// otherwise), Swish, then a dense identity head to R x D.
NetworkSpec default_network(const solvers::PdeProblem& problem);

}  // namespace sclon::net
