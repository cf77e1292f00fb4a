#include "sclon/net/network.hpp"

#include <cmath>

#include "sclon/error.hpp"
#include "sclon/net/ops.hpp"
#include "sclon/sampling/rng.hpp"
#include "sclon/spectral/basis.hpp"

namespace sclon::net {

Network::Network(NetworkSpec spec, const solvers::PdeProblem& problem) : spec_(std::move(spec)) {
  problem.validate();
  require(!spec_.layers.empty(), "network: no layers");
  steps_ = problem.steps_per_segment;
  const bool two_d = is_2d(problem.family);

  if (is_legendre(problem.family)) {
    spectral::BasisOptions opts;
    opts.node_count = problem.node_count;
    if (problem.family == Family::ConvectionDiffusionBL && problem.corrector) opts.corrector_nu = problem.nu;
    const auto basis = spectral::dirichlet_basis(problem.n, opts);
    rep_ = basis.corrector_enabled() ? solvers::Representation::LegendreEnriched : solvers::Representation::Legendre;
    input_points_ = basis.node_count();
    spatial_n_ = input_points_;
    state_width_ = static_cast<std::size_t>(basis.size());
    free_width_ = state_width_;
    evaluation_ = basis.values();
    if (spec_.output == OutputMap::Nodal) {
      require(!basis.corrector_enabled(), "network: nodal output cannot represent the corrector coefficient");
      projection_.resize(basis.size(), input_points_);
      std::vector<double> unit(input_points_, 0.0);
      for (int j = 0; j < input_points_; ++j) {
        unit[j] = 1.0;
        projection_.col(j) = basis.project_nodal(unit);
        unit[j] = 0.0;
      }
    }
  } else {
    grid_.emplace(problem.n, two_d ? 2 : 1);
    hermitian_.emplace(*grid_);
    rep_ = two_d ? solvers::Representation::Fourier2D : solvers::Representation::Fourier1D;
    input_points_ = static_cast<int>(grid_->size());
    spatial_n_ = problem.n;
    state_width_ = 2 * grid_->size();
    free_width_ = hermitian_->free_count();
  }

  int channels = spec_.anchor_input ? 2 : 1;
  int features = 0;  // > 0 once flattened by a dense layer
  std::size_t offset = 0;
  for (std::size_t li = 0; li < spec_.layers.size(); ++li) {
    const auto& ls = spec_.layers[li];
    require(ls.width >= 1, "network: layer width must be >= 1");
    LayerLayout lay;
    lay.spec = ls;
    lay.offset = offset;
    if (ls.kind == LayerKind::Dense) {
      lay.in_features = features > 0 ? features : channels * input_points_;
      lay.count = static_cast<std::size_t>(ls.width) * lay.in_features + ls.width;
      features = ls.width;
    } else {
      require(features == 0, "network: conv layer after a dense layer");
      require((ls.kind == LayerKind::Conv2dCircular) == two_d, "network: conv dimensionality does not match the problem");
      lay.in_channels = channels;
      lay.conv = make_conv_geometry(ls.kind, channels, ls.width, ls.kernel, spatial_n_, offset);
      lay.count = static_cast<std::size_t>(ls.width) * channels * lay.conv->taps + ls.width;
      channels = ls.width;
    }
    offset += lay.count;
    layout_.push_back(std::move(lay));
  }
  parameter_count_ = offset;
  require(spec_.layers.back().activation == Activation::Identity, "network: final layer must be identity");

  const std::size_t produced = features > 0 ? static_cast<std::size_t>(features)
                                            : static_cast<std::size_t>(channels) * input_points_;
  const std::size_t per_step = spec_.output == OutputMap::Nodal ? static_cast<std::size_t>(input_points_) : free_width_;
  require(produced == per_step * steps_, "network: final layer size must equal R x per-step output width");
}

std::vector<double> Network::init(std::uint64_t seed) const {
  std::vector<double> params(parameter_count_, 0.0);
  for (std::size_t li = 0; li < layout_.size(); ++li) {
    const auto& lay = layout_[li];
    const std::size_t fan_in = lay.conv ? static_cast<std::size_t>(lay.in_channels) * lay.conv->taps
                                        : static_cast<std::size_t>(lay.in_features);
    const std::size_t weights = lay.count - static_cast<std::size_t>(lay.spec.width);
    const double std = std::sqrt(1.0 / static_cast<double>(fan_in));
    sampling::KeyedStream rng(seed, {li});
    for (std::size_t i = 0; i < weights; ++i) params[lay.offset + i] = std * rng.normal();
  }
  return params;
}

Var Network::raw_forward(Tape& tape, Var params, const sampling::InputSample& input,
                         std::span<const double> anchor) const {
  require(static_cast<int>(input.values.size()) == input_points_, "network: input size does not match the grid");
  require(params.size() == parameter_count_, "network: parameter count mismatch");
  std::vector<double> x0(input.values);
  for (auto& v : x0) v *= spec_.input_scale;
  if (spec_.anchor_input) {
    require(anchor.size() == state_width_, "network: anchor input needs the segment anchor");
    std::vector<double> nodal;
    if (grid_) {
      nodal.resize(grid_->size());
      spectral::idft_real_into(*grid_, solvers::to_complex(anchor), nodal);
    } else {
      const Eigen::VectorXd u = evaluation_ * Eigen::Map<const Eigen::VectorXd>(anchor.data(), anchor.size());
      nodal.assign(u.data(), u.data() + u.size());
    }
    for (double v : nodal) x0.push_back(v * spec_.anchor_scale);
  }
  Var x = tape.constant(std::move(x0));
  for (const auto& lay : layout_) {
    x = lay.conv ? conv(x, params, *lay.conv) : dense(x, params, lay.offset, lay.spec.width, lay.in_features);
    if (lay.spec.activation == Activation::Swish) x = swish(x);
  }
  if (spec_.output_scale != 1.0) x = scale(x, spec_.output_scale);
  return x;
}

std::vector<Var> Network::forward(Tape& tape, Var params, const sampling::InputSample& input,
                                  std::span<const double> anchor) const {
  require(!spec_.anchored || anchor.size() == state_width_, "network: anchored output needs the segment anchor");
  const Var raw = raw_forward(tape, params, input, anchor);
  std::optional<Var> base;
  if (spec_.anchored) base = tape.constant({anchor.begin(), anchor.end()});
  const std::size_t width = spec_.output == OutputMap::Nodal ? static_cast<std::size_t>(input_points_) : free_width_;
  std::vector<Var> states;
  states.reserve(steps_);
  std::optional<Var> acc;
  for (int r = 0; r < steps_; ++r) {
    Var part = slice(raw, r * width, width);
    if (spec_.cumulative) {
      if (acc) part = add(*acc, part);
      acc = part;
    }
    Var state = grid_ ? (spec_.output == OutputMap::Nodal ? dft_real(*grid_, part) : hermitian_->expand(part))
                      : (spec_.output == OutputMap::Nodal ? apply_matrix(projection_, part) : part);
    if (base) state = add(*base, state);
    states.push_back(state);
  }
  return states;
}

std::vector<std::vector<double>> Network::predict(std::span<const double> params, const sampling::InputSample& input,
                                                  std::span<const double> anchor) const {
  Tape tape;
  const Var p = tape.constant({params.begin(), params.end()});
  std::vector<std::vector<double>> out;
  for (const Var& s : forward(tape, p, input, anchor)) out.emplace_back(s.value().begin(), s.value().end());
  return out;
}

NetworkSpec default_network(const solvers::PdeProblem& problem) {
  NetworkSpec spec;
  const int r = problem.steps_per_segment;
  int width = problem.n;
  int depth = 5;
  LayerKind kind = LayerKind::Conv1dCircular;
  std::size_t free = static_cast<std::size_t>(problem.n);
  switch (problem.family) {
    case Family::Burgers:
      depth = 3;
      break;
    case Family::Advection:
      break;
    case Family::DiffusionReaction:
      kind = LayerKind::Conv1dZero;
      break;
    case Family::ConvectionDiffusionBL:
      kind = LayerKind::Conv1dZero;
      free += problem.corrector ? 1 : 0;
      break;
    case Family::KSE2D:
    case Family::NSE2D:
      // Width N^2 with depth 1: one single-channel conv over the N x N grid.
      kind = LayerKind::Conv2dCircular;
      width = 1;
      depth = 1;
      free = static_cast<std::size_t>(problem.n) * problem.n;
      break;
  }
  for (int i = 0; i < depth; ++i) spec.layers.push_back({kind, width, 5, Activation::Swish});
  spec.layers.push_back({LayerKind::Dense, static_cast<int>(free) * r, 1, Activation::Identity});
  return spec;
}

}  // namespace sclon::net
