#pragma once

#include <memory>
#include <vector>

#include "sclon/net/tape.hpp"

namespace sclon::net {

enum class LayerKind { Conv1dCircular, Conv1dZero, Conv2dCircular, Dense };
enum class Activation { Swish, Identity };

struct LayerSpec {
  LayerKind kind = LayerKind::Dense;
  /// Output channels (conv) or features (dense).
  int width = 1;
  /// Odd stencil size; conv only.
  int kernel = 5;
  Activation activation = Activation::Swish;
};

/// Shapes and parameter offsets of one convolution. Activations are stored
/// channel-major: entry (c, i) of a C x L map is at c * L + i, with 2D maps
/// flattened row-major.
struct ConvGeometry {
  int in_channels = 1;
  int out_channels = 1;
  int kernel = 1;
  /// Spatial points per channel (L, or N^2 in 2D).
  int points = 1;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
  /// im2col gather table of (in_channels * taps) x points source indices into
  /// one input channel; -1 marks zero padding.
  std::shared_ptr<const std::vector<int>> gather;
  int taps = 1;
};

ConvGeometry make_conv_geometry(LayerKind kind, int in_channels, int out_channels, int kernel, int n,
                                std::size_t weight_offset);

/// y = W x + b for one sample. W is (out x in) row-major at weight_offset, b
/// follows it.
Var dense(Var x, Var params, std::size_t weight_offset, int out, int in);

/// y[o] = b[o] + sum_{c, t} W[o, c, t] x[c, gather(t)] for every point.
Var conv(Var x, Var params, const ConvGeometry& geometry);

}  // namespace sclon::net
