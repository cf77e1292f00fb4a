#include "sclon/net/layers.hpp"

#include <Eigen/Dense>

#include "sclon/error.hpp"

namespace sclon::net {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

ConvGeometry make_conv_geometry(LayerKind kind, int in_channels, int out_channels, int kernel, int n,
                                std::size_t weight_offset) {
  require(kernel >= 1 && kernel % 2 == 1, "conv: kernel must be odd");
  require(in_channels >= 1 && out_channels >= 1 && n >= 1, "conv: empty shape");
  ConvGeometry g;
  g.in_channels = in_channels;
  g.out_channels = out_channels;
  g.kernel = kernel;
  const int half = kernel / 2;
  std::vector<int> table;
  if (kind == LayerKind::Conv2dCircular) {
    g.points = n * n;
    g.taps = kernel * kernel;
    table.resize(static_cast<std::size_t>(g.taps) * g.points);
    for (int dx = 0; dx < kernel; ++dx)
      for (int dy = 0; dy < kernel; ++dy)
        for (int ix = 0; ix < n; ++ix)
          for (int iy = 0; iy < n; ++iy)
            table[(static_cast<std::size_t>(dx * kernel + dy)) * g.points + ix * n + iy] =
                wrap(ix + dx - half, n) * n + wrap(iy + dy - half, n);
  } else {
    require(kind == LayerKind::Conv1dCircular || kind == LayerKind::Conv1dZero, "conv: not a conv layer");
    g.points = n;
    g.taps = kernel;
    table.resize(static_cast<std::size_t>(g.taps) * n);
    for (int t = 0; t < kernel; ++t)
      for (int i = 0; i < n; ++i) {
        const int src = i + t - half;
        int idx = src;
        if (kind == LayerKind::Conv1dCircular) idx = wrap(src, n);
        else if (src < 0 || src >= n) idx = -1;
        table[static_cast<std::size_t>(t) * n + i] = idx;
      }
  }
  g.gather = std::make_shared<const std::vector<int>>(std::move(table));
  g.weight_offset = weight_offset;
  g.bias_offset = weight_offset + static_cast<std::size_t>(out_channels) * in_channels * g.taps;
  return g;
}

Var dense(Var x, Var params, std::size_t weight_offset, int out, int in) {
  Tape& t = *x.tape;
  const auto& xv = t.value(x.id);
  const auto& pv = t.value(params.id);
  require(static_cast<int>(xv.size()) == in, "dense: input width mismatch");
  const std::size_t bias_offset = weight_offset + static_cast<std::size_t>(out) * in;
  require(bias_offset + out <= pv.size(), "dense: parameters out of range");
  const Eigen::Map<const RowMat> w(pv.data() + weight_offset, out, in);
  const Eigen::Map<const Eigen::VectorXd> b(pv.data() + bias_offset, out);
  std::vector<double> y(out);
  Eigen::Map<Eigen::VectorXd>(y.data(), out).noalias() = w * Eigen::Map<const Eigen::VectorXd>(xv.data(), in) + b;

  const int ix = x.id, ip = params.id;
  return t.push(std::move(y), {x, params}, [ix, ip, weight_offset, bias_offset, out, in](Tape& tp, int self) {
    const Eigen::Map<const Eigen::VectorXd> g(tp.grad(self).data(), out);
    const auto& pv = tp.value(ip);
    if (tp.tracks(ip)) {
      auto& dp = tp.grad(ip);
      Eigen::Map<RowMat>(dp.data() + weight_offset, out, in).noalias() +=
          g * Eigen::Map<const Eigen::VectorXd>(tp.value(ix).data(), in).transpose();
      Eigen::Map<Eigen::VectorXd>(dp.data() + bias_offset, out) += g;
    }
    if (tp.tracks(ix)) {
      Eigen::Map<Eigen::VectorXd>(tp.grad(ix).data(), in).noalias() +=
          Eigen::Map<const RowMat>(pv.data() + weight_offset, out, in).transpose() * g;
    }
  });
}

Var conv(Var x, Var params, const ConvGeometry& geo) {
  Tape& t = *x.tape;
  const auto& xv = t.value(x.id);
  const auto& pv = t.value(params.id);
  const int cin = geo.in_channels, cout = geo.out_channels, np = geo.points, taps = geo.taps;
  require(static_cast<int>(xv.size()) == cin * np, "conv: input shape mismatch");
  require(geo.bias_offset + cout <= pv.size(), "conv: parameters out of range");
  const auto& table = *geo.gather;

  // Columns of the im2col matrix are output points; rows are (channel, tap).
  RowMat cols(static_cast<Eigen::Index>(cin) * taps, np);
  for (int c = 0; c < cin; ++c)
    for (int k = 0; k < taps; ++k) {
      const int* src = table.data() + static_cast<std::size_t>(k) * np;
      double* row = cols.data() + (static_cast<std::size_t>(c) * taps + k) * np;
      const double* xc = xv.data() + static_cast<std::size_t>(c) * np;
      for (int i = 0; i < np; ++i) row[i] = src[i] < 0 ? 0.0 : xc[src[i]];
    }
  const Eigen::Map<const RowMat> w(pv.data() + geo.weight_offset, cout, static_cast<Eigen::Index>(cin) * taps);
  const Eigen::Map<const Eigen::VectorXd> b(pv.data() + geo.bias_offset, cout);
  std::vector<double> y(static_cast<std::size_t>(cout) * np);
  Eigen::Map<RowMat> ym(y.data(), cout, np);
  ym.noalias() = w * cols;
  ym.colwise() += b;

  const int ix = x.id, ip = params.id;
  auto shared_cols = std::make_shared<RowMat>(std::move(cols));
  return t.push(std::move(y), {x, params}, [ix, ip, geo, shared_cols](Tape& tp, int self) {
    const int cin = geo.in_channels, cout = geo.out_channels, np = geo.points, taps = geo.taps;
    const Eigen::Map<const RowMat> g(tp.grad(self).data(), cout, np);
    if (tp.tracks(ip)) {
      auto& dp = tp.grad(ip);
      Eigen::Map<RowMat>(dp.data() + geo.weight_offset, cout, static_cast<Eigen::Index>(cin) * taps).noalias() +=
          g * shared_cols->transpose();
      Eigen::Map<Eigen::VectorXd>(dp.data() + geo.bias_offset, cout) += g.rowwise().sum();
    }
    if (tp.tracks(ix)) {
      const auto& pv = tp.value(ip);
      const Eigen::Map<const RowMat> w(pv.data() + geo.weight_offset, cout, static_cast<Eigen::Index>(cin) * taps);
      const RowMat dcols = w.transpose() * g;
      auto& dx = tp.grad(ix);
      const auto& table = *geo.gather;
      for (int c = 0; c < cin; ++c)
        for (int k = 0; k < taps; ++k) {
          const int* src = table.data() + static_cast<std::size_t>(k) * np;
          const double* row = dcols.data() + (static_cast<std::size_t>(c) * taps + k) * np;
          double* dxc = dx.data() + static_cast<std::size_t>(c) * np;
          for (int i = 0; i < np; ++i)
            if (src[i] >= 0) dxc[src[i]] += row[i];
        }
    }
  });
}

}  // namespace sclon::net
