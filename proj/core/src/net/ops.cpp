#include "sclon/net/ops.hpp"

#include <cmath>
#include <numbers>

#include "sclon/error.hpp"

namespace sclon::net {

namespace {

Tape& tape_of(Var v) {
  require(v.valid(), "op on an invalid Var");
  return *v.tape;
}

void accumulate(Tape& t, int target, const std::vector<double>& g) {
  if (!t.tracks(target)) return;
  auto& dst = t.grad(target);
  for (std::size_t i = 0; i < g.size(); ++i) dst[i] += g[i];
}

double transform_scale(const spectral::FourierGrid& grid) {
  return std::pow(2.0 * std::numbers::pi * grid.spacing(), grid.dims());
}

}  // namespace

Var add(Var a, Var b) { return lincomb({{1.0, a}, {1.0, b}}); }

Var sub(Var a, Var b) { return lincomb({{1.0, a}, {-1.0, b}}); }

Var scale(Var a, double c) { return lincomb({{c, a}}); }

Var lincomb(std::initializer_list<std::pair<double, Var>> terms) {
  require(terms.size() > 0, "lincomb: no terms");
  Tape& t = tape_of(terms.begin()->second);
  const std::size_t n = terms.begin()->second.size();
  std::vector<double> out(n, 0.0);
  std::vector<Var> operands;
  std::vector<std::pair<double, int>> captured;
  for (const auto& [c, v] : terms) {
    require(v.tape == &t && v.size() == n, "lincomb: operand mismatch");
    const auto& x = t.value(v.id);
    for (std::size_t i = 0; i < n; ++i) out[i] += c * x[i];
    operands.push_back(v);
    captured.emplace_back(c, v.id);
  }
  return t.push(std::move(out), operands, [captured](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    for (const auto& [c, id] : captured) {
      if (!tp.tracks(id)) continue;
      auto& dst = tp.grad(id);
      for (std::size_t i = 0; i < g.size(); ++i) dst[i] += c * g[i];
    }
  });
}

Var mul(Var a, Var b) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  const auto& y = t.value(b.id);
  require(x.size() == y.size(), "mul: length mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  const int ia = a.id, ib = b.id;
  return t.push(std::move(out), {a, b}, [ia, ib](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    const auto& x = tp.value(ia);
    const auto& y = tp.value(ib);
    if (tp.tracks(ia)) {
      auto& d = tp.grad(ia);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * y[i];
    }
    if (tp.tracks(ib)) {
      auto& d = tp.grad(ib);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * x[i];
    }
  });
}

Var mul_const(Var a, const std::vector<double>& c) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  require(x.size() == c.size(), "mul_const: length mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = c[i] * x[i];
  const int ia = a.id;
  return t.push(std::move(out), {a}, [ia, &c](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] += c[i] * g[i];
  });
}

Var add_const(Var a, const std::vector<double>& c) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  require(x.size() == c.size(), "add_const: length mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + c[i];
  const int ia = a.id;
  return t.push(std::move(out), {a}, [ia](Tape& tp, int self) { accumulate(tp, ia, tp.grad(self)); });
}

Var swish(Var a) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / (1.0 + std::exp(-x[i]));
  const int ia = a.id;
  return t.push(std::move(out), {a}, [ia](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    const auto& x = tp.value(ia);
    auto& d = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = 1.0 / (1.0 + std::exp(-x[i]));
      d[i] += g[i] * (s + x[i] * s * (1.0 - s));
    }
  });
}

Var sum_squares(Var a) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  double total = 0.0;
  for (double v : x) total += v * v;
  const int ia = a.id;
  return t.push({total}, {a}, [ia](Tape& tp, int self) {
    const double g = tp.grad(self)[0];
    const auto& x = tp.value(ia);
    auto& d = tp.grad(ia);
    for (std::size_t i = 0; i < x.size(); ++i) d[i] += 2.0 * g * x[i];
  });
}

Var sum_scalars(const std::vector<Var>& terms) {
  require(!terms.empty(), "sum_scalars: no terms");
  Tape& t = tape_of(terms.front());
  double total = 0.0;
  std::vector<int> ids;
  for (const Var& v : terms) {
    require(v.size() == 1, "sum_scalars: operand is not a scalar");
    total += t.value(v.id)[0];
    ids.push_back(v.id);
  }
  return t.push({total}, terms, [ids](Tape& tp, int self) {
    const double g = tp.grad(self)[0];
    for (int id : ids)
      if (tp.tracks(id)) tp.grad(id)[0] += g;
  });
}

Var slice(Var a, std::size_t offset, std::size_t length) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  require(offset + length <= x.size(), "slice: out of range");
  std::vector<double> out(x.begin() + static_cast<std::ptrdiff_t>(offset),
                          x.begin() + static_cast<std::ptrdiff_t>(offset + length));
  const int ia = a.id;
  return t.push(std::move(out), {a}, [ia, offset](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) d[offset + i] += g[i];
  });
}

Var concat(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat: no parts");
  Tape& t = tape_of(parts.front());
  std::vector<double> out;
  std::vector<std::pair<int, std::size_t>> spans;
  for (const Var& v : parts) {
    const auto& x = t.value(v.id);
    spans.emplace_back(v.id, out.size());
    out.insert(out.end(), x.begin(), x.end());
  }
  return t.push(std::move(out), parts, [spans](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    for (const auto& [id, off] : spans) {
      if (!tp.tracks(id)) continue;
      auto& d = tp.grad(id);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += g[off + i];
    }
  });
}

Var apply_matrix(const Eigen::MatrixXd& a, Var x) {
  Tape& t = tape_of(x);
  const auto& xv = t.value(x.id);
  require(static_cast<Eigen::Index>(xv.size()) == a.cols(), "apply_matrix: column count mismatch");
  std::vector<double> out(a.rows());
  Eigen::Map<Eigen::VectorXd>(out.data(), a.rows()).noalias() =
      a * Eigen::Map<const Eigen::VectorXd>(xv.data(), a.cols());
  const int ix = x.id;
  return t.push(std::move(out), {x}, [ix, &a](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(ix);
    Eigen::Map<Eigen::VectorXd>(d.data(), a.cols()).noalias() +=
        a.transpose() * Eigen::Map<const Eigen::VectorXd>(g.data(), a.rows());
  });
}

Var cmul_const(Var a, const std::vector<std::complex<double>>& c) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  require(x.size() == 2 * c.size(), "cmul_const: length mismatch");
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double re = x[2 * k], im = x[2 * k + 1];
    out[2 * k] = c[k].real() * re - c[k].imag() * im;
    out[2 * k + 1] = c[k].imag() * re + c[k].real() * im;
  }
  const int ia = a.id;
  // Adjoint of multiplication by c is multiplication by conj(c).
  return t.push(std::move(out), {a}, [ia, &c](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(ia);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double gr = g[2 * k], gi = g[2 * k + 1];
      d[2 * k] += c[k].real() * gr + c[k].imag() * gi;
      d[2 * k + 1] += -c[k].imag() * gr + c[k].real() * gi;
    }
  });
}

Var mode_scale(Var a, const std::vector<double>& s) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  require(x.size() == 2 * s.size(), "mode_scale: length mismatch");
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    out[2 * k] = s[k] * x[2 * k];
    out[2 * k + 1] = s[k] * x[2 * k + 1];
  }
  const int ia = a.id;
  return t.push(std::move(out), {a}, [ia, &s](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(ia);
    for (std::size_t k = 0; k < s.size(); ++k) {
      d[2 * k] += s[k] * g[2 * k];
      d[2 * k + 1] += s[k] * g[2 * k + 1];
    }
  });
}

Var mode_scale_i(Var a, const std::vector<double>& s) {
  Tape& t = tape_of(a);
  const auto& x = t.value(a.id);
  require(x.size() == 2 * s.size(), "mode_scale_i: length mismatch");
  std::vector<double> out(x.size());
  // i s (re + i im) = -s im + i s re
  for (std::size_t k = 0; k < s.size(); ++k) {
    out[2 * k] = -s[k] * x[2 * k + 1];
    out[2 * k + 1] = s[k] * x[2 * k];
  }
  const int ia = a.id;
  return t.push(std::move(out), {a}, [ia, &s](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(ia);
    for (std::size_t k = 0; k < s.size(); ++k) {
      d[2 * k] += s[k] * g[2 * k + 1];
      d[2 * k + 1] += -s[k] * g[2 * k];
    }
  });
}

Var dft_real(const spectral::FourierGrid& grid, Var x) {
  Tape& t = tape_of(x);
  const auto& xv = t.value(x.id);
  require(xv.size() == grid.size(), "dft_real: length mismatch");
  std::vector<double> out(2 * grid.size());
  spectral::dft_into(grid, xv, {reinterpret_cast<spectral::Complex*>(out.data()), grid.size()});
  const int ix = x.id;
  // x_bar = (2 pi h)^d Re(idft(z_bar))
  return t.push(std::move(out), {x}, [ix, grid](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    std::vector<double> back(grid.size());
    spectral::idft_real_into(grid, {reinterpret_cast<const spectral::Complex*>(g.data()), grid.size()}, back);
    const double s = transform_scale(grid);
    auto& d = tp.grad(ix);
    for (std::size_t i = 0; i < back.size(); ++i) d[i] += s * back[i];
  });
}

Var idft_real(const spectral::FourierGrid& grid, Var z) {
  Tape& t = tape_of(z);
  const auto& zv = t.value(z.id);
  require(zv.size() == 2 * grid.size(), "idft_real: length mismatch");
  std::vector<double> out(grid.size());
  spectral::idft_real_into(grid, {reinterpret_cast<const spectral::Complex*>(zv.data()), grid.size()}, out);
  const int iz = z.id;
  // z_bar = dft(x_bar) / (2 pi h)^d
  return t.push(std::move(out), {z}, [iz, grid](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    std::vector<spectral::Complex> fwd(grid.size());
    spectral::dft_into(grid, g, fwd);
    const double s = 1.0 / transform_scale(grid);
    auto& d = tp.grad(iz);
    for (std::size_t k = 0; k < fwd.size(); ++k) {
      d[2 * k] += s * fwd[k].real();
      d[2 * k + 1] += s * fwd[k].imag();
    }
  });
}

}  // namespace sclon::net
