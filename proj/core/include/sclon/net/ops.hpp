#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "sclon/net/tape.hpp"
#include "sclon/spectral/fourier.hpp"

/// Differentiable primitives. Ops that take a matrix or multiplier table by
/// reference keep the reference in the backward closure: the referenced object
/// must outlive the tape.
namespace sclon::net {

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var scale(Var a, double c);
/// sum_i c_i v_i over operands of equal length.
Var lincomb(std::initializer_list<std::pair<double, Var>> terms);
/// Elementwise product.
Var mul(Var a, Var b);
/// Elementwise product with a constant array.
Var mul_const(Var a, const std::vector<double>& c);
/// a + c for a constant array c.
Var add_const(Var a, const std::vector<double>& c);
/// x * sigmoid(x).
Var swish(Var a);
/// Scalar sum of squares.
Var sum_squares(Var a);
/// Scalar sum of scalars.
Var sum_scalars(const std::vector<Var>& terms);

Var slice(Var a, std::size_t offset, std::size_t length);
Var concat(const std::vector<Var>& parts);

/// y = A x, with x viewed as a column of A.cols() entries.
Var apply_matrix(const Eigen::MatrixXd& a, Var x);

/// Interleaved complex arrays: y_k = c_k a_k.
Var cmul_const(Var a, const std::vector<std::complex<double>>& c);
/// Interleaved complex arrays: y_k = s_k a_k with real s_k.
Var mode_scale(Var a, const std::vector<double>& s);
/// Interleaved complex arrays: y_k = i s_k a_k with real s_k (spectral
/// derivative).
Var mode_scale_i(Var a, const std::vector<double>& s);

/// Real grid values -> interleaved spectrum under the h^d normalization.
Var dft_real(const spectral::FourierGrid& grid, Var x);
/// Interleaved spectrum -> real part of the (2pi)^-d inverse on the grid.
Var idft_real(const spectral::FourierGrid& grid, Var z);

}  // namespace sclon::net
