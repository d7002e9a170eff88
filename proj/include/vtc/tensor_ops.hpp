// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/spectral.hpp"
#include "vtc/tensor.hpp"

namespace vtc {

/// Real factor pair X (m x q x p), Y (q x n x p) of a low-rank model X *_v Y.
struct FactorPair {
  Tensor3 x;
  Tensor3 y;

  FactorPair(Tensor3 x_factor, Tensor3 y_factor);
  [[nodiscard]] Index rank() const { return x.cols(); }
};

/// A *_v B: c_ij = sum_l a_il ⊙_v b_lj, computed in the variable Fourier
/// domain as a slice-wise matrix product.
Tensor3 variable_t_product(const Tensor3& a, const Tensor3& b, Index v);

/// Classical T-product (tube-wise circular convolution); the v = p case.
Tensor3 classical_t_product(const Tensor3& a, const Tensor3& b);

/// Copies slices 1..p and appends v - p zero slices.
Tensor3 zero_pad_mode3(const Tensor3& a, Index v);

/// Slice-wise matrix product of two spectra: (A *_H B)^(l) = A^(l) B^(l).
SpectralTensor h_product(const SpectralTensor& a, const SpectralTensor& b);

/// Default relative singular-value cutoff for numerical rank.
inline constexpr double kRankTolerance = 1e-8;

/// Numerical rank of an m x n complex matrix: count of singular values above
/// tol * sigma_max. The zero matrix has rank 0.
Index numerical_rank(const Eigen::MatrixXcd& m, double tol = kRankTolerance);

/// Maximum numerical rank over the v spectral slices of C.
Index variable_tubal_rank(const Tensor3& c, Index v, double tol = kRankTolerance);

/// Maximum numerical rank over the slices of an already transformed tensor.
Index spectral_tubal_rank(const SpectralTensor& s, double tol = kRankTolerance);

struct ProductCheck {
  bool holds = false;
  double max_deviation = 0.0;
  explicit operator bool() const { return holds; }
};

/// Verifies A *_v B == (A_0 * B_0)(:, :, 1:p), where A_0, B_0 are A, B
/// zero-padded to v slices and * is the classical T-product.
ProductCheck truncated_product_check(const Tensor3& a, const Tensor3& b, Index v,
                                     double tol = 1e-9);

/// Leading p frontal slices of a tensor with at least p slices.
Tensor3 leading_slices(const Tensor3& a, Index p);

}  // namespace vtc
