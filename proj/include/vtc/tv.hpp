// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/tensor.hpp"

#include <Eigen/Dense>

namespace vtc {

/// Forward-difference matrix L_m: first row zero, row i >= 2 is e_i - e_{i-1}.
Eigen::MatrixXd build_L(Index m);

/// H_m = L_m^T L_m: tridiagonal, diagonal (1, 2, ..., 2, 1), off-diagonals -1.
/// For m = 1 the single entry is 0.
Eigen::MatrixXd build_H(Index m);

/// Orthogonal diagonalization H_m = K diag(lambda) K^T.
///
/// K(i, j) = sqrt(2/m) / sqrt(1 + delta_{j,1}) * cos(pi (2i - 1)(j - 1) / (2m))
/// (the orthonormal DCT-II basis) and lambda(i) = 4 sin^2((i - 1) pi / (2m)).
struct DctDiagonalization {
  Eigen::MatrixXd k;
  Eigen::VectorXd lambda;
};

DctDiagonalization build_dct_diagonalization(Index m);

/// Difference tensors of the TV regularizer. Only the first frontal slice is
/// nonzero: L_m for the vertical operator D1 (applied on the left), L_n^T for
/// the horizontal operator D2 (applied on the right).
struct DiffTensor {
  enum class Kind { kVertical, kHorizontal };

  Kind kind;
  Index size;
  Index tubes;

  /// Materializes the size x size x tubes tensor.
  [[nodiscard]] Tensor3 to_tensor() const;
};

/// D1 *_v C. Every spectral slice of D1 equals L_m, so the product reduces to
/// L_m C^(k) on each real frontal slice, independent of v.
Tensor3 apply_D1(const Tensor3& c, Index v);

/// C *_v D2, i.e. C^(k) L_n^T on each real frontal slice.
Tensor3 apply_D2(const Tensor3& c, Index v);

/// L_m^T applied to each frontal slice (adjoint of apply_D1).
Tensor3 apply_D1_adjoint(const Tensor3& c);

/// Right multiplication of each frontal slice by L_n (adjoint of apply_D2).
Tensor3 apply_D2_adjoint(const Tensor3& c);

}  // namespace vtc
