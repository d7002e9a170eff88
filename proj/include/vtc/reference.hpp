// SPDX-License-Identifier: Apache-2.0
// Serial reference kernels. They follow the definitions term by term and are
// used to check the parallel FFT-based kernels and as the benchmark baseline.
#pragma once

#include "vtc/spectral.hpp"
#include "vtc/tensor.hpp"

namespace vtc::reference {

/// C̄(i, j, :) = T C(i, j, :) by explicit multiplication with the v x p ZDFT matrix.
SpectralTensor forward_transform_dense(const Tensor3& c, Index v);

/// C(i, j, :) = (1/v) T^H C̄(i, j, :); the imaginary part is dropped without checks.
Tensor3 inverse_transform_dense(const SpectralTensor& s);

/// c_ij = sum_l a_il ⊙_v b_lj with every tubal product evaluated by direct summation.
Tensor3 variable_t_product_direct(const Tensor3& a, const Tensor3& b, Index v);

/// Slice-wise matrix product, one slice after another.
SpectralTensor h_product_serial(const SpectralTensor& a, const SpectralTensor& b);

}  // namespace vtc::reference
