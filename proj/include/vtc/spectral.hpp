// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/tensor.hpp"
#include "vtc/tubal.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace vtc {

using Complex = std::complex<double>;

/// Imaginary residue accepted when mapping a spectrum back to the real domain.
inline constexpr double kImagTolerance = 1e-9;

/// The v x p zero-padding DFT matrix: the first p columns of the v x v DFT
/// matrix F_v, entry (l, k) = w^(l k) with w = exp(-2 pi i / v) (0-based).
///
/// T^H T = v I_p, and T a equals F_v applied to a zero-padded to length v.
struct ZdftMatrix {
  Index v = 0;
  Index p = 0;
  Eigen::MatrixXcd entries;
};

ZdftMatrix build_zdft(Index v, Index p);

/// phi(a) = T a.
Eigen::VectorXcd phi(const Eigen::VectorXcd& a, const ZdftMatrix& t);

/// phi^H(c) = T^H c.
Eigen::VectorXcd phi_adjoint(const Eigen::VectorXcd& c, const ZdftMatrix& t);

/// (1/v) phi^H[phi(a) ∘ phi(b)] evaluated with length-v FFTs.
///
/// Throws NumericalError if the discarded imaginary part exceeds `imag_tol`.
TubalScalar variable_product_fft(const TubalScalar& a, const TubalScalar& b, Index v,
                                 double imag_tol = kImagTolerance);

/// Complex m x n x v tensor in the variable Fourier domain, held as v frontal
/// slices. `tubes` records the real-domain tubal length p it maps back to.
class SpectralTensor {
 public:
  SpectralTensor() = default;
  /// Zero spectrum with `length` slices of size rows x cols.
  SpectralTensor(Index rows, Index cols, Index tubes, Index length);

  [[nodiscard]] Index rows() const { return rows_; }
  [[nodiscard]] Index cols() const { return cols_; }
  [[nodiscard]] Index tubes() const { return tubes_; }
  [[nodiscard]] Index length() const { return static_cast<Index>(slices_.size()); }

  Eigen::MatrixXcd& slice(Index l) { return slices_[static_cast<std::size_t>(l)]; }
  [[nodiscard]] const Eigen::MatrixXcd& slice(Index l) const {
    return slices_[static_cast<std::size_t>(l)];
  }

  /// Number of slices that determine a conjugate-symmetric spectrum: floor(v/2)+1.
  [[nodiscard]] Index unique_slices() const { return length() / 2 + 1; }

  /// Overwrites slices l > v/2 with conj(slice v - l).
  void mirror_conjugate();

  /// max over l of |slice(l) - conj(slice((v - l) mod v))|.
  [[nodiscard]] double conjugate_symmetry_defect() const;

  [[nodiscard]] double squared_norm() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  Index tubes_ = 0;
  std::vector<Eigen::MatrixXcd> slices_;
};

/// Applies T along mode 3: zero-pad every fiber from p to v and take a
/// length-v DFT. Fibers are transformed in parallel.
SpectralTensor forward_transform(const Tensor3& c, Index v);

/// Applies (1/v) T^H along mode 3 and returns the real part.
///
/// Throws NumericalError if any discarded imaginary part exceeds `imag_tol`.
Tensor3 inverse_transform(const SpectralTensor& s, double imag_tol = kImagTolerance);

}  // namespace vtc
