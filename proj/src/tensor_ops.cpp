// SPDX-License-Identifier: Apache-2.0
#include "vtc/tensor_ops.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <string>

namespace vtc {

FactorPair::FactorPair(Tensor3 x_factor, Tensor3 y_factor)
    : x(std::move(x_factor)), y(std::move(y_factor)) {
  if (x.cols() != y.rows()) {
    throw DimensionError("FactorPair: inner dimensions " + std::to_string(x.cols()) + " and " +
                         std::to_string(y.rows()) + " differ");
  }
  if (x.tubes() != y.tubes()) throw DimensionError("FactorPair: tubal lengths differ");
}

SpectralTensor h_product(const SpectralTensor& a, const SpectralTensor& b) {
  if (a.cols() != b.rows() || a.length() != b.length()) {
    throw DimensionError("h_product: operand shapes are incompatible");
  }
  SpectralTensor c(a.rows(), b.cols(), a.tubes(), a.length());
  const Index v = a.length();
#pragma omp parallel for schedule(static)
  for (Index l = 0; l < v; ++l) c.slice(l).noalias() = a.slice(l) * b.slice(l);
  return c;
}

Tensor3 variable_t_product(const Tensor3& a, const Tensor3& b, Index v) {
  if (a.cols() != b.rows() || a.tubes() != b.tubes()) {
    throw DimensionError("variable_t_product: cannot multiply " + to_string(a.dims()) + " by " +
                         to_string(b.dims()));
  }
  if (v < a.tubes()) throw DimensionError("variable_t_product: v must be at least p");

  const SpectralTensor fa = forward_transform(a, v);
  const SpectralTensor fb = forward_transform(b, v);
  // Both spectra are conjugate symmetric, so only the leading half is multiplied.
  SpectralTensor fc(a.rows(), b.cols(), a.tubes(), v);
  const Index half = fc.unique_slices();
#pragma omp parallel for schedule(static)
  for (Index l = 0; l < half; ++l) fc.slice(l).noalias() = fa.slice(l) * fb.slice(l);
  fc.mirror_conjugate();
  return inverse_transform(fc);
}

Tensor3 classical_t_product(const Tensor3& a, const Tensor3& b) {
  return variable_t_product(a, b, a.tubes());
}

Tensor3 zero_pad_mode3(const Tensor3& a, Index v) {
  if (v < a.tubes()) throw DimensionError("zero_pad_mode3: v must be at least p");
  Tensor3 out(a.rows(), a.cols(), v);
  std::copy(a.data().begin(), a.data().end(), out.data().begin());
  return out;
}

Tensor3 leading_slices(const Tensor3& a, Index p) {
  if (p < 1 || p > a.tubes()) throw DimensionError("leading_slices: p out of range");
  Tensor3 out(a.rows(), a.cols(), p);
  std::copy_n(a.data().begin(), out.size(), out.data().begin());
  return out;
}

Index numerical_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return 0;
  return static_cast<Index>((sv.array() > tol * smax).count());
}

Index spectral_tubal_rank(const SpectralTensor& s, double tol) {
  Index rank = 0;
  for (Index l = 0; l < s.length(); ++l) rank = std::max(rank, numerical_rank(s.slice(l), tol));
  return rank;
}

Index variable_tubal_rank(const Tensor3& c, Index v, double tol) {
  if (tol < 0.0) throw std::invalid_argument("variable_tubal_rank: tol must be nonnegative");
  return spectral_tubal_rank(forward_transform(c, v), tol);
}

ProductCheck truncated_product_check(const Tensor3& a, const Tensor3& b, Index v, double tol) {
  const Tensor3 lhs = variable_t_product(a, b, v);
  const Tensor3 full = classical_t_product(zero_pad_mode3(a, v), zero_pad_mode3(b, v));
  const Tensor3 rhs = leading_slices(full, a.tubes());
  ProductCheck check;
  check.max_deviation = max_abs_diff(lhs, rhs);
  check.holds = check.max_deviation <= tol;
  return check;
}

}  // namespace vtc
