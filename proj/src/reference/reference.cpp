// SPDX-License-Identifier: Apache-2.0
#include "vtc/reference.hpp"

#include "vtc/tubal.hpp"

namespace vtc::reference {

SpectralTensor forward_transform_dense(const Tensor3& c, Index v) {
  const ZdftMatrix t = build_zdft(v, c.tubes());
  SpectralTensor out(c.rows(), c.cols(), c.tubes(), v);
  Eigen::VectorXcd fiber(c.tubes());
  for (Index j = 0; j < c.cols(); ++j) {
    for (Index i = 0; i < c.rows(); ++i) {
      for (Index k = 0; k < c.tubes(); ++k) fiber(k) = c(i, j, k);
      const Eigen::VectorXcd spec = t.entries * fiber;
      for (Index l = 0; l < v; ++l) out.slice(l)(i, j) = spec(l);
    }
  }
  return out;
}

Tensor3 inverse_transform_dense(const SpectralTensor& s) {
  const ZdftMatrix t = build_zdft(s.length(), s.tubes());
  Tensor3 out(s.rows(), s.cols(), s.tubes());
  Eigen::VectorXcd spec(s.length());
  const double scale = 1.0 / static_cast<double>(s.length());
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < s.rows(); ++i) {
      for (Index l = 0; l < s.length(); ++l) spec(l) = s.slice(l)(i, j);
      const Eigen::VectorXcd fiber = scale * (t.entries.adjoint() * spec);
      for (Index k = 0; k < s.tubes(); ++k) out(i, j, k) = fiber(k).real();
    }
  }
  return out;
}

Tensor3 variable_t_product_direct(const Tensor3& a, const Tensor3& b, Index v) {
  if (a.cols() != b.rows() || a.tubes() != b.tubes()) {
    throw DimensionError("variable_t_product_direct: incompatible operands");
  }
  const Index p = a.tubes();
  Tensor3 c(a.rows(), b.cols(), p);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      TubalScalar acc = TubalScalar::zero(p);
      for (Index l = 0; l < a.cols(); ++l) {
        acc = acc + variable_product_direct(TubalScalar(a.fiber(i, l)), TubalScalar(b.fiber(l, j)), v);
      }
      c.set_fiber(i, j, acc.values());
    }
  }
  return c;
}

SpectralTensor h_product_serial(const SpectralTensor& a, const SpectralTensor& b) {
  if (a.cols() != b.rows() || a.length() != b.length()) {
    throw DimensionError("h_product_serial: incompatible operands");
  }
  SpectralTensor c(a.rows(), b.cols(), a.tubes(), a.length());
  for (Index l = 0; l < a.length(); ++l) c.slice(l) = a.slice(l) * b.slice(l);
  return c;
}

}  // namespace vtc::reference
