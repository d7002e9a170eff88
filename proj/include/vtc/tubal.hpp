// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/tensor.hpp"

#include <initializer_list>
#include <span>
#include <vector>

namespace vtc {

/// Element of the ring K_p = (R^p, +, ⊙_v): a real vector of length p >= 1.
///
/// The product parameter v is not part of the value; it is passed to every
/// product call so one scalar can take part in products under different v.
class TubalScalar {
 public:
  explicit TubalScalar(std::vector<double> values);
  TubalScalar(std::initializer_list<double> values)
      : TubalScalar(std::vector<double>(values)) {}

  /// Zero scalar of length p.
  static TubalScalar zero(Index p);

  [[nodiscard]] Index length() const { return static_cast<Index>(values_.size()); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  double operator[](Index k) const { return values_[static_cast<std::size_t>(k)]; }

  friend TubalScalar operator+(const TubalScalar& a, const TubalScalar& b);
  friend bool operator==(const TubalScalar&, const TubalScalar&) = default;

 private:
  std::vector<double> values_;
};

/// c(k) = sum{ a(i) b(j) : i + j - k - 1 = 0 mod v } over 1-based i, j, k in [1, p],
/// evaluated by explicit double summation in O(p^2).
///
/// With 0-based indices the condition reads i + j - k = 0 mod v. v = p gives
/// circular convolution; v >= 2p - 1 gives the first p entries of the linear
/// convolution. Kept as the reference for the FFT-based product.
TubalScalar variable_product_direct(const TubalScalar& a, const TubalScalar& b, Index v);

/// b(1) = a(1), b(k) = a(p + 2 - k) for k = 2..p.
TubalScalar tubal_transpose(const TubalScalar& a);

/// Euclidean length sqrt(sum a(k)^2).
double tubal_modulus(const TubalScalar& a);

/// e = (1, 0, ..., 0), the multiplicative unit for every v >= p.
TubalScalar tubal_unit(Index p);

}  // namespace vtc
