// SPDX-License-Identifier: Apache-2.0
#include "vtc/tubal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vtc {

TubalScalar::TubalScalar(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("TubalScalar: length must be at least 1");
  if (!std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); })) {
    throw std::invalid_argument("TubalScalar: entries must be finite");
  }
}

TubalScalar TubalScalar::zero(Index p) {
  if (p < 1) throw DimensionError("TubalScalar::zero: p must be at least 1");
  return TubalScalar(std::vector<double>(static_cast<std::size_t>(p), 0.0));
}

TubalScalar operator+(const TubalScalar& a, const TubalScalar& b) {
  if (a.length() != b.length()) throw DimensionError("TubalScalar +: length mismatch");
  std::vector<double> out(a.values_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.values_[k];
  return TubalScalar(std::move(out));
}

TubalScalar variable_product_direct(const TubalScalar& a, const TubalScalar& b, Index v) {
  const Index p = a.length();
  if (b.length() != p) {
    throw DimensionError("variable_product: lengths " + std::to_string(p) + " and " +
                         std::to_string(b.length()) + " differ");
  }
  if (v < p) {
    throw DimensionError("variable_product: v = " + std::to_string(v) + " is below p = " +
                         std::to_string(p));
  }
  std::vector<double> c(static_cast<std::size_t>(p), 0.0);
  for (Index k = 0; k < p; ++k) {
    double sum = 0.0;
    // Mirrored terms (i, j), (j, i) enter as one pair: the sum is symmetric in a, b.
    for (Index i = 0; i < p; ++i) {
      if ((2 * i - k) % v == 0) sum += a[i] * b[i];
      for (Index j = i + 1; j < p; ++j) {
        if ((i + j - k) % v == 0) sum += a[i] * b[j] + a[j] * b[i];
      }
    }
    c[k] = sum;
  }
  return TubalScalar(std::move(c));
}

TubalScalar tubal_transpose(const TubalScalar& a) {
  const Index p = a.length();
  std::vector<double> b(static_cast<std::size_t>(p));
  b[0] = a[0];
  for (Index k = 1; k < p; ++k) b[k] = a[p - k];
  return TubalScalar(std::move(b));
}

double tubal_modulus(const TubalScalar& a) {
  double s = 0.0;
  for (double x : a.values()) s += x * x;
  return std::sqrt(s);
}

TubalScalar tubal_unit(Index p) {
  if (p < 1) throw DimensionError("tubal_unit: p must be at least 1");
  std::vector<double> e(static_cast<std::size_t>(p), 0.0);
  e[0] = 1.0;
  return TubalScalar(std::move(e));
}

}  // namespace vtc
