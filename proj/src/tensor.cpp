// SPDX-License-Identifier: Apache-2.0
#include "vtc/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace vtc {

std::string to_string(const Dims& d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols) + "x" + std::to_string(d.tubes);
}

Tensor3::Tensor3(Index rows, Index cols, Index tubes) : dims_{rows, cols, tubes} {
  if (rows < 1 || cols < 1 || tubes < 1) {
    throw DimensionError("Tensor3: all dimensions must be positive, got " + to_string(dims_));
  }
  data_.assign(static_cast<std::size_t>(dims_.size()), 0.0);
}

Tensor3::Tensor3(Dims dims, std::vector<double> data) : Tensor3(dims) {
  if (static_cast<Index>(data.size()) != dims.size()) {
    throw DimensionError("Tensor3: data length " + std::to_string(data.size()) +
                         " does not match dims " + to_string(dims));
  }
  data_ = std::move(data);
}

Tensor3::SliceMap Tensor3::slice(Index k) {
  return SliceMap(data_.data() + dims_.rows * dims_.cols * k, dims_.rows, dims_.cols);
}

Tensor3::ConstSliceMap Tensor3::slice(Index k) const {
  return ConstSliceMap(data_.data() + dims_.rows * dims_.cols * k, dims_.rows, dims_.cols);
}

std::vector<double> Tensor3::fiber(Index i, Index j) const {
  std::vector<double> out(static_cast<std::size_t>(dims_.tubes));
  for (Index k = 0; k < dims_.tubes; ++k) out[k] = (*this)(i, j, k);
  return out;
}

void Tensor3::set_fiber(Index i, Index j, std::span<const double> values) {
  if (static_cast<Index>(values.size()) != dims_.tubes) {
    throw DimensionError("Tensor3::set_fiber: fiber length mismatch");
  }
  for (Index k = 0; k < dims_.tubes; ++k) (*this)(i, j, k) = values[k];
}

double Tensor3::squared_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return s;
}

double Tensor3::frobenius_norm() const { return std::sqrt(squared_norm()); }

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double Tensor3::l1_norm() const {
  double s = 0.0;
  for (double x : data_) s += std::abs(x);
  return s;
}

bool Tensor3::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

void Tensor3::require_same_dims(const Tensor3& other, const char* what) const {
  if (dims_ != other.dims_) {
    throw DimensionError(std::string(what) + ": dims " + to_string(dims_) + " vs " +
                         to_string(other.dims_));
  }
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  require_same_dims(other, "Tensor3::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
  require_same_dims(other, "Tensor3::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

double inner_product(const Tensor3& a, const Tensor3& b) {
  if (a.dims() != b.dims()) throw DimensionError("inner_product: dims mismatch");
  double s = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  if (a.dims() != b.dims()) throw DimensionError("max_abs_diff: dims mismatch");
  double m = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace vtc
