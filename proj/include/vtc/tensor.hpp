// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vtc {

using Index = Eigen::Index;

/// Raised when a precondition on shapes or parameters is violated.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produces a result outside its numerical tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dims {
  Index rows = 0;
  Index cols = 0;
  Index tubes = 0;

  [[nodiscard]] Index size() const { return rows * cols * tubes; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(const Dims& d);

/// Dense real third-order tensor of size rows x cols x tubes.
///
/// Frontal slices are stored contiguously and column-major, so entry
/// (i, j, k) lives at i + rows * (j + cols * k). A frontal slice can be viewed
/// as an Eigen matrix without copying; a mode-3 fiber (i, j, :) is strided by
/// rows * cols. All indices are 0-based; the 1-based (i, j, k) of the
/// mathematical notation maps to (i-1, j-1, k-1).
class Tensor3 {
 public:
  using SliceMap = Eigen::Map<Eigen::MatrixXd>;
  using ConstSliceMap = Eigen::Map<const Eigen::MatrixXd>;

  Tensor3() = default;
  Tensor3(Index rows, Index cols, Index tubes);
  explicit Tensor3(Dims dims) : Tensor3(dims.rows, dims.cols, dims.tubes) {}
  Tensor3(Dims dims, std::vector<double> data);

  [[nodiscard]] Index rows() const { return dims_.rows; }
  [[nodiscard]] Index cols() const { return dims_.cols; }
  [[nodiscard]] Index tubes() const { return dims_.tubes; }
  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] Index size() const { return dims_.size(); }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
  double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

  [[nodiscard]] Index offset(Index i, Index j, Index k) const {
    return i + dims_.rows * (j + dims_.cols * k);
  }

  SliceMap slice(Index k);
  [[nodiscard]] ConstSliceMap slice(Index k) const;

  [[nodiscard]] std::vector<double> fiber(Index i, Index j) const;
  void set_fiber(Index i, Index j, std::span<const double> values);

  std::span<double> data() { return data_; }
  [[nodiscard]] std::span<const double> data() const { return data_; }

  [[nodiscard]] double frobenius_norm() const;
  [[nodiscard]] double squared_norm() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double l1_norm() const;
  [[nodiscard]] bool all_finite() const;

  Tensor3& operator+=(const Tensor3& other);
  Tensor3& operator-=(const Tensor3& other);
  Tensor3& operator*=(double s);

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
  friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  void require_same_dims(const Tensor3& other, const char* what) const;

  Dims dims_{};
  std::vector<double> data_;
};

/// Frobenius inner product <A, B> = sum_ijk a_ijk b_ijk.
double inner_product(const Tensor3& a, const Tensor3& b);

/// Largest absolute entrywise difference; dims must match.
double max_abs_diff(const Tensor3& a, const Tensor3& b);

}  // namespace vtc
