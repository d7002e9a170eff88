// SPDX-License-Identifier: Apache-2.0
#include "vtc/tv.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vtc {

namespace {

void require_positive(Index m, const char* what) {
  if (m < 1) throw DimensionError(std::string(what) + ": size must be at least 1");
}

void require_v(const Tensor3& c, Index v, const char* what) {
  if (v < c.tubes()) throw DimensionError(std::string(what) + ": v must be at least p");
}

}  // namespace

Eigen::MatrixXd build_L(Index m) {
  require_positive(m, "build_L");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (Index i = 1; i < m; ++i) {
    l(i, i - 1) = -1.0;
    l(i, i) = 1.0;
  }
  return l;
}

Eigen::MatrixXd build_H(Index m) {
  require_positive(m, "build_H");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  if (m == 1) return h;
  for (Index i = 0; i < m; ++i) h(i, i) = (i == 0 || i == m - 1) ? 1.0 : 2.0;
  for (Index i = 0; i + 1 < m; ++i) {
    h(i, i + 1) = -1.0;
    h(i + 1, i) = -1.0;
  }
  return h;
}

DctDiagonalization build_dct_diagonalization(Index m) {
  require_positive(m, "build_dct_diagonalization");
  const double md = static_cast<double>(m);
  const double pi = std::numbers::pi;
  DctDiagonalization d{Eigen::MatrixXd(m, m), Eigen::VectorXd(m)};
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double w = (j == 0) ? std::sqrt(0.5) : 1.0;
      d.k(i, j) = std::sqrt(2.0 / md) * w *
                  std::cos(pi * static_cast<double>((2 * i + 1) * j) / (2.0 * md));
    }
    const double s = std::sin(static_cast<double>(i) * pi / (2.0 * md));
    d.lambda(i) = 4.0 * s * s;
  }
  return d;
}

Tensor3 DiffTensor::to_tensor() const {
  require_positive(size, "DiffTensor");
  Tensor3 t(size, size, tubes);
  if (kind == Kind::kVertical) {
    t.slice(0) = build_L(size);
  } else {
    t.slice(0) = build_L(size).transpose();
  }
  return t;
}

// L_m has at most two nonzeros per row, so the slice products are written as
// explicit differences rather than dense matrix multiplies.
Tensor3 apply_D1(const Tensor3& c, Index v) {
  require_v(c, v, "apply_D1");
  const Index m = c.rows();
  const Index n = c.cols();
  const Index p = c.tubes();
  Tensor3 out(c.dims());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 1; i < m; ++i) out(i, j, k) = c(i, j, k) - c(i - 1, j, k);
    }
  }
  return out;
}

Tensor3 apply_D2(const Tensor3& c, Index v) {
  require_v(c, v, "apply_D2");
  const Index m = c.rows();
  const Index n = c.cols();
  const Index p = c.tubes();
  Tensor3 out(c.dims());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < p; ++k) {
    for (Index j = 1; j < n; ++j) {
      for (Index i = 0; i < m; ++i) out(i, j, k) = c(i, j, k) - c(i, j - 1, k);
    }
  }
  return out;
}

Tensor3 apply_D1_adjoint(const Tensor3& c) {
  const Index m = c.rows();
  const Index n = c.cols();
  const Index p = c.tubes();
  Tensor3 out(c.dims());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 1; i < m; ++i) {
        out(i, j, k) += c(i, j, k);
        out(i - 1, j, k) -= c(i, j, k);
      }
    }
  }
  return out;
}

Tensor3 apply_D2_adjoint(const Tensor3& c) {
  const Index m = c.rows();
  const Index n = c.cols();
  const Index p = c.tubes();
  Tensor3 out(c.dims());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < p; ++k) {
    for (Index j = 1; j < n; ++j) {
      for (Index i = 0; i < m; ++i) {
        out(i, j, k) += c(i, j, k);
        out(i, j - 1, k) -= c(i, j, k);
      }
    }
  }
  return out;
}

}  // namespace vtc
