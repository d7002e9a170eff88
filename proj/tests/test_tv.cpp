// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"
#include "vtc/tensor_ops.hpp"
#include "vtc/tv.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace vtc;

TEST(DifferenceMatrix, Examples) {
  EXPECT_EQ(build_L(1), Eigen::MatrixXd::Zero(1, 1));
  Eigen::Matrix2d l2;
  l2 << 0, 0, -1, 1;
  EXPECT_EQ(build_L(2), Eigen::MatrixXd(l2));

  std::mt19937_64 rng(61);
  const auto x = oracle::random_vector(rng, 7);
  const Eigen::VectorXd lx = build_L(7) * Eigen::Map<const Eigen::VectorXd>(x.data(), 7);
  EXPECT_EQ(lx(0), 0.0);
  for (Index i = 1; i < 7; ++i) EXPECT_DOUBLE_EQ(lx(i), x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i - 1)]);
}

TEST(Laplacian, Examples) {
  Eigen::Matrix2d h2;
  h2 << 1, -1, -1, 1;
  EXPECT_EQ(build_H(2), Eigen::MatrixXd(h2));
  EXPECT_EQ(build_H(1), Eigen::MatrixXd::Zero(1, 1));
  for (Index m = 1; m <= 12; ++m) {
    const Eigen::MatrixXd h = build_H(m);
    EXPECT_EQ(h, build_L(m).transpose() * build_L(m));
    EXPECT_LT(h.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(DctDiagonalization, SmallCases) {
  const auto d1 = build_dct_diagonalization(1);
  EXPECT_NEAR(d1.k(0, 0), 1.0, 1e-15);
  EXPECT_EQ(d1.lambda(0), 0.0);
  const auto d2 = build_dct_diagonalization(2);
  EXPECT_NEAR(d2.lambda(0), 0.0, 1e-15);
  EXPECT_NEAR(d2.lambda(1), 2.0, 1e-15);
}

TEST(DctDiagonalization, OrthogonalAndDiagonalizesH) {
  for (Index m : {1, 2, 3, 5, 8, 17, 30, 64}) {
    const auto d = build_dct_diagonalization(m);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(m, m);
    EXPECT_LT((d.k.transpose() * d.k - eye).cwiseAbs().maxCoeff(), 1e-10) << m;
    EXPECT_LT((d.k * d.lambda.asDiagonal() * d.k.transpose() - build_H(m)).cwiseAbs().maxCoeff(), 1e-10) << m;
    for (Index i = 0; i < m; ++i) {
      EXPECT_GE(d.lambda(i), 0.0);
      if (i > 0) EXPECT_GE(d.lambda(i), d.lambda(i - 1));
    }
  }
}

TEST(DctDiagonalization, EigenvaluesMatchSymmetricSolver) {
  for (Index m = 1; m <= 128; m += (m < 16 ? 1 : 13)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_H(m));
    Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXd lambda = build_dct_diagonalization(m).lambda;
    std::sort(ev.data(), ev.data() + m);
    std::sort(lambda.data(), lambda.data() + m);
    EXPECT_LT((ev - lambda).cwiseAbs().maxCoeff(), 1e-9) << m;
  }
}

TEST(DiffTensor, FirstSliceOnly) {
  const Tensor3 d1 = DiffTensor{DiffTensor::Kind::kVertical, 4, 3}.to_tensor();
  const Tensor3 d2 = DiffTensor{DiffTensor::Kind::kHorizontal, 5, 3}.to_tensor();
  EXPECT_EQ(Eigen::MatrixXd(d1.slice(0)), build_L(4));
  EXPECT_EQ(Eigen::MatrixXd(d2.slice(0)), Eigen::MatrixXd(build_L(5).transpose()));
  for (Index k = 1; k < 3; ++k) {
    EXPECT_EQ(d1.slice(k).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(d2.slice(k).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(DiffTensor, SpectrumIsConstantAcrossSlices) {
  const Tensor3 d1 = DiffTensor{DiffTensor::Kind::kVertical, 6, 4}.to_tensor();
  for (Index v : {4, 7, 11}) {
    const auto s = forward_transform(d1, v);
    for (Index l = 0; l < v; ++l) EXPECT_LT((s.slice(l) - build_L(6).cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ApplyD, ConstantTensorHasNoVariation) {
  Tensor3 c(5, 6, 3);
  for (double& x : c.data()) x = 0.4;
  EXPECT_EQ(apply_D1(c, 5).max_abs(), 0.0);
  EXPECT_EQ(apply_D2(c, 5).max_abs(), 0.0);
}

TEST(ApplyD, SingleSliceIsMatrixProduct) {
  std::mt19937_64 rng(62);
  const Tensor3 c = oracle::random_tensor(rng, 4, 5, 1);
  EXPECT_LT((apply_D1(c, 1).slice(0) - build_L(4) * c.slice(0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((apply_D2(c, 1).slice(0) - c.slice(0) * build_L(5).transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ApplyD, MatchesGenericProduct) {
  std::mt19937_64 rng(63);
  for (Index v : {4, 5, 7, 12}) {
    const Tensor3 c = oracle::random_tensor(rng, 5, 6, 4);
    const Tensor3 d1 = oracle::first_slice_tensor(oracle::forward_difference(5), 4);
    const Tensor3 d2 = oracle::first_slice_tensor(oracle::forward_difference(6).transpose(), 4);
    EXPECT_LT(max_abs_diff(apply_D1(c, v), oracle::t_product(d1, c, v)), 1e-10);
    EXPECT_LT(max_abs_diff(apply_D2(c, v), oracle::t_product(c, d2, v)), 1e-10);
    EXPECT_LT(max_abs_diff(apply_D1(c, v), variable_t_product(d1, c, v)), 1e-10);
  }
}

TEST(ApplyD, AdjointsSatisfyInnerProductIdentity) {
  std::mt19937_64 rng(64);
  const Tensor3 c = oracle::random_tensor(rng, 5, 6, 3);
  const Tensor3 w = oracle::random_tensor(rng, 5, 6, 3);
  EXPECT_NEAR(inner_product(apply_D1(c, 3), w), inner_product(c, apply_D1_adjoint(w)), 1e-12);
  EXPECT_NEAR(inner_product(apply_D2(c, 3), w), inner_product(c, apply_D2_adjoint(w)), 1e-12);
}

TEST(ApplyD, L1InvariantUnderColumnShift) {
  std::mt19937_64 rng(65);
  Tensor3 c = oracle::random_tensor(rng, 5, 4, 2);
  const double before = apply_D1(c, 3).l1_norm();
  for (Index k = 0; k < 2; ++k)
    for (Index j = 0; j < 4; ++j)
      for (Index i = 0; i < 5; ++i) c(i, j, k) += 0.5 * static_cast<double>(j + 3 * k);
  EXPECT_NEAR(apply_D1(c, 3).l1_norm(), before, 1e-12);
}

TEST(ApplyD, RejectsSmallV) {
  EXPECT_THROW(apply_D1(Tensor3(2, 2, 3), 2), DimensionError);
  EXPECT_THROW(apply_D2(Tensor3(2, 2, 3), 2), DimensionError);
}
