// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"
#include "vtc/reference.hpp"
#include "vtc/tensor_ops.hpp"

#include <gtest/gtest.h>

using namespace vtc;

namespace {

Tensor3 identity_tensor(Index m, Index p) {
  Tensor3 e(m, m, p);
  for (Index i = 0; i < m; ++i) e(i, i, 0) = 1.0;
  return e;
}

/// Random X̄ *_H Ȳ spectrum with conjugate-symmetric factors of rank r.
SpectralTensor random_product_spectrum(std::mt19937_64& rng, Index m, Index n, Index r, Index p, Index v) {
  std::normal_distribution<double> g;
  SpectralTensor x(m, r, p, v);
  SpectralTensor y(r, n, p, v);
  for (Index l = 0; l < v; ++l) {
    for (Index j = 0; j < r; ++j)
      for (Index i = 0; i < m; ++i) x.slice(l)(i, j) = Complex(g(rng), g(rng));
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < r; ++i) y.slice(l)(i, j) = Complex(g(rng), g(rng));
  }
  x.mirror_conjugate();
  y.mirror_conjugate();
  return h_product(x, y);
}

}  // namespace

TEST(Tensor3, LayoutSliceAndFiberAgree) {
  Tensor3 t(2, 3, 4);
  for (Index k = 0; k < 4; ++k)
    for (Index j = 0; j < 3; ++j)
      for (Index i = 0; i < 2; ++i) t(i, j, k) = 100.0 * static_cast<double>(k) + 10.0 * static_cast<double>(j) + static_cast<double>(i);
  EXPECT_EQ(t.data()[static_cast<std::size_t>(1 + 2 * (2 + 3 * 3))], 321.0);
  EXPECT_EQ(t.slice(2)(1, 0), 201.0);
  EXPECT_EQ(t.fiber(1, 2), (std::vector<double>{21.0, 121.0, 221.0, 321.0}));
  EXPECT_THROW(Tensor3(0, 1, 1), DimensionError);
  EXPECT_THROW(t += Tensor3(2, 3, 3), DimensionError);
}

TEST(VariableTProduct, SingleTubeIsTubalProduct) {
  std::mt19937_64 rng(41);
  const Tensor3 a = oracle::random_tensor(rng, 1, 1, 5);
  const Tensor3 b = oracle::random_tensor(rng, 1, 1, 5);
  const auto c = variable_t_product(a, b, 8);
  const auto ref = variable_product_direct(TubalScalar(a.fiber(0, 0)), TubalScalar(b.fiber(0, 0)), 8);
  for (Index k = 0; k < 5; ++k) EXPECT_NEAR(c(0, 0, k), ref[k], 1e-13);
}

TEST(VariableTProduct, IdentityTensorIsUnit) {
  std::mt19937_64 rng(42);
  const Tensor3 b = oracle::random_tensor(rng, 3, 4, 5);
  for (Index v : {5, 7, 9, 15}) EXPECT_LT(max_abs_diff(variable_t_product(identity_tensor(3, 5), b, v), b), 1e-14);
}

TEST(VariableTProduct, SmallInstanceMatchesDirectSummation) {
  std::mt19937_64 rng(43);
  const Tensor3 a = oracle::random_tensor(rng, 2, 2, 3);
  const Tensor3 b = oracle::random_tensor(rng, 2, 2, 3);
  const Tensor3 fast = variable_t_product(a, b, 5);
  EXPECT_LT(max_abs_diff(fast, reference::variable_t_product_direct(a, b, 5)), 1e-10);
  EXPECT_LT(max_abs_diff(fast, oracle::t_product(a, b, 5)), 1e-10);
}

TEST(VariableTProduct, RejectsIncompatibleOperands) {
  EXPECT_THROW(variable_t_product(Tensor3(2, 3, 4), Tensor3(2, 2, 4), 5), DimensionError);
  EXPECT_THROW(variable_t_product(Tensor3(2, 2, 4), Tensor3(2, 2, 4), 3), DimensionError);
}

TEST(VariableTProduct, IsBilinear) {
  std::mt19937_64 rng(44);
  const Tensor3 a1 = oracle::random_tensor(rng, 3, 2, 4);
  const Tensor3 a2 = oracle::random_tensor(rng, 3, 2, 4);
  const Tensor3 b1 = oracle::random_tensor(rng, 2, 3, 4);
  const Tensor3 b2 = oracle::random_tensor(rng, 2, 3, 4);
  const Index v = 6;
  EXPECT_LT(max_abs_diff(variable_t_product(2.0 * a1 + a2, b1, v),
                         2.0 * variable_t_product(a1, b1, v) + variable_t_product(a2, b1, v)),
            1e-12);
  EXPECT_LT(max_abs_diff(variable_t_product(a1, b1 - 3.0 * b2, v),
                         variable_t_product(a1, b1, v) - 3.0 * variable_t_product(a1, b2, v)),
            1e-12);
}

TEST(ClassicalTProduct, OneSliceIsMatrixProduct) {
  std::mt19937_64 rng(45);
  const Tensor3 a = oracle::random_tensor(rng, 3, 4, 1);
  const Tensor3 b = oracle::random_tensor(rng, 4, 2, 1);
  const Tensor3 c = classical_t_product(a, b);
  const Eigen::MatrixXd ref = a.slice(0) * b.slice(0);
  EXPECT_LT((c.slice(0) - ref).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(ClassicalTProduct, MatchesCircularConvolutionSum) {
  std::mt19937_64 rng(46);
  const Tensor3 a = oracle::random_tensor(rng, 2, 2, 3);
  const Tensor3 b = oracle::random_tensor(rng, 2, 2, 3);
  const Tensor3 c = classical_t_product(a, b);
  EXPECT_EQ(c, variable_t_product(a, b, 3));
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      for (Index k = 0; k < 3; ++k) {
        double s = 0.0;
        for (Index l = 0; l < 2; ++l)
          for (Index t = 0; t < 3; ++t) s += a(i, l, t) * b(l, j, (k - t + 3) % 3);
        EXPECT_NEAR(c(i, j, k), s, 1e-13);
      }
    }
  }
}

TEST(ZeroPad, Examples) {
  std::mt19937_64 rng(47);
  const Tensor3 a = oracle::random_tensor(rng, 2, 3, 4);
  EXPECT_EQ(zero_pad_mode3(a, 4), a);
  EXPECT_DOUBLE_EQ(zero_pad_mode3(a, 9).frobenius_norm(), a.frobenius_norm());
  Tensor3 one(1, 1, 1);
  one(0, 0, 0) = 2.0;
  EXPECT_EQ(zero_pad_mode3(one, 3).fiber(0, 0), (std::vector<double>{2.0, 0.0, 0.0}));
}

TEST(HProduct, SliceWiseAndHadamard) {
  std::mt19937_64 rng(48);
  const auto a = forward_transform(oracle::random_tensor(rng, 3, 2, 4), 7);
  const auto b = forward_transform(oracle::random_tensor(rng, 2, 5, 4), 7);
  const auto c = h_product(a, b);
  const auto serial = reference::h_product_serial(a, b);
  for (Index l = 0; l < 7; ++l) {
    EXPECT_LT((c.slice(l) - a.slice(l) * b.slice(l)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(c.slice(l), serial.slice(l));
  }

  const auto f = forward_transform(oracle::random_tensor(rng, 1, 1, 3), 5);
  const auto g = forward_transform(oracle::random_tensor(rng, 1, 1, 3), 5);
  const auto fg = h_product(f, g);
  for (Index l = 0; l < 5; ++l) EXPECT_LT(std::abs(fg.slice(l)(0, 0) - f.slice(l)(0, 0) * g.slice(l)(0, 0)), 1e-15);
}

TEST(HProduct, SpectrumOfProductThroughInverse) {
  std::mt19937_64 rng(49);
  const Tensor3 a = oracle::random_tensor(rng, 3, 2, 5);
  const Tensor3 b = oracle::random_tensor(rng, 2, 4, 5);
  for (Index v = 5; v <= 15; ++v) {
    const Tensor3 via_h = inverse_transform(h_product(forward_transform(a, v), forward_transform(b, v)));
    EXPECT_LT(max_abs_diff(via_h, oracle::t_product(a, b, v)), 1e-12) << "v=" << v;
  }
}

TEST(HProduct, RejectsIncompatibleSpectra) {
  EXPECT_THROW(h_product(SpectralTensor(2, 3, 2, 4), SpectralTensor(2, 3, 2, 4)), DimensionError);
  EXPECT_THROW(h_product(SpectralTensor(2, 3, 2, 4), SpectralTensor(3, 3, 2, 5)), DimensionError);
}

TEST(TubalRank, Examples) {
  EXPECT_EQ(variable_tubal_rank(Tensor3(4, 5, 3), 5), 0);
  std::mt19937_64 rng(50);
  const Tensor3 a = oracle::random_tensor(rng, 6, 1, 4);
  const Tensor3 b = oracle::random_tensor(rng, 1, 5, 4);
  EXPECT_LE(variable_tubal_rank(variable_t_product(a, b, 4), 4), 1);
}

// Outer product of e1, e2 tubes at p = 2, v = 3: slice l is [[1, w], [w, 0]], w = exp(-2 pi i l / 3).
TEST(TubalRank, TruncatedProductCanRaiseSpectralRank) {
  Tensor3 a(2, 1, 2);
  Tensor3 b(1, 2, 2);
  a(0, 0, 0) = 1.0;
  a(1, 0, 1) = 1.0;
  b(0, 0, 0) = 1.0;
  b(0, 1, 1) = 1.0;
  const Tensor3 c = variable_t_product(a, b, 3);
  EXPECT_NEAR(c(1, 1, 0), 0.0, 1e-15);
  EXPECT_NEAR(c(1, 1, 1), 0.0, 1e-15);
  EXPECT_EQ(variable_tubal_rank(c, 3), 2);
}

TEST(TubalRank, AtVEqualPIsClassicalTubalRank) {
  std::mt19937_64 rng(51);
  const Tensor3 c = oracle::random_tensor(rng, 5, 4, 3);
  Index classical = 0;
  const auto spec = oracle::forward(c, 3);
  for (Index l = 0; l < 3; ++l) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(spec.slice(l));
    const auto s = svd.singularValues();
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i) r += s(i) > 1e-8 * s(0) ? 1 : 0;
    classical = std::max(classical, r);
  }
  EXPECT_EQ(variable_tubal_rank(c, 3), classical);
  EXPECT_EQ(classical, 4);
}

TEST(TubalRank, SpectralFactorizationBoundsRank) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const Index m = oracle::uniform_index(rng, 3, 8);
    const Index n = oracle::uniform_index(rng, 3, 8);
    const Index r = oracle::uniform_index(rng, 1, 3);
    const Index p = oracle::uniform_index(rng, 1, 5);
    const Index v = oracle::uniform_index(rng, p, 3 * p);
    EXPECT_LE(spectral_tubal_rank(random_product_spectrum(rng, m, n, r, p, v)), r);
  }
}

TEST(TruncatedProduct, HoldsOnRandomOperands) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = oracle::uniform_index(rng, 1, 4);
    const Index q = oracle::uniform_index(rng, 1, 4);
    const Index n = oracle::uniform_index(rng, 1, 4);
    const Index p = oracle::uniform_index(rng, 1, 8);
    const Index v = oracle::uniform_index(rng, p, 3 * p);
    const auto check = truncated_product_check(oracle::random_tensor(rng, m, q, p),
                                               oracle::random_tensor(rng, q, n, p), v);
    ASSERT_TRUE(check) << "deviation " << check.max_deviation;
  }
}

TEST(TruncatedProduct, DegenerateCases) {
  std::mt19937_64 rng(54);
  const Tensor3 a = oracle::random_tensor(rng, 3, 2, 4);
  const Tensor3 b = oracle::random_tensor(rng, 2, 3, 4);
  EXPECT_TRUE(truncated_product_check(a, b, 4));
  EXPECT_EQ(leading_slices(classical_t_product(zero_pad_mode3(a, 4), zero_pad_mode3(b, 4)), 4),
            classical_t_product(a, b));
  const auto zero = truncated_product_check(a, Tensor3(2, 3, 4), 9);
  EXPECT_TRUE(zero);
  EXPECT_EQ(zero.max_deviation, 0.0);
  EXPECT_EQ(variable_t_product(a, Tensor3(2, 3, 4), 9), Tensor3(3, 3, 4));
}

TEST(TubalRank, CircularProductAdmitsExactSpectralFactorization) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const Index r = oracle::uniform_index(rng, 1, 3);
    const Index m = oracle::uniform_index(rng, r, 8);
    const Index n = oracle::uniform_index(rng, r, 8);
    const Index p = oracle::uniform_index(rng, 1, 5);
    const Index v = p;
    const Tensor3 c = variable_t_product(oracle::random_tensor(rng, m, r, p), oracle::random_tensor(rng, r, n, p), v);
    const auto spec = forward_transform(c, v);
    EXPECT_LE(spectral_tubal_rank(spec), r);
    EXPECT_LT(oracle::svd_refactor_error(spec, r), 1e-9);
  }
}
