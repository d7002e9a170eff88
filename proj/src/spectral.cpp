// SPDX-License-Identifier: Apache-2.0
#include "vtc/spectral.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vtc {

namespace {

void require_v_at_least_p(Index v, Index p, const char* what) {
  if (p < 1 || v < p) {
    throw DimensionError(std::string(what) + ": need v >= p >= 1, got v = " + std::to_string(v) +
                         ", p = " + std::to_string(p));
  }
}

}  // namespace

ZdftMatrix build_zdft(Index v, Index p) {
  require_v_at_least_p(v, p, "build_zdft");
  ZdftMatrix t{v, p, Eigen::MatrixXcd(v, p)};
  for (Index l = 0; l < v; ++l) {
    for (Index k = 0; k < p; ++k) {
      // Reduce the exponent mod v before evaluating so large l*k stays exact.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((l * k) % v) /
                           static_cast<double>(v);
      t.entries(l, k) = std::polar(1.0, angle);
    }
  }
  return t;
}

Eigen::VectorXcd phi(const Eigen::VectorXcd& a, const ZdftMatrix& t) {
  if (a.size() != t.p) throw DimensionError("phi: input length does not match p");
  return t.entries * a;
}

Eigen::VectorXcd phi_adjoint(const Eigen::VectorXcd& c, const ZdftMatrix& t) {
  if (c.size() != t.v) throw DimensionError("phi_adjoint: input length does not match v");
  return t.entries.adjoint() * c;
}

TubalScalar variable_product_fft(const TubalScalar& a, const TubalScalar& b, Index v,
                                 double imag_tol) {
  const Index p = a.length();
  if (b.length() != p) throw DimensionError("variable_product_fft: length mismatch");
  require_v_at_least_p(v, p, "variable_product_fft");

  const auto n = static_cast<std::size_t>(v);
  std::vector<Complex> pa(n), pb(n), fa(n), fb(n), out(n);
  for (Index k = 0; k < p; ++k) {
    pa[k] = a[k];
    pb[k] = b[k];
  }
  const detail::FftPlan fwd(static_cast<int>(v), detail::FftPlan::Kind::kComplexForward);
  const detail::FftPlan bwd(static_cast<int>(v), detail::FftPlan::Kind::kComplexBackward);
  fwd.execute(pa.data(), fa.data());
  fwd.execute(pb.data(), fb.data());
  for (std::size_t l = 0; l < n; ++l) fa[l] *= fb[l];
  bwd.execute(fa.data(), out.data());

  std::vector<double> c(static_cast<std::size_t>(p));
  const double scale = 1.0 / static_cast<double>(v);
  for (Index k = 0; k < p; ++k) {
    const Complex z = out[k] * scale;
    if (std::abs(z.imag()) > imag_tol) {
      throw NumericalError("variable_product_fft: imaginary residue " +
                           std::to_string(std::abs(z.imag())) + " above tolerance");
    }
    c[k] = z.real();
  }
  return TubalScalar(std::move(c));
}

SpectralTensor::SpectralTensor(Index rows, Index cols, Index tubes, Index length)
    : rows_(rows), cols_(cols), tubes_(tubes) {
  if (rows < 1 || cols < 1 || tubes < 1) {
    throw DimensionError("SpectralTensor: dimensions must be positive");
  }
  require_v_at_least_p(length, tubes, "SpectralTensor");
  slices_.assign(static_cast<std::size_t>(length), Eigen::MatrixXcd::Zero(rows, cols));
}

void SpectralTensor::mirror_conjugate() {
  const Index v = length();
  for (Index l = unique_slices(); l < v; ++l) slice(l) = slice(v - l).conjugate();
}

double SpectralTensor::conjugate_symmetry_defect() const {
  const Index v = length();
  double worst = 0.0;
  for (Index l = 0; l < v; ++l) {
    const Index mirror = (v - l) % v;
    worst = std::max(worst, (slice(l) - slice(mirror).conjugate()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double SpectralTensor::squared_norm() const {
  double s = 0.0;
  for (const auto& m : slices_) s += m.squaredNorm();
  return s;
}

SpectralTensor forward_transform(const Tensor3& c, Index v) {
  const Index m = c.rows();
  const Index n = c.cols();
  const Index p = c.tubes();
  require_v_at_least_p(v, p, "forward_transform");

  SpectralTensor out(m, n, p, v);
  const Index half = v / 2 + 1;
  const detail::FftPlan plan(static_cast<int>(v), detail::FftPlan::Kind::kRealToComplex);
  const Index fibers = m * n;

#pragma omp parallel
  {
    std::vector<double> padded(static_cast<std::size_t>(v), 0.0);
    std::vector<Complex> spec(static_cast<std::size_t>(half));
#pragma omp for schedule(static)
    for (Index f = 0; f < fibers; ++f) {
      const Index i = f % m;
      const Index j = f / m;
      for (Index k = 0; k < p; ++k) padded[k] = c(i, j, k);
      plan.execute(padded.data(), spec.data());
      for (Index l = 0; l < half; ++l) out.slice(l)(i, j) = spec[l];
      for (Index l = half; l < v; ++l) out.slice(l)(i, j) = std::conj(spec[v - l]);
    }
  }
  return out;
}

Tensor3 inverse_transform(const SpectralTensor& s, double imag_tol) {
  const Index m = s.rows();
  const Index n = s.cols();
  const Index p = s.tubes();
  const Index v = s.length();
  if (v < 1) throw DimensionError("inverse_transform: empty spectrum");

  Tensor3 out(m, n, p);
  const detail::FftPlan plan(static_cast<int>(v), detail::FftPlan::Kind::kComplexBackward);
  const double scale = 1.0 / static_cast<double>(v);
  const Index fibers = m * n;
  double worst = 0.0;

#pragma omp parallel reduction(max : worst)
  {
    std::vector<Complex> in(static_cast<std::size_t>(v));
    std::vector<Complex> time(static_cast<std::size_t>(v));
#pragma omp for schedule(static)
    for (Index f = 0; f < fibers; ++f) {
      const Index i = f % m;
      const Index j = f / m;
      for (Index l = 0; l < v; ++l) in[l] = s.slice(l)(i, j);
      plan.execute(in.data(), time.data());
      for (Index k = 0; k < p; ++k) {
        const Complex z = time[k] * scale;
        worst = std::max(worst, std::abs(z.imag()));
        out(i, j, k) = z.real();
      }
    }
  }
  if (worst > imag_tol) {
    throw NumericalError("inverse_transform: imaginary residue " + std::to_string(worst) +
                         " exceeds tolerance " + std::to_string(imag_tol));
  }
  return out;
}

}  // namespace vtc
