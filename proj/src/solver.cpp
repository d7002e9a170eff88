// SPDX-License-Identifier: Apache-2.0
#include "vtc/solver.hpp"

#include "rng.hpp"
#include "vtc/tensor_ops.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vtc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Weight of slice l when summing over the unique half of a conjugate-symmetric spectrum.
double mirror_weight(Index l, Index v) {
  if (l == 0) return 1.0;
  if (v % 2 == 0 && l == v / 2) return 1.0;
  return 2.0;
}

double spectral_distance_squared(const SpectralTensor& a, const SpectralTensor& b) {
  double s = 0.0;
  for (Index l = 0; l < a.length(); ++l) s += (a.slice(l) - b.slice(l)).squaredNorm();
  return s;
}

double relative(double num, double den) { return den > 0.0 ? num / den : num; }

bool all_finite(const SpectralTensor& s) {
  for (Index l = 0; l < s.length(); ++l) {
    if (!s.slice(l).allFinite()) return false;
  }
  return true;
}

Tensor3 tv_scaled_sum(const Tensor3& q, double weight, const Tensor3& multiplier) {
  Tensor3 out = multiplier;
  if (weight != 0.0) {
    auto o = out.data();
    const auto qd = q.data();
    for (std::size_t n = 0; n < o.size(); ++n) o[n] += weight * qd[n];
  }
  return out;
}

// H_m C with H_m the tridiagonal second-difference matrix.
Eigen::MatrixXcd apply_H_left(const Eigen::MatrixXcd& c) {
  const Index m = c.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, c.cols());
  if (m == 1) return out;
  out.row(0) = c.row(0) - c.row(1);
  out.row(m - 1) = c.row(m - 1) - c.row(m - 2);
  if (m > 2) {
    out.middleRows(1, m - 2) = 2.0 * c.middleRows(1, m - 2) - c.topRows(m - 2) - c.bottomRows(m - 2);
  }
  return out;
}

// C H_n.
Eigen::MatrixXcd apply_H_right(const Eigen::MatrixXcd& c) {
  const Index n = c.cols();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c.rows(), n);
  if (n == 1) return out;
  out.col(0) = c.col(0) - c.col(1);
  out.col(n - 1) = c.col(n - 1) - c.col(n - 2);
  if (n > 2) {
    out.middleCols(1, n - 2) = 2.0 * c.middleCols(1, n - 2) - c.leftCols(n - 2) - c.rightCols(n - 2);
  }
  return out;
}

std::string state_dump(const SolverState& st, double last_objective) {
  std::ostringstream os;
  os << "iteration " << st.iteration << ", ||Xbar||^2 = " << st.xbar.squared_norm()
     << ", ||Ybar||^2 = " << st.ybar.squared_norm() << ", ||C||^2 = " << st.c.squared_norm()
     << ", ||S||^2 = " << st.s.squared_norm() << ", ||T||^2 = " << st.t.squared_norm()
     << ", last objective = " << last_objective;
  return os.str();
}

}  // namespace

double SolverConfig::rho_min() const { return std::min({rho1, rho2, rho3}); }

void SolverConfig::validate(const Dims& dims) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SolverConfig: " + msg); };
  if (v != 0 && v < dims.tubes) fail("v must be at least p = " + std::to_string(dims.tubes));
  if (rank < 1) fail("rank must be positive");
  if (rank > std::min(dims.rows, dims.cols)) {
    fail("rank " + std::to_string(rank) + " exceeds min(m, n) = " +
         std::to_string(std::min(dims.rows, dims.cols)));
  }
  if (alpha1 < 0.0 || alpha2 < 0.0) fail("alpha1, alpha2 must be nonnegative");
  if (beta < 0.0 || mu < 0.0) fail("beta, mu must be nonnegative");
  if (alpha1 > 0.0 && beta <= 0.0) fail("alpha1 > 0 requires beta > 0");
  if (alpha2 > 0.0 && mu <= 0.0) fail("alpha2 > 0 requires mu > 0");
  if (!(rho1 > 0.0 && rho2 > 0.0 && rho3 > 0.0)) fail("rho1, rho2, rho3 must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (max_iter < 1) fail("max_iter must be positive");
  if (inner_iters < 1) fail("inner_iters must be positive");
}

SolverConfig SolverConfig::without_tv() const {
  SolverConfig c = *this;
  c.alpha1 = c.alpha2 = 0.0;
  c.beta = c.mu = 0.0;
  return c;
}

double SolverTrace::max_decrease_gap() const {
  double worst = -kInf;
  for (double g : decrease_gap) worst = std::max(worst, g);
  return worst;
}

int SolverTrace::decrease_violations(double slack) const {
  return static_cast<int>(
      std::count_if(decrease_gap.begin(), decrease_gap.end(), [&](double g) { return g > slack; }));
}

double soft_threshold(double x, double eta) {
  if (eta < 0.0) throw std::invalid_argument("soft_threshold: eta must be nonnegative");
  const double a = std::abs(x);
  if (a <= eta) return 0.0;
  return std::copysign(a - eta, x);
}

Tensor3 soft_threshold(const Tensor3& x, double eta) {
  Tensor3 out(x.dims());
  auto o = out.data();
  const auto in = x.data();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = soft_threshold(in[n], eta);
  return out;
}

SolverState initialize_state(const ObservationMask& mask, const SolverConfig& cfg) {
  const Dims d = mask.dims();
  cfg.validate(d);
  const Index v = cfg.resolved_v(d.tubes);
  const Index q = cfg.rank;

  SolverState st;
  st.xbar = SpectralTensor(d.rows, q, d.tubes, v);
  st.ybar = SpectralTensor(q, d.cols, d.tubes, v);
  detail::Rng rng(cfg.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  for (Index l = 0; l < st.xbar.unique_slices(); ++l) {
    auto& x = st.xbar.slice(l);
    for (Index j = 0; j < x.cols(); ++j)
      for (Index i = 0; i < x.rows(); ++i) x(i, j) = scale * rng.uniform();
    auto& y = st.ybar.slice(l);
    for (Index j = 0; j < y.cols(); ++j)
      for (Index i = 0; i < y.rows(); ++i) y(i, j) = scale * rng.uniform();
  }
  st.xbar.mirror_conjugate();
  st.ybar.mirror_conjugate();

  st.c = mask.zero_filled();
  st.cbar = forward_transform(st.c, v);
  st.q1 = Tensor3(d);
  st.q2 = Tensor3(d);
  st.s = Tensor3(d);
  st.t = Tensor3(d);
  return st;
}

double evaluate_objective(const Tensor3& x, const Tensor3& y, const Tensor3& c,
                          const ObservationMask& mask, const SolverConfig& cfg) {
  if (!mask.satisfied_by(c)) return kInf;
  const Index v = cfg.resolved_v(c.tubes());
  const Tensor3 fit = variable_t_product(x, y, v) - c;
  double f = 0.5 * fit.squared_norm();
  if (cfg.alpha1 != 0.0) f += cfg.alpha1 * apply_D1(c, v).l1_norm();
  if (cfg.alpha2 != 0.0) f += cfg.alpha2 * apply_D2(c, v).l1_norm();
  return f;
}

double evaluate_objective(const SpectralTensor& xbar, const SpectralTensor& ybar,
                          const Tensor3& c, const ObservationMask& mask,
                          const SolverConfig& cfg) {
  if (!mask.satisfied_by(c)) return kInf;
  const Index v = xbar.length();
  const Tensor3 fit = inverse_transform(h_product(xbar, ybar), cfg.imag_tolerance) - c;
  double f = 0.5 * fit.squared_norm();
  if (cfg.alpha1 != 0.0) f += cfg.alpha1 * apply_D1(c, v).l1_norm();
  if (cfg.alpha2 != 0.0) f += cfg.alpha2 * apply_D2(c, v).l1_norm();
  return f;
}

double spectral_objective(const SpectralTensor& xbar, const SpectralTensor& ybar,
                          const Tensor3& c, const SpectralTensor& cbar,
                          const ObservationMask& mask, const SolverConfig& cfg) {
  if (!mask.satisfied_by(c)) return kInf;
  const Index v = cbar.length();
  const Index half = cbar.unique_slices();
  std::vector<double> partial(static_cast<std::size_t>(half));
#pragma omp parallel for schedule(static)
  for (Index l = 0; l < half; ++l) {
    partial[l] = mirror_weight(l, v) *
                 (xbar.slice(l) * ybar.slice(l) - cbar.slice(l)).squaredNorm();
  }
  double data = 0.0;
  for (double x : partial) data += x;
  double f = data / (2.0 * static_cast<double>(v));
  if (cfg.alpha1 != 0.0) f += cfg.alpha1 * apply_D1(c, v).l1_norm();
  if (cfg.alpha2 != 0.0) f += cfg.alpha2 * apply_D2(c, v).l1_norm();
  return f;
}

FactorUpdate update_X(const SolverState& state, const SolverConfig& cfg) {
  const Index v = state.xbar.length();
  const Index q = state.xbar.cols();
  const Index half = state.xbar.unique_slices();
  FactorUpdate out{SpectralTensor(state.xbar.rows(), q, state.xbar.tubes(), v), 0.0};
  std::vector<double> residual(static_cast<std::size_t>(half), 0.0);
  std::vector<int> failed(static_cast<std::size_t>(half), 0);

#pragma omp parallel for schedule(static)
  for (Index l = 0; l < half; ++l) {
    const Eigen::MatrixXcd& y = state.ybar.slice(l);
    Eigen::MatrixXcd gram = y * y.adjoint();
    gram.diagonal().array() += cfg.rho1;
    const Eigen::MatrixXcd rhs = cfg.rho1 * state.xbar.slice(l) + state.cbar.slice(l) * y.adjoint();
    // X G = RHS with G Hermitian  <=>  G X^H = RHS^H.
    const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success) {
      failed[l] = 1;
      continue;
    }
    Eigen::MatrixXcd x = llt.solve(rhs.adjoint()).adjoint();
    if (cfg.check_residuals) residual[l] = relative((x * gram - rhs).norm(), rhs.norm());
    out.factor.slice(l) = std::move(x);
  }
  if (std::any_of(failed.begin(), failed.end(), [](int f) { return f != 0; })) {
    throw SolverAbort("update_X: regularized Gram matrix is not positive definite");
  }
  out.factor.mirror_conjugate();
  out.residual = *std::max_element(residual.begin(), residual.end());
  return out;
}

FactorUpdate update_Y(const SolverState& state, const SolverConfig& cfg) {
  const Index v = state.ybar.length();
  const Index q = state.ybar.rows();
  const Index half = state.ybar.unique_slices();
  FactorUpdate out{SpectralTensor(q, state.ybar.cols(), state.ybar.tubes(), v), 0.0};
  std::vector<double> residual(static_cast<std::size_t>(half), 0.0);
  std::vector<int> failed(static_cast<std::size_t>(half), 0);

#pragma omp parallel for schedule(static)
  for (Index l = 0; l < half; ++l) {
    const Eigen::MatrixXcd& x = state.xbar.slice(l);
    Eigen::MatrixXcd gram = x.adjoint() * x;
    gram.diagonal().array() += cfg.rho2;
    const Eigen::MatrixXcd rhs = x.adjoint() * state.cbar.slice(l) + cfg.rho2 * state.ybar.slice(l);
    const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success) {
      failed[l] = 1;
      continue;
    }
    Eigen::MatrixXcd y = llt.solve(rhs);
    if (cfg.check_residuals) residual[l] = relative((gram * y - rhs).norm(), rhs.norm());
    out.factor.slice(l) = std::move(y);
  }
  if (std::any_of(failed.begin(), failed.end(), [](int f) { return f != 0; })) {
    throw SolverAbort("update_Y: regularized Gram matrix is not positive definite");
  }
  out.factor.mirror_conjugate();
  out.residual = *std::max_element(residual.begin(), residual.end());
  return out;
}

Eigen::MatrixXcd solve_diagonalized_sylvester(const Eigen::MatrixXcd& r, double beta, double mu,
                                              double rho3, const DctDiagonalization& dm,
                                              const DctDiagonalization& dn) {
  const Index m = r.rows();
  const Index n = r.cols();
  if (dm.k.rows() != m || dn.k.rows() != n) {
    throw DimensionError("solve_diagonalized_sylvester: basis sizes do not match the slice");
  }
  // K is real, so the real and imaginary parts are rotated separately.
  const Eigen::MatrixXd re = r.real();
  const Eigen::MatrixXd im = r.imag();
  Eigen::MatrixXd hat_re = dm.k.transpose() * re * dn.k;
  Eigen::MatrixXd hat_im = dm.k.transpose() * im * dn.k;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      const double denom = 1.0 + rho3 + beta * dm.lambda(i) + mu * dn.lambda(j);
      if (!(denom >= 1.0 + rho3)) {
        throw NumericalError("solve_diagonalized_sylvester: denominator below 1 + rho3");
      }
      hat_re(i, j) /= denom;
      hat_im(i, j) /= denom;
    }
  }
  Eigen::MatrixXcd c(m, n);
  c.real() = dm.k * hat_re * dn.k.transpose();
  c.imag() = dm.k * hat_im * dn.k.transpose();
  return c;
}

double sylvester_residual(const Eigen::MatrixXcd& c, const Eigen::MatrixXcd& r, double beta,
                          double mu, double rho3) {
  Eigen::MatrixXcd lhs = (1.0 + rho3) * c;
  if (beta != 0.0) lhs += beta * apply_H_left(c);
  if (mu != 0.0) lhs += mu * apply_H_right(c);
  return relative((lhs - r).norm(), r.norm());
}

CUpdate update_C(const SolverState& state, const SolverConfig& cfg, const ObservationMask& mask,
                 const DctDiagonalization& dm, const DctDiagonalization& dn) {
  const Index v = state.cbar.length();
  const Index half = state.cbar.unique_slices();
  const Dims d = state.c.dims();

  // X^{k+1} *_H Y^{k+1} + rho3 Cbar^k is shared by every inner pass.
  SpectralTensor base(d.rows, d.cols, d.tubes, v);
#pragma omp parallel for schedule(static)
  for (Index l = 0; l < half; ++l) {
    base.slice(l).noalias() = state.xbar.slice(l) * state.ybar.slice(l);
    base.slice(l) += cfg.rho3 * state.cbar.slice(l);
  }

  CUpdate out{state.c, state.cbar, state.q1, state.q2, state.s, state.t, 0.0};
  for (int pass = 0; pass < cfg.inner_iters; ++pass) {
    if (cfg.beta > 0.0) {
      Tensor3 arg = apply_D1(out.c, v);
      arg -= (1.0 / cfg.beta) * out.s;
      out.q1 = soft_threshold(arg, cfg.alpha1 / cfg.beta);
    }
    if (cfg.mu > 0.0) {
      Tensor3 arg = apply_D2(out.c, v);
      arg -= (1.0 / cfg.mu) * out.t;
      out.q2 = soft_threshold(arg, cfg.alpha2 / cfg.mu);
    }

    // L_m^T (beta Q1 + S) + (mu Q2 + T) L_n in the real domain; the
    // difference operators are real and identical on every spectral slice.
    const bool has_linear = cfg.beta > 0.0 || cfg.mu > 0.0 || out.s.max_abs() > 0.0 ||
                            out.t.max_abs() > 0.0;
    SpectralTensor linear;
    if (has_linear) {
      Tensor3 lin = apply_D1_adjoint(tv_scaled_sum(out.q1, cfg.beta, out.s));
      lin += apply_D2_adjoint(tv_scaled_sum(out.q2, cfg.mu, out.t));
      linear = forward_transform(lin, v);
    }

    SpectralTensor cbar(d.rows, d.cols, d.tubes, v);
    std::vector<double> residual(static_cast<std::size_t>(half), 0.0);
#pragma omp parallel for schedule(static)
    for (Index l = 0; l < half; ++l) {
      Eigen::MatrixXcd r = base.slice(l);
      if (has_linear) r += linear.slice(l);
      cbar.slice(l) = solve_diagonalized_sylvester(r, cfg.beta, cfg.mu, cfg.rho3, dm, dn);
      if (cfg.check_residuals) {
        residual[l] = sylvester_residual(cbar.slice(l), r, cfg.beta, cfg.mu, cfg.rho3);
      }
    }
    cbar.mirror_conjugate();
    out.sylvester_residual =
        std::max(out.sylvester_residual, *std::max_element(residual.begin(), residual.end()));

    out.c = inverse_transform(cbar, cfg.imag_tolerance);
    mask.project(out.c);

    if (cfg.beta > 0.0) {
      Tensor3 step = out.q1 - apply_D1(out.c, v);
      out.s += cfg.beta * step;
    }
    if (cfg.mu > 0.0) {
      Tensor3 step = out.q2 - apply_D2(out.c, v);
      out.t += cfg.mu * step;
    }
  }
  out.cbar = forward_transform(out.c, v);
  return out;
}

SolveResult solve_vtctf_tv(const ObservationMask& mask, const SolverConfig& cfg) {
  for (double g : mask.values()) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("solve: observed values must lie in [0, 1]");
    }
  }
  if (mask.count() == 0) throw std::invalid_argument("solve: no observed entries");

  SolveResult res;
  SolverState& st = res.state;
  st = initialize_state(mask, cfg);
  const Dims d = mask.dims();
  const Index v = cfg.resolved_v(d.tubes);
  const DctDiagonalization dm = build_dct_diagonalization(d.rows);
  const DctDiagonalization dn = build_dct_diagonalization(d.cols);
  const double inv_v = 1.0 / static_cast<double>(v);
  SolverTrace& tr = res.trace;

  double f_prev = spectral_objective(st.xbar, st.ybar, st.c, st.cbar, mask, cfg);
  tr.objective.push_back(f_prev);

  for (int k = 0; k < cfg.max_iter; ++k) {
    FactorUpdate xu = update_X(st, cfg);
    const double dx = spectral_distance_squared(xu.factor, st.xbar);
    st.xbar = std::move(xu.factor);

    FactorUpdate yu = update_Y(st, cfg);
    const double dy = spectral_distance_squared(yu.factor, st.ybar);
    st.ybar = std::move(yu.factor);

    CUpdate cu = update_C(st, cfg, mask, dm, dn);
    const double dc = (cu.c - st.c).squared_norm();
    const double cnorm = cu.c.squared_norm();
    st.c = std::move(cu.c);
    st.cbar = std::move(cu.cbar);
    st.q1 = std::move(cu.q1);
    st.q2 = std::move(cu.q2);
    st.s = std::move(cu.s);
    st.t = std::move(cu.t);
    st.iteration = k + 1;

    if (!st.c.all_finite() || !all_finite(st.xbar) || !all_finite(st.ybar) ||
        !st.s.all_finite() || !st.t.all_finite()) {
      throw SolverAbort("solve: non-finite iterate; " + state_dump(st, f_prev));
    }
    if (cfg.check_residuals) {
      const double worst = std::max({xu.residual, yu.residual, cu.sylvester_residual});
      if (worst > cfg.residual_tolerance) {
        throw SolverAbort("solve: subproblem residual " + std::to_string(worst) +
                          " above tolerance; " + state_dump(st, f_prev));
      }
    }

    const double f = spectral_objective(st.xbar, st.ybar, st.c, st.cbar, mask, cfg);
    const double du = inv_v * (dx + dy) + dc;
    tr.objective.push_back(f);
    tr.decrease_gap.push_back(f + 0.5 * cfg.rho_min() * du - f_prev);
    tr.x_residual.push_back(xu.residual);
    tr.y_residual.push_back(yu.residual);
    tr.sylvester_residual.push_back(cu.sylvester_residual);
    tr.feasibility_violation.push_back(mask.max_violation(st.c));
    const double rel = cnorm > 0.0 ? dc / cnorm : (dc > 0.0 ? kInf : 0.0);
    tr.relative_change.push_back(rel);
    tr.iterations = k + 1;
    f_prev = f;

    if (rel <= cfg.epsilon) {
      tr.converged = true;
      break;
    }
  }
  res.completed = st.c;
  return res;
}

SolveResult solve_vtctf_tv(const Tensor3& g, const SamplingPattern& pattern,
                           const SolverConfig& cfg) {
  return solve_vtctf_tv(ObservationMask(pattern, g), cfg);
}

SolveResult solve_vtctf(const ObservationMask& mask, const SolverConfig& cfg) {
  return solve_vtctf_tv(mask, cfg.without_tv());
}

SolveResult solve_vtctf(const Tensor3& g, const SamplingPattern& pattern,
                        const SolverConfig& cfg) {
  return solve_vtctf(ObservationMask(pattern, g), cfg);
}

}  // namespace vtc
