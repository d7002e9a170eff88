// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/mask.hpp"
#include "vtc/spectral.hpp"
#include "vtc/tensor.hpp"
#include "vtc/tv.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace vtc {

/// Solver aborted on non-finite iterates or a failed subproblem solve.
class SolverAbort : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct SolverConfig {
  /// Length of the variable Fourier domain; 0 selects 2p - 1.
  Index v = 0;
  /// Factor rank q, uniform over all spectral slices.
  Index rank = 30;
  double alpha1 = 1e-5;
  double alpha2 = 1e-5;
  double beta = 1e-5;
  double mu = 1e-5;
  double rho1 = 5e-6;
  double rho2 = 5e-6;
  double rho3 = 5e-6;
  /// Stop once ||C^{k+1} - C^k||_F^2 / ||C^{k+1}||_F^2 <= epsilon.
  double epsilon = 1e-5;
  int max_iter = 200;
  std::uint64_t seed = 0;
  /// Passes of the shrink / solve / project / multiplier sequence per outer iteration.
  int inner_iters = 1;
  double imag_tolerance = kImagTolerance;
  /// Relative residual allowed for the X, Y normal equations and the C Sylvester solve.
  double residual_tolerance = 1e-8;
  /// Slack of the runtime sufficient-decrease monitor.
  double h1_slack = 1e-9;
  bool check_residuals = true;

  [[nodiscard]] Index resolved_v(Index p) const { return v > 0 ? v : 2 * p - 1; }
  [[nodiscard]] bool uses_tv() const { return alpha1 > 0.0 || alpha2 > 0.0; }
  [[nodiscard]] double rho_min() const;

  /// Throws std::invalid_argument if a parameter is out of range for data of size `dims`.
  void validate(const Dims& dims) const;

  /// The same settings with the TV machinery switched off (alpha = beta = mu = 0).
  [[nodiscard]] SolverConfig without_tv() const;
};

/// Iterate of the proximal alternating minimization.
///
/// The factors live in the variable Fourier domain (v slices each); `cbar`
/// caches forward_transform(c).
struct SolverState {
  SpectralTensor xbar;
  SpectralTensor ybar;
  Tensor3 c;
  SpectralTensor cbar;
  Tensor3 q1;
  Tensor3 q2;
  Tensor3 s;
  Tensor3 t;
  int iteration = 0;
};

/// Per-iteration diagnostics; index k describes the step from iterate k to k + 1,
/// except `objective`, which also carries the initial value at index 0.
struct SolverTrace {
  std::vector<double> objective;
  std::vector<double> relative_change;
  /// f(u^{k+1}) + (rho_min / 2) ||u^{k+1} - u^k||^2 - f(u^k); <= slack when H1 holds.
  std::vector<double> decrease_gap;
  std::vector<double> x_residual;
  std::vector<double> y_residual;
  std::vector<double> sylvester_residual;
  std::vector<double> feasibility_violation;
  int iterations = 0;
  bool converged = false;

  [[nodiscard]] double max_decrease_gap() const;
  [[nodiscard]] int decrease_violations(double slack) const;
};

struct SolveResult {
  Tensor3 completed;
  SolverTrace trace;
  SolverState state;
};

/// Seeded initial iterate: C^0 = P_Omega(G), factor spectra with uniform
/// entries in [0, 1/sqrt(q)] on slices 0..v/2 mirrored to keep them
/// conjugate symmetric, multipliers and auxiliaries zero.
SolverState initialize_state(const ObservationMask& mask, const SolverConfig& cfg);

/// 1/2 ||X *_v Y - C||_F^2 + alpha1 ||D1 *_v C||_1 + alpha2 ||C *_v D2||_1 + Phi(C)
/// for real factors; +infinity when C violates the observations.
double evaluate_objective(const Tensor3& x, const Tensor3& y, const Tensor3& c,
                          const ObservationMask& mask, const SolverConfig& cfg);

/// Same objective with the factors given as spectra; X *_v Y is ifft(Xbar *_H Ybar).
double evaluate_objective(const SpectralTensor& xbar, const SpectralTensor& ybar,
                          const Tensor3& c, const ObservationMask& mask,
                          const SolverConfig& cfg);

/// Objective the alternating scheme descends on: the data term is measured in
/// the variable Fourier domain, (1/2v) sum_l ||Xbar_l Ybar_l - Cbar_l||_F^2,
/// plus the TV terms and Phi(C). Equals evaluate_objective when v = p.
double spectral_objective(const SpectralTensor& xbar, const SpectralTensor& ybar,
                          const Tensor3& c, const SpectralTensor& cbar,
                          const ObservationMask& mask, const SolverConfig& cfg);

/// T_eta(x) = sign(x) max(|x| - eta, 0).
double soft_threshold(double x, double eta);

/// Entrywise soft threshold.
Tensor3 soft_threshold(const Tensor3& x, double eta);

struct FactorUpdate {
  SpectralTensor factor;
  /// Largest per-slice relative residual of the normal equations.
  double residual = 0.0;
};

/// Xbar_l = (rho1 Xbar_l^k + Cbar_l Ybar_l^H)(Ybar_l Ybar_l^H + rho1 I)^{-1}.
FactorUpdate update_X(const SolverState& state, const SolverConfig& cfg);

/// Ybar_l = (Xbar_l^H Xbar_l + rho2 I)^{-1}(Xbar_l^H Cbar_l + rho2 Ybar_l^k), using state.xbar.
FactorUpdate update_Y(const SolverState& state, const SolverConfig& cfg);

/// Solves (1 + rho3) C + beta H_m C + mu C H_n = R for one spectral slice by
/// diagonalizing H_m and H_n with the DCT bases.
Eigen::MatrixXcd solve_diagonalized_sylvester(const Eigen::MatrixXcd& r, double beta, double mu,
                                              double rho3, const DctDiagonalization& dm,
                                              const DctDiagonalization& dn);

/// ||(1 + rho3) C + beta H_m C + mu C H_n - R||_F / ||R||_F.
double sylvester_residual(const Eigen::MatrixXcd& c, const Eigen::MatrixXcd& r, double beta,
                          double mu, double rho3);

struct CUpdate {
  Tensor3 c;
  SpectralTensor cbar;
  Tensor3 q1;
  Tensor3 q2;
  Tensor3 s;
  Tensor3 t;
  double sylvester_residual = 0.0;
};

/// The C step with the current state.xbar / state.ybar: shrink Q1, Q2, form
/// R per slice, solve the diagonalized Sylvester system, map back, restore the
/// observed entries, then update the multipliers S, T.
CUpdate update_C(const SolverState& state, const SolverConfig& cfg, const ObservationMask& mask,
                 const DctDiagonalization& dm, const DctDiagonalization& dn);

/// Proximal alternating minimization with TV regularization. G entries must
/// lie in [0, 1]; entries of G outside Omega are ignored.
SolveResult solve_vtctf_tv(const ObservationMask& mask, const SolverConfig& cfg);
SolveResult solve_vtctf_tv(const Tensor3& g, const SamplingPattern& pattern,
                           const SolverConfig& cfg);

/// The TV-free variant (alpha1 = alpha2 = 0, beta / mu machinery bypassed).
SolveResult solve_vtctf(const ObservationMask& mask, const SolverConfig& cfg);
SolveResult solve_vtctf(const Tensor3& g, const SamplingPattern& pattern,
                        const SolverConfig& cfg);

}  // namespace vtc
