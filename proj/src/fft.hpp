// SPDX-License-Identifier: Apache-2.0
// Thin RAII layer over FFTW for the length-v transforms along mode 3.
#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

namespace vtc::detail {

/// FFTW's planner is not re-entrant; execution with the new-array interface is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// 1-D plan of length n, created against scratch arrays and executed on
/// caller buffers. FFTW_UNALIGNED keeps the codelet choice independent of the
/// buffer address, so output is identical whichever thread runs it.
class FftPlan {
 public:
  enum class Kind { kRealToComplex, kComplexForward, kComplexBackward };

  FftPlan(int n, Kind kind) : n_(n) {
    std::vector<std::complex<double>> cbuf(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> cbuf2(static_cast<std::size_t>(n));
    std::vector<double> rbuf(static_cast<std::size_t>(n));
    auto* c1 = reinterpret_cast<fftw_complex*>(cbuf.data());
    auto* c2 = reinterpret_cast<fftw_complex*>(cbuf2.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(fftw_planner_mutex());
    switch (kind) {
      case Kind::kRealToComplex:
        plan_ = fftw_plan_dft_r2c_1d(n, rbuf.data(), c1, flags);
        break;
      case Kind::kComplexForward:
        plan_ = fftw_plan_dft_1d(n, c1, c2, FFTW_FORWARD, flags);
        break;
      case Kind::kComplexBackward:
        plan_ = fftw_plan_dft_1d(n, c1, c2, FFTW_BACKWARD, flags);
        break;
    }
  }

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  ~FftPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }

  [[nodiscard]] int size() const { return n_; }

  /// in: n reals; out: n/2 + 1 complex.
  void execute(double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(plan_, in, reinterpret_cast<fftw_complex*>(out));
  }

  /// in, out: n complex (out-of-place).
  void execute(std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(plan_, reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  int n_;
  fftw_plan plan_ = nullptr;
};

}  // namespace vtc::detail
