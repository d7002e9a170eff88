// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/tensor.hpp"

#include <vector>

namespace vtc {

/// 10 log10( m n p ||C_true||_inf^2 / ||C - C_true||_F^2 ).
/// Identical tensors give +infinity.
double psnr(const Tensor3& c, const Tensor3& c_true);

struct SsimOptions {
  double c1 = 1e-4;
  double c2 = 9e-4;
  /// Use the conventional global SSIM,
  /// (2 mu_C mu_T + c1)(2 sigma_CT + c2) / ((mu_C^2 + mu_T^2 + c1)(sigma_C^2 + sigma_T^2 + c2)).
  bool standard = false;
};

/// Global-statistics SSIM over the whole tensor (no sliding window):
///
///   (2 mu_C mu_T)(2 sigma_CT + c2) / ((mu_C^2 mu_T^2 + c1)(sigma_C^2 + sigma_T^2 + c2))
///
/// with population means, variances and covariance. This literal form (no c1
/// in the numerator, mu_C^2 mu_T^2 as a product) is not bounded by 1; set
/// `standard` for the conventional form, which is.
double ssim(const Tensor3& c, const Tensor3& c_true, const SsimOptions& opts = {});

struct MetricsReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double cpu_seconds = 0.0;
};

MetricsReport evaluate_metrics(const Tensor3& c, const Tensor3& c_true,
                               const SsimOptions& opts = {});

/// Metrics of each frontal slice (band / frame / channel) taken on its own.
std::vector<MetricsReport> per_band_metrics(const Tensor3& c, const Tensor3& c_true,
                                            const SsimOptions& opts = {});

/// Mean PSNR and SSIM across bands. Infinite band PSNRs make the mean infinite.
MetricsReport average_metrics(const std::vector<MetricsReport>& bands);

}  // namespace vtc
