// SPDX-License-Identifier: Apache-2.0
#include "vtc/metrics.hpp"

#include <cmath>
#include <limits>

namespace vtc {

namespace {

void require_same(const Tensor3& a, const Tensor3& b, const char* what) {
  if (a.dims() != b.dims()) {
    throw DimensionError(std::string(what) + ": dims " + to_string(a.dims()) + " vs " +
                         to_string(b.dims()));
  }
}

Tensor3 band(const Tensor3& t, Index k) {
  Tensor3 out(t.rows(), t.cols(), 1);
  out.slice(0) = t.slice(k);
  return out;
}

}  // namespace

double psnr(const Tensor3& c, const Tensor3& c_true) {
  require_same(c, c_true, "psnr");
  const double err = (c - c_true).squared_norm();
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  const double peak = c_true.max_abs();
  return 10.0 * std::log10(static_cast<double>(c.size()) * peak * peak / err);
}

double ssim(const Tensor3& c, const Tensor3& c_true, const SsimOptions& opts) {
  require_same(c, c_true, "ssim");
  const auto x = c.data();
  const auto y = c_true.data();
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double vx = 0.0;
  double vy = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cov += dx * dy;
  }
  vx /= n;
  vy /= n;
  cov /= n;
  if (opts.standard) {
    return (2.0 * mx * my + opts.c1) * (2.0 * cov + opts.c2) /
           ((mx * mx + my * my + opts.c1) * (vx + vy + opts.c2));
  }
  return (2.0 * mx * my) * (2.0 * cov + opts.c2) /
         ((mx * mx * my * my + opts.c1) * (vx + vy + opts.c2));
}

MetricsReport evaluate_metrics(const Tensor3& c, const Tensor3& c_true, const SsimOptions& opts) {
  return MetricsReport{psnr(c, c_true), ssim(c, c_true, opts), 0.0};
}

std::vector<MetricsReport> per_band_metrics(const Tensor3& c, const Tensor3& c_true,
                                            const SsimOptions& opts) {
  require_same(c, c_true, "per_band_metrics");
  std::vector<MetricsReport> out;
  out.reserve(static_cast<std::size_t>(c.tubes()));
  for (Index k = 0; k < c.tubes(); ++k) out.push_back(evaluate_metrics(band(c, k), band(c_true, k), opts));
  return out;
}

MetricsReport average_metrics(const std::vector<MetricsReport>& bands) {
  MetricsReport avg;
  if (bands.empty()) return avg;
  for (const auto& b : bands) {
    avg.psnr += b.psnr;
    avg.ssim += b.ssim;
    avg.cpu_seconds += b.cpu_seconds;
  }
  avg.psnr /= static_cast<double>(bands.size());
  avg.ssim /= static_cast<double>(bands.size());
  return avg;
}

}  // namespace vtc
