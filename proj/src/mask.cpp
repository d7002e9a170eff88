// SPDX-License-Identifier: Apache-2.0
#include "vtc/mask.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vtc {

SamplingPattern::SamplingPattern(Dims dims, std::vector<Index> offsets)
    : dims_(dims), offsets_(std::move(offsets)) {
  if (dims.rows < 1 || dims.cols < 1 || dims.tubes < 1) {
    throw DimensionError("SamplingPattern: dims must be positive");
  }
  std::sort(offsets_.begin(), offsets_.end());
  flags_.assign(static_cast<std::size_t>(dims.size()), 0);
  for (std::size_t n = 0; n < offsets_.size(); ++n) {
    const Index o = offsets_[n];
    if (o < 0 || o >= dims.size()) {
      throw DimensionError("SamplingPattern: offset " + std::to_string(o) + " out of range");
    }
    if (n > 0 && offsets_[n - 1] == o) {
      throw std::invalid_argument("SamplingPattern: duplicate entry at offset " +
                                  std::to_string(o));
    }
    flags_[static_cast<std::size_t>(o)] = 1;
  }
}

SamplingPattern SamplingPattern::full(Dims dims) {
  std::vector<Index> all(static_cast<std::size_t>(dims.size()));
  std::iota(all.begin(), all.end(), Index{0});
  return SamplingPattern(dims, std::move(all));
}

SamplingPattern SamplingPattern::from_indicator(const Tensor3& indicator) {
  std::vector<Index> offsets;
  const auto d = indicator.data();
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (d[n] != 0.0) offsets.push_back(static_cast<Index>(n));
  }
  return SamplingPattern(indicator.dims(), std::move(offsets));
}

double SamplingPattern::rate() const {
  return static_cast<double>(count()) / static_cast<double>(dims_.size());
}

bool SamplingPattern::contains(Index i, Index j, Index k) const {
  return contains(i + dims_.rows * (j + dims_.cols * k));
}

Tensor3 SamplingPattern::indicator() const {
  Tensor3 t(dims_);
  auto d = t.data();
  for (Index o : offsets_) d[static_cast<std::size_t>(o)] = 1.0;
  return t;
}

SamplingPattern make_mask(Dims dims, double rate, std::uint64_t seed) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("make_mask: sampling rate must lie in (0, 1]");
  }
  const Index total = dims.size();
  const auto keep = static_cast<Index>(std::llround(rate * static_cast<double>(total)));
  // Partial Fisher-Yates: the first `keep` positions form a uniform subset.
  std::vector<Index> perm(static_cast<std::size_t>(total));
  std::iota(perm.begin(), perm.end(), Index{0});
  detail::Rng rng(seed);
  for (Index n = 0; n < keep; ++n) {
    const auto pick = n + static_cast<Index>(rng.below(static_cast<std::uint64_t>(total - n)));
    std::swap(perm[n], perm[pick]);
  }
  perm.resize(static_cast<std::size_t>(keep));
  return SamplingPattern(dims, std::move(perm));
}

ObservationMask::ObservationMask(Dims dims, const std::vector<std::array<Index, 3>>& observed,
                                 std::vector<double> values) {
  if (observed.size() != values.size()) {
    throw std::invalid_argument("ObservationMask: one value per observed triple required");
  }
  std::vector<std::pair<Index, double>> entries;
  entries.reserve(observed.size());
  for (std::size_t n = 0; n < observed.size(); ++n) {
    const auto [i, j, k] = observed[n];
    if (i < 0 || i >= dims.rows || j < 0 || j >= dims.cols || k < 0 || k >= dims.tubes) {
      throw DimensionError("ObservationMask: triple out of range");
    }
    entries.emplace_back(i + dims.rows * (j + dims.cols * k), values[n]);
  }
  std::sort(entries.begin(), entries.end());
  std::vector<Index> offsets;
  offsets.reserve(entries.size());
  values_.reserve(entries.size());
  for (const auto& [o, val] : entries) {
    offsets.push_back(o);
    values_.push_back(val);
  }
  pattern_ = SamplingPattern(dims, std::move(offsets));
}

ObservationMask::ObservationMask(SamplingPattern pattern, const Tensor3& g)
    : pattern_(std::move(pattern)) {
  if (g.dims() != pattern_.dims()) {
    throw DimensionError("ObservationMask: tensor dims " + to_string(g.dims()) +
                         " do not match pattern dims " + to_string(pattern_.dims()));
  }
  values_.reserve(pattern_.offsets().size());
  const auto d = g.data();
  for (Index o : pattern_.offsets()) values_.push_back(d[static_cast<std::size_t>(o)]);
}

Tensor3 ObservationMask::zero_filled() const {
  Tensor3 c(dims());
  project(c);
  return c;
}

void ObservationMask::project(Tensor3& c) const {
  if (c.dims() != dims()) throw DimensionError("ObservationMask::project: dims mismatch");
  auto d = c.data();
  const auto& offs = pattern_.offsets();
  for (std::size_t n = 0; n < offs.size(); ++n) d[static_cast<std::size_t>(offs[n])] = values_[n];
}

bool ObservationMask::satisfied_by(const Tensor3& c) const {
  return c.dims() == dims() && max_violation(c) == 0.0;
}

double ObservationMask::max_violation(const Tensor3& c) const {
  if (c.dims() != dims()) throw DimensionError("ObservationMask: dims mismatch");
  const auto d = c.data();
  const auto& offs = pattern_.offsets();
  double worst = 0.0;
  for (std::size_t n = 0; n < offs.size(); ++n) {
    worst = std::max(worst, std::abs(d[static_cast<std::size_t>(offs[n])] - values_[n]));
  }
  return worst;
}

}  // namespace vtc
