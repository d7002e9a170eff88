// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/tensor.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace vtc {

/// The index set Omega of observed entries of an m x n x p tensor.
///
/// Entries are kept as sorted linear offsets into Tensor3 storage plus a dense
/// membership flag per entry.
class SamplingPattern {
 public:
  SamplingPattern() = default;
  /// Throws on out-of-range or duplicate offsets.
  SamplingPattern(Dims dims, std::vector<Index> offsets);

  static SamplingPattern full(Dims dims);
  /// Pattern of the nonzero entries of `indicator`.
  static SamplingPattern from_indicator(const Tensor3& indicator);

  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] const std::vector<Index>& offsets() const { return offsets_; }
  [[nodiscard]] Index count() const { return static_cast<Index>(offsets_.size()); }
  [[nodiscard]] double rate() const;
  [[nodiscard]] bool contains(Index offset) const { return flags_[static_cast<std::size_t>(offset)] != 0; }
  [[nodiscard]] bool contains(Index i, Index j, Index k) const;

  /// 0/1 tensor with ones on observed entries.
  [[nodiscard]] Tensor3 indicator() const;

  friend bool operator==(const SamplingPattern& a, const SamplingPattern& b) {
    return a.dims_ == b.dims_ && a.offsets_ == b.offsets_;
  }

 private:
  Dims dims_{};
  std::vector<Index> offsets_;
  std::vector<std::uint8_t> flags_;
};

/// Uniformly random subset of exactly round(rate * m n p) entries,
/// deterministic for a given seed. rate must lie in (0, 1].
SamplingPattern make_mask(Dims dims, double rate, std::uint64_t seed);

/// Observed entries G_Omega: a sampling pattern together with the observed values.
class ObservationMask {
 public:
  ObservationMask() = default;
  /// From explicit (i, j, k) triples; throws on out-of-range or duplicate triples.
  ObservationMask(Dims dims, const std::vector<std::array<Index, 3>>& observed,
                  std::vector<double> values);
  /// Reads the observed values out of `g`.
  ObservationMask(SamplingPattern pattern, const Tensor3& g);

  [[nodiscard]] const SamplingPattern& pattern() const { return pattern_; }
  [[nodiscard]] const Dims& dims() const { return pattern_.dims(); }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] Index count() const { return pattern_.count(); }
  [[nodiscard]] double rate() const { return pattern_.rate(); }

  /// P_Omega(G): observed values, zeros elsewhere.
  [[nodiscard]] Tensor3 zero_filled() const;

  /// Overwrites observed entries of `c` with G.
  void project(Tensor3& c) const;

  /// True iff c equals G exactly on Omega.
  [[nodiscard]] bool satisfied_by(const Tensor3& c) const;

  /// max over Omega of |c - G|.
  [[nodiscard]] double max_violation(const Tensor3& c) const;

 private:
  SamplingPattern pattern_;
  std::vector<double> values_;
};

}  // namespace vtc
