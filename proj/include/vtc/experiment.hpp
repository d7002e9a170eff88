// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vtc/io.hpp"
#include "vtc/mask.hpp"
#include "vtc/metrics.hpp"
#include "vtc/solver.hpp"

#include <filesystem>
#include <optional>
#include <utility>
#include <string>
#include <vector>

namespace vtc {

enum class Method { kVtctfTv, kVtctf };

/// "vtctf-tv" or "vtctf".
Method parse_method(std::string_view name);
std::string_view to_string(Method m);

struct ExperimentSpec {
  std::filesystem::path input;
  DataKind kind = DataKind::kRawTensor;
  std::optional<Index> max_slices;
  Method method = Method::kVtctfTv;
  /// 0/1 raw tensor of observed entries; when absent a mask is drawn from
  /// sampling_rate and seed.
  std::optional<std::filesystem::path> mask_file;
  double sampling_rate = 0.5;
  std::uint64_t seed = 0;
  SolverConfig solver;
  SsimOptions ssim;
  std::filesystem::path output_dir = ".";

  /// Throws std::invalid_argument for a rate outside (0, 1].
  void validate() const;
};

/// One row of the results table.
struct RunRecord {
  Method method = Method::kVtctfTv;
  Index v = 0;
  double sampling_rate = 0.0;
  MetricsReport metrics;
  int iterations = 0;
  bool converged = false;
};

struct RunOutcome {
  RunRecord record;
  Tensor3 completed;
  SolverTrace trace;
};

/// Solves one completion problem and scores it against `truth`; cpu_seconds
/// covers the solver only.
RunOutcome run_method(const Tensor3& truth, const SamplingPattern& pattern, Method method,
                      const SolverConfig& cfg, const SsimOptions& ssim = {});

/// Loads the input and the observation pattern for a spec.
std::pair<Tensor3, SamplingPattern> load_problem(const ExperimentSpec& spec);

/// Ingests the input, draws the mask, runs the configured method and writes into output_dir:
/// recovered.vtt, results.csv and, for multispectral data, bands.csv.
RunOutcome run_experiment(const ExperimentSpec& spec);

/// One run per v with a shared mask and seed. Every v must lie in [p, 3p].
std::vector<RunRecord> v_sweep(const Tensor3& truth, const SamplingPattern& pattern, Method method,
                               const SolverConfig& cfg, const std::vector<Index>& v_values,
                               const SsimOptions& ssim = {});

/// {p, p + 1, ..., 3p}.
std::vector<Index> default_v_range(Index p);

/// VTCTF-TV at v = p and at v = 2p - 1 on the same mask.
std::vector<RunRecord> compare_v(const Tensor3& truth, const SamplingPattern& pattern,
                                 const SolverConfig& cfg, const SsimOptions& ssim = {});

inline constexpr std::string_view kResultsHeader = "method,v,sr,psnr,ssim,seconds,iterations";
inline constexpr std::string_view kSweepHeader = "v,psnr,ssim,seconds,iterations";
inline constexpr std::string_view kBandsHeader = "band,psnr,ssim";

void write_results_csv(const std::filesystem::path& path, const std::vector<RunRecord>& rows);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<RunRecord>& rows);
void write_bands_csv(const std::filesystem::path& path, const std::vector<MetricsReport>& bands);

}  // namespace vtc
