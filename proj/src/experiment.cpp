// SPDX-License-Identifier: Apache-2.0
#include "vtc/experiment.hpp"

#include <ctime>
#include <fstream>

namespace vtc {

namespace fs = std::filesystem;

namespace {

std::ofstream open_csv(const fs::path& path, std::string_view header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << header << '\n';
  return out;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "vtctf-tv") return Method::kVtctfTv;
  if (name == "vtctf") return Method::kVtctf;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view to_string(Method m) { return m == Method::kVtctfTv ? "vtctf-tv" : "vtctf"; }

void ExperimentSpec::validate() const {
  if (!(sampling_rate > 0.0 && sampling_rate <= 1.0)) {
    throw std::invalid_argument("sampling rate must lie in (0, 1]");
  }
}

RunOutcome run_method(const Tensor3& truth, const SamplingPattern& pattern, Method method,
                      const SolverConfig& cfg, const SsimOptions& ssim) {
  const ObservationMask mask(pattern, truth);
  const std::clock_t start = std::clock();
  SolveResult res = method == Method::kVtctfTv ? solve_vtctf_tv(mask, cfg) : solve_vtctf(mask, cfg);
  const double seconds = static_cast<double>(std::clock() - start) / CLOCKS_PER_SEC;

  RunOutcome out;
  out.record.method = method;
  out.record.v = cfg.resolved_v(truth.tubes());
  out.record.sampling_rate = pattern.rate();
  out.record.metrics = evaluate_metrics(res.completed, truth, ssim);
  out.record.metrics.cpu_seconds = seconds;
  out.record.iterations = res.trace.iterations;
  out.record.converged = res.trace.converged;
  out.completed = std::move(res.completed);
  out.trace = std::move(res.trace);
  return out;
}

std::pair<Tensor3, SamplingPattern> load_problem(const ExperimentSpec& spec) {
  spec.validate();
  Tensor3 truth = ingest(spec.input, spec.kind, spec.max_slices);
  if (!spec.mask_file) {
    SamplingPattern pattern = make_mask(truth.dims(), spec.sampling_rate, spec.seed);
    return {std::move(truth), std::move(pattern)};
  }
  const Tensor3 indicator = read_raw_tensor(*spec.mask_file);
  if (indicator.dims() != truth.dims()) {
    throw IngestError("mask dims " + to_string(indicator.dims()) + " do not match data dims " +
                      to_string(truth.dims()));
  }
  return {std::move(truth), SamplingPattern::from_indicator(indicator)};
}

RunOutcome run_experiment(const ExperimentSpec& spec) {
  const auto [truth, pattern] = load_problem(spec);
  RunOutcome out = run_method(truth, pattern, spec.method, spec.solver, spec.ssim);

  fs::create_directories(spec.output_dir);
  write_raw_tensor(spec.output_dir / "recovered.vtt", out.completed);
  write_results_csv(spec.output_dir / "results.csv", {out.record});
  if (spec.kind == DataKind::kMultispectral) {
    write_bands_csv(spec.output_dir / "bands.csv", per_band_metrics(out.completed, truth, spec.ssim));
  }
  return out;
}

std::vector<Index> default_v_range(Index p) {
  std::vector<Index> vs;
  for (Index v = p; v <= 3 * p; ++v) vs.push_back(v);
  return vs;
}

std::vector<RunRecord> v_sweep(const Tensor3& truth, const SamplingPattern& pattern, Method method,
                               const SolverConfig& cfg, const std::vector<Index>& v_values,
                               const SsimOptions& ssim) {
  const Index p = truth.tubes();
  for (Index v : v_values) {
    if (v < p || v > 3 * p) throw std::invalid_argument("v_sweep: v must lie in [p, 3p]");
  }
  std::vector<RunRecord> rows;
  rows.reserve(v_values.size());
  for (Index v : v_values) {
    SolverConfig run_cfg = cfg;
    run_cfg.v = v;
    rows.push_back(run_method(truth, pattern, method, run_cfg, ssim).record);
  }
  return rows;
}

std::vector<RunRecord> compare_v(const Tensor3& truth, const SamplingPattern& pattern,
                                 const SolverConfig& cfg, const SsimOptions& ssim) {
  const Index p = truth.tubes();
  return v_sweep(truth, pattern, Method::kVtctfTv, cfg, {p, 2 * p - 1}, ssim);
}

void write_results_csv(const fs::path& path, const std::vector<RunRecord>& rows) {
  auto out = open_csv(path, kResultsHeader);
  for (const auto& r : rows) {
    write_csv_row(out, {std::string(to_string(r.method)), std::to_string(r.v), format_double(r.sampling_rate),
                        format_double(r.metrics.psnr), format_double(r.metrics.ssim),
                        format_double(r.metrics.cpu_seconds), std::to_string(r.iterations)});
  }
}

void write_sweep_csv(const fs::path& path, const std::vector<RunRecord>& rows) {
  auto out = open_csv(path, kSweepHeader);
  for (const auto& r : rows) {
    write_csv_row(out, {std::to_string(r.v), format_double(r.metrics.psnr), format_double(r.metrics.ssim),
                        format_double(r.metrics.cpu_seconds), std::to_string(r.iterations)});
  }
}

void write_bands_csv(const fs::path& path, const std::vector<MetricsReport>& bands) {
  auto out = open_csv(path, kBandsHeader);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    write_csv_row(out, {std::to_string(b + 1), format_double(bands[b].psnr), format_double(bands[b].ssim)});
  }
  const MetricsReport avg = average_metrics(bands);
  write_csv_row(out, {"mean", format_double(avg.psnr), format_double(avg.ssim)});
}

}  // namespace vtc
