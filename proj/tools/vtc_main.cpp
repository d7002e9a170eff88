// SPDX-License-Identifier: Apache-2.0
// vtc: tensor completion experiments from the command line.
#include "vtc/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitIngest = 3;
constexpr int kExitSolver = 4;

struct Options {
  vtc::ExperimentSpec spec;
  std::string kind = "raw-tensor";
  std::string method = "vtctf-tv";
  std::string mask_file;
  long max_slices = 0;
  long v_min = 0;
  long v_max = 0;
  std::string recovered;
  std::vector<long> dims;
  std::string out_file;
  bool per_band = false;
};

void add_solver_flags(CLI::App& cmd, vtc::SolverConfig& cfg) {
  cmd.add_option("--v", cfg.v, "Variable Fourier length (0: 2p-1)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--rank", cfg.rank, "Factor rank q")->check(CLI::PositiveNumber);
  cmd.add_option("--alpha1", cfg.alpha1, "Vertical TV weight");
  cmd.add_option("--alpha2", cfg.alpha2, "Horizontal TV weight");
  cmd.add_option("--beta", cfg.beta, "Penalty for the vertical splitting");
  cmd.add_option("--mu", cfg.mu, "Penalty for the horizontal splitting");
  cmd.add_option("--rho1", cfg.rho1, "Proximal weight for X");
  cmd.add_option("--rho2", cfg.rho2, "Proximal weight for Y");
  cmd.add_option("--rho3", cfg.rho3, "Proximal weight for C");
  cmd.add_option("--eps", cfg.epsilon, "Relative-change stopping tolerance");
  cmd.add_option("--max-iter", cfg.max_iter, "Iteration limit");
  cmd.add_option("--inner-iters", cfg.inner_iters, "Inner passes of the C step");
}

void add_input_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--input", o.spec.input, "Image file, frame/band directory or raw tensor")->required();
  cmd.add_option("--kind", o.kind, "color-image | gray-video | multispectral | raw-tensor")
      ->check(CLI::IsMember({"color-image", "gray-video", "multispectral", "raw-tensor"}));
  cmd.add_option("--max-slices", o.max_slices, "Keep only the first frames or bands");
  cmd.add_option("--mask", o.mask_file, "Raw 0/1 tensor of observed entries (overrides --sr)");
  cmd.add_option("--sr", o.spec.sampling_rate, "Sampling rate in (0, 1]");
  cmd.add_option("--seed", o.spec.seed, "Seed for the mask and the factor initialization");
  cmd.add_option("--out", o.spec.output_dir, "Output directory");
  cmd.add_flag("--standard-ssim", o.spec.ssim.standard, "Conventional SSIM with c1 in the numerator");
}

void finish_spec(Options& o) {
  o.spec.kind = vtc::parse_data_kind(o.kind);
  o.spec.method = vtc::parse_method(o.method);
  o.spec.solver.seed = o.spec.seed;
  if (o.max_slices > 0) o.spec.max_slices = o.max_slices;
  if (!o.mask_file.empty()) o.spec.mask_file = o.mask_file;
}

void print_record(const vtc::RunRecord& r) {
  std::cout << vtc::to_string(r.method) << " v=" << r.v << " sr=" << vtc::format_double(r.sampling_rate)
            << " psnr=" << vtc::format_double(r.metrics.psnr) << " ssim=" << vtc::format_double(r.metrics.ssim)
            << " seconds=" << vtc::format_double(r.metrics.cpu_seconds) << " iterations=" << r.iterations
            << (r.converged ? "" : " (iteration limit)") << '\n';
}

int run_complete(Options& o) {
  finish_spec(o);
  print_record(vtc::run_experiment(o.spec).record);
  return 0;
}

int run_sweep(Options& o) {
  finish_spec(o);
  const auto [truth, pattern] = vtc::load_problem(o.spec);
  const vtc::Index p = truth.tubes();
  std::vector<vtc::Index> vs;
  const vtc::Index lo = o.v_min > 0 ? o.v_min : p;
  const vtc::Index hi = o.v_max > 0 ? o.v_max : 3 * p;
  for (vtc::Index v = lo; v <= hi; ++v) vs.push_back(v);
  const auto rows = vtc::v_sweep(truth, pattern, o.spec.method, o.spec.solver, vs, o.spec.ssim);
  std::filesystem::create_directories(o.spec.output_dir);
  vtc::write_sweep_csv(o.spec.output_dir / "sweep.csv", rows);
  for (const auto& r : rows) print_record(r);
  return 0;
}

int run_compare(Options& o) {
  finish_spec(o);
  const auto [truth, pattern] = vtc::load_problem(o.spec);
  const auto rows = vtc::compare_v(truth, pattern, o.spec.solver, o.spec.ssim);
  std::filesystem::create_directories(o.spec.output_dir);
  vtc::write_results_csv(o.spec.output_dir / "results.csv", rows);
  for (const auto& r : rows) print_record(r);
  return 0;
}

int run_metrics(Options& o) {
  finish_spec(o);
  const vtc::Tensor3 truth = vtc::ingest(o.spec.input, o.spec.kind, o.spec.max_slices);
  const vtc::Tensor3 recovered = vtc::read_raw_tensor(o.recovered);
  const auto report = vtc::evaluate_metrics(recovered, truth, o.spec.ssim);
  std::cout << "psnr=" << vtc::format_double(report.psnr) << " ssim=" << vtc::format_double(report.ssim) << '\n';
  if (o.per_band) {
    const auto bands = vtc::per_band_metrics(recovered, truth, o.spec.ssim);
    if (o.out_file.empty()) {
      for (std::size_t b = 0; b < bands.size(); ++b) {
        std::cout << "band " << b + 1 << " psnr=" << vtc::format_double(bands[b].psnr)
                  << " ssim=" << vtc::format_double(bands[b].ssim) << '\n';
      }
    } else {
      vtc::write_bands_csv(o.out_file, bands);
    }
  }
  return 0;
}

int run_make_mask(Options& o) {
  vtc::Dims dims;
  if (!o.spec.input.empty()) {
    dims = vtc::ingest(o.spec.input, vtc::parse_data_kind(o.kind), o.max_slices > 0 ? std::optional<vtc::Index>(o.max_slices) : std::nullopt).dims();
  } else if (o.dims.size() == 3) {
    dims = {o.dims[0], o.dims[1], o.dims[2]};
  } else {
    throw std::invalid_argument("make-mask needs --dims m,n,p or --input");
  }
  const auto pattern = vtc::make_mask(dims, o.spec.sampling_rate, o.spec.seed);
  vtc::write_raw_tensor(o.out_file, pattern.indicator());
  std::cout << "observed " << pattern.count() << " of " << dims.size() << " entries\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank tensor completion with the variable T-product"};
  app.require_subcommand(1);
  Options o;

  auto* complete = app.add_subcommand("complete", "Complete one tensor and score it against the input");
  add_input_flags(*complete, o);
  add_solver_flags(*complete, o.spec.solver);
  complete->add_option("--method", o.method, "vtctf-tv | vtctf")->check(CLI::IsMember({"vtctf-tv", "vtctf"}));

  auto* sweep = app.add_subcommand("sweep-v", "Run one completion per v and write sweep.csv");
  add_input_flags(*sweep, o);
  add_solver_flags(*sweep, o.spec.solver);
  sweep->add_option("--method", o.method, "vtctf-tv | vtctf")->check(CLI::IsMember({"vtctf-tv", "vtctf"}));
  sweep->add_option("--v-min", o.v_min, "Smallest v (default p)");
  sweep->add_option("--v-max", o.v_max, "Largest v (default 3p)");

  auto* compare = app.add_subcommand("compare", "Compare v = p against v = 2p - 1 and write results.csv");
  add_input_flags(*compare, o);
  add_solver_flags(*compare, o.spec.solver);

  auto* metrics = app.add_subcommand("metrics", "Score a recovered raw tensor against ground truth");
  metrics->add_option("--recovered", o.recovered, "Recovered raw tensor")->required();
  metrics->add_option("--input", o.spec.input, "Ground truth")->required();
  metrics->add_option("--kind", o.kind, "Ground-truth data kind")
      ->check(CLI::IsMember({"color-image", "gray-video", "multispectral", "raw-tensor"}));
  metrics->add_option("--max-slices", o.max_slices, "Keep only the first frames or bands");
  metrics->add_flag("--standard-ssim", o.spec.ssim.standard, "Conventional SSIM");
  metrics->add_flag("--per-band", o.per_band, "Also report every frontal slice");
  metrics->add_option("--out", o.out_file, "Write the per-band table to this CSV file");

  auto* mask = app.add_subcommand("make-mask", "Write a random 0/1 observation mask as a raw tensor");
  mask->add_option("--dims", o.dims, "m,n,p")->delimiter(',')->expected(3);
  mask->add_option("--input", o.spec.input, "Take dims from this data instead");
  mask->add_option("--kind", o.kind, "Data kind of --input");
  mask->add_option("--max-slices", o.max_slices, "Keep only the first frames or bands");
  mask->add_option("--sr", o.spec.sampling_rate, "Sampling rate in (0, 1]")->required();
  mask->add_option("--seed", o.spec.seed, "Seed");
  mask->add_option("--out", o.out_file, "Output raw tensor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (complete->parsed()) return run_complete(o);
    if (sweep->parsed()) return run_sweep(o);
    if (compare->parsed()) return run_compare(o);
    if (metrics->parsed()) return run_metrics(o);
    return run_make_mask(o);
  } catch (const vtc::IngestError& e) {
    std::cerr << "ingestion failed: " << e.what() << '\n';
    return kExitIngest;
  } catch (const vtc::NumericalError& e) {
    std::cerr << "solver aborted: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
