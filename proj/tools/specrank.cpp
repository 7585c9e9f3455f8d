// specrank - scores robot demonstration trajectories by total spectral
// power, ranks and quantile-filters them, and evaluates ranking quality
// against oracle labels and kinematic baselines.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "specrank/curation.hpp"
#include "specrank/dataset_io.hpp"
#include "specrank/errors.hpp"
#include "specrank/evaluation.hpp"
#include "specrank/spectral.hpp"
#include "specrank/synthgen.hpp"
#include "specrank/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace specrank;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ScoreArgs {
  std::string input;
  std::string format = "jsonl";
  std::string detrend = "none";
  bool exclude_dc = false;
  std::string length_normalize = "none";
  std::string output;
  std::string export_spectra;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

struct FilterArgs {
  std::string scores;
  std::string metric = "psd-w";
  double rho = 0.5;
  std::string manifest;
  std::string dataset;
  std::string out_dataset;
};

struct EvalArgs {
  std::string scores;
  std::string curves;
  double summary_rho = 0.5;
  std::optional<std::uint64_t> sample_random;
};

struct SynthArgs {
  int n_per_label = 100;
  int base_length = 120;
  std::uint64_t seed = 42;
  std::string out;
};

SpectralConfig spectral_config_from(const ScoreArgs& args) {
  SpectralConfig config;
  if (args.detrend == "none") {
    config.detrend = Detrend::none;
  } else if (args.detrend == "mean") {
    config.detrend = Detrend::mean;
  } else if (args.detrend == "linear") {
    config.detrend = Detrend::linear;
  } else {
    throw ValidationError("unknown detrend mode '" + args.detrend + "'");
  }
  config.include_dc = !args.exclude_dc;
  if (args.length_normalize == "none") {
    config.length_normalize = LengthNormalize::none;
  } else if (args.length_normalize == "per-sample") {
    config.length_normalize = LengthNormalize::per_sample;
  } else {
    throw ValidationError("unknown length-normalize mode '" +
                          args.length_normalize + "'");
  }
  return config;
}

int run_score(const ScoreArgs& args) {
  const auto start = std::chrono::steady_clock::now();

  const DatasetFormat format = parse_dataset_format(args.format);
  const SpectralConfig config = spectral_config_from(args);
  const Dataset dataset = load_dataset(args.input, format);
  const ScoreTable table = score_dataset(dataset, config, args.jobs);
  write_score_table(table, args.output);

  if (!args.export_spectra.empty()) {
    fs::create_directories(args.export_spectra);
    for (const auto& traj : dataset.trajectories) {
      const SpectralResult result = score_trajectory(traj, config);
      write_spectrum_csv(result,
                         fs::path(args.export_spectra) / (traj.id + ".csv"));
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::fprintf(stderr, "n=%zu elapsed_s=%.3f fingerprint=%s\n",
               table.size(), elapsed, table.config_fingerprint.c_str());
  return kExitOk;
}

int run_filter(const FilterArgs& args) {
  if ((args.dataset.empty()) != (args.out_dataset.empty())) {
    throw ValidationError(
        "--dataset and --out-dataset must be given together");
  }
  const ScoreTable table = load_score_table(args.scores);
  const RankMetric metric = parse_rank_metric(args.metric);
  const CurationManifest manifest = filter(table, metric, args.rho);
  write_manifest(manifest, args.manifest);
  if (!args.dataset.empty()) {
    const Dataset dataset = load_dataset(args.dataset, DatasetFormat::jsonl);
    materialize(dataset, manifest, args.out_dataset);
  }
  std::fprintf(stderr, "retained=%zu discarded=%zu threshold=%s\n",
               manifest.retained.size(), manifest.discarded.size(),
               format_double(manifest.threshold).c_str());
  return kExitOk;
}

int run_eval(const EvalArgs& args) {
  const ScoreTable table = load_score_table(args.scores);

  const std::vector<CurvePolicy> policies = {
      CurvePolicy::psd_w,        CurvePolicy::path_length,
      CurvePolicy::mean_jerk,    CurvePolicy::oracle,
      CurvePolicy::random_expectation,
  };
  std::vector<EvaluationCurve> curves;
  curves.reserve(policies.size() + 1);
  for (CurvePolicy policy : policies) {
    curves.push_back(remaining_quality_curve(table, policy));
  }
  if (args.sample_random.has_value()) {
    curves.push_back(sampled_random_curve(table, *args.sample_random));
  }
  emit_curves(curves, args.curves);

  const std::string dataset_name = fs::path(args.scores).stem().string();
  std::string header = "dataset,task,random,oracle,psd_w,path_length,mean_jerk";
  if (args.sample_random.has_value()) header += ",random_sampled";
  std::printf("%s\n", header.c_str());
  std::printf("%s,-", dataset_name.c_str());
  const std::vector<CurvePolicy> summary_order = {
      CurvePolicy::random_expectation, CurvePolicy::oracle, CurvePolicy::psd_w,
      CurvePolicy::path_length,        CurvePolicy::mean_jerk,
  };
  for (CurvePolicy policy : summary_order) {
    std::printf(",%.2f", summary_at(table, policy, args.summary_rho));
  }
  if (args.sample_random.has_value()) {
    const EvaluationCurve sampled = curves.back();
    const std::size_t m = discard_count(args.summary_rho, sampled.points.size());
    std::printf(",%.2f", sampled.points.at(m).second);
  }
  std::printf("\n");
  return kExitOk;
}

int run_synth(const SynthArgs& args) {
  SynthConfig config = default_synth_config();
  config.n_per_label = args.n_per_label;
  config.base_length = args.base_length;
  config.seed = args.seed;
  const Dataset dataset = generate_dataset(config);
  write_dataset_jsonl(dataset, args.out);

  std::size_t histogram[4] = {0, 0, 0, 0};
  for (const auto& traj : dataset.trajectories) {
    if (traj.label) ++histogram[static_cast<std::size_t>(*traj.label)];
  }
  std::fprintf(stderr, "n=%zu labels: 1=%zu 2=%zu 3=%zu\n", dataset.size(),
               histogram[1], histogram[2], histogram[3]);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-power scoring, ranking and curation of robot "
               "demonstration trajectories"};
  app.set_version_flag("--version", std::string("specrank ") + kVersion);
  app.require_subcommand(1);

  ScoreArgs score_args;
  auto* score = app.add_subcommand(
      "score", "Score every demonstration and write a score table CSV");
  score->add_option("--input", score_args.input, "Input dataset path")
      ->required();
  score->add_option("--format", score_args.format, "Input format")
      ->check(CLI::IsMember({"jsonl", "csv-dir"}))
      ->capture_default_str();
  score->add_option("--detrend", score_args.detrend, "Per-dimension detrend")
      ->check(CLI::IsMember({"none", "mean", "linear"}))
      ->capture_default_str();
  score->add_flag("--exclude-dc", score_args.exclude_dc,
                  "Zero the k=0 bin before summing");
  score
      ->add_option("--length-normalize", score_args.length_normalize,
                   "Divide power by the sample count")
      ->check(CLI::IsMember({"none", "per-sample"}))
      ->capture_default_str();
  score->add_option("--output", score_args.output, "Score table CSV path")
      ->required();
  score->add_option("--jobs", score_args.jobs,
                    "Scoring threads (output is independent of this)")
      ->capture_default_str();
  score->add_option("--export-spectra", score_args.export_spectra,
                    "Directory for per-trajectory spectrum CSVs");

  FilterArgs filter_args;
  auto* filter = app.add_subcommand(
      "filter", "Rank by a metric and discard the worst fraction rho");
  filter->add_option("--scores", filter_args.scores, "Score table CSV")
      ->required();
  filter->add_option("--metric", filter_args.metric, "Ranking metric")
      ->check(CLI::IsMember({"psd-w", "path-length", "mean-jerk"}))
      ->capture_default_str();
  filter->add_option("--rho", filter_args.rho, "Fraction to discard, [0,1)")
      ->required();
  filter->add_option("--manifest", filter_args.manifest, "Manifest JSON path")
      ->required();
  filter->add_option("--dataset", filter_args.dataset,
                     "Dataset JSONL to materialize from");
  filter->add_option("--out-dataset", filter_args.out_dataset,
                     "Filtered dataset JSONL path");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand(
      "eval", "Remaining-quality curves and summary against oracle labels");
  eval->add_option("--scores", eval_args.scores, "Labeled score table CSV")
      ->required();
  eval->add_option("--curves", eval_args.curves, "Curve CSV output path")
      ->required();
  eval->add_option("--summary-rho", eval_args.summary_rho,
                   "Filter fraction for the summary row")
      ->capture_default_str();
  eval->add_option("--sample-random", eval_args.sample_random,
                   "Also emit one seeded random-removal realization");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand(
      "synth", "Generate a labeled synthetic demonstration dataset");
  synth->add_option("--n-per-label", synth_args.n_per_label,
                    "Demos per label class")
      ->capture_default_str();
  synth->add_option("--base-length", synth_args.base_length,
                    "Steps in the clean base motion (>= 16)")
      ->capture_default_str();
  synth->add_option("--seed", synth_args.seed, "Master seed")
      ->capture_default_str();
  synth->add_option("--out", synth_args.out, "Output JSONL path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (score->parsed()) return run_score(score_args);
    if (filter->parsed()) return run_filter(filter_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (synth->parsed()) return run_synth(synth_args);
    std::fprintf(stderr, "no subcommand given\n");
    return kExitUsage;
  } catch (const ValidationError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitFailure;
  }
}
