#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qkmi/independence.hpp"

namespace qkmi {

// Full sweep description. Cells are the Cartesian product of the grids;
// every tunable that affects numbers is echoed into reports.
struct ExperimentConfig {
  std::vector<DistributionFamily> families{DistributionFamily::Gaussian};
  std::vector<double> variances{1.0};
  std::vector<ModelForm> models{ModelForm::Linear};
  std::vector<double> coefficients{100.0};
  std::vector<int> sample_sizes{10, 30, 50};
  std::vector<KernelSpec> kernels{GaussianKernel{}};
  EstimatorConfig estimator = MIConfig{};
  int trials = 100;
  std::uint64_t base_seed = 0;
  bool gaussian_noise = false;
  std::string out_prefix;  // empty: emit_report not called by the CLI
};

struct CellCoord {
  DistributionFamily family = DistributionFamily::Gaussian;
  double variance = 1.0;
  ModelForm model = ModelForm::Linear;
  double coefficient = 100.0;
  int n_samples = 10;
  KernelSpec kernel = GaussianKernel{};
};

struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  Verdict verdict;
  double wall_seconds = 0;
};

struct CellResult {
  CellCoord coord;
  double correct_ratio_pct = 0;  // 100 * successes / trials
  double slack_mean = 0;         // over all trials, failures included
  double slack_std = 0;          // sample standard deviation (0 when T = 1)
  std::vector<TrialRecord> records;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;
};

// The seed of one trial: a pure function of the base seed, the data
// coordinates of the cell and the trial index. Kernel and estimator are
// deliberately excluded so every kernel variant sees identical scenarios.
std::uint64_t trial_seed(std::uint64_t base_seed, const CellCoord& coord,
                         bool gaussian_noise, int trial_index);

// T independent trials with derived seeds. Trials run under OpenMP;
// records land in index order and aggregation is a serial pass, so the
// result is identical at any thread count. A failing trial aborts the
// cell with the trial index attached to the rethrown error.
CellResult run_cell(const CellCoord& coord, const EstimatorConfig& estimator,
                    int trials, std::uint64_t base_seed, bool gaussian_noise);

// One run_cell per grid-product cell.
ExperimentReport run_sweep(const ExperimentConfig& config);

// Writes <prefix>.csv (one row per cell), <prefix>.json (config echo plus
// per-trial records) and <prefix>_plot.csv (long format keyed by the
// sweep axis). I/O failures surface as Error with the path.
void emit_report(const ExperimentReport& report, const std::string& prefix);

// Aggregation of trial records into a cell result (exposed for tests).
CellResult aggregate_cell(const CellCoord& coord,
                          std::vector<TrialRecord> records);

// Flat key/value configuration, mirroring the CLI flags (keys without the
// leading "--"). Unknown keys and malformed values raise ParameterError.
ExperimentConfig make_config(const std::map<std::string, std::string>& kv);

// Parses "key = value" lines ('#' comments, blank lines ignored).
std::map<std::string, std::string> load_config_file(const std::string& path);

// CSV with a header row and numeric columns; returns column names and
// values. Used by the `estimate` subcommand.
struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};
CsvTable read_csv(const std::string& path);

// Shortest string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace qkmi
