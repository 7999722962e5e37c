#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cyclic/problems.hpp"
#include "cyclic/rate.hpp"
#include "cyclic/solvers.hpp"
#include "cyclic/spectrum.hpp"

namespace cyclic {

// Problem block of an experiment config. Which fields apply depends on type:
//   diag_quadratic: spectrum and/or eigs/eigs_csv, dim
//   least_squares, logistic: data_csv+labels_csv, or rows/cols/spikes/factor
//     for the synthetic spiked model; reg_scale scales ||A||^2 into lambda.
struct ProblemConfig {
  std::string type;
  SpectrumSet spectrum;      // support the drawn eigenvalues fill
  std::vector<double> eigs;  // pinned eigenvalues (interval endpoints are added)
  std::string eigs_csv;
  int dim = 0;  // 0: just the pinned eigenvalues
  int rows = 0;
  int cols = 0;
  int spikes = 3;
  double factor = 100.0;
  double reg_scale = 1e-3;
  std::string data_csv;
  std::string labels_csv;
  uint64_t seed = 0;
};

struct HeatmapConfig {
  int grid = 0;       // 0 disables the sweep
  double hmax = 0.0;  // 0: auto, 2 / L_1 of the tuning spectrum
};

struct ExperimentConfig {
  ProblemConfig problem;
  std::vector<std::string> methods;  // gd, phb, hb<k>, cheby, cheby2
  int T = 1000;
  int burn_in = -1;  // -1: T / 10
  int warm_start_iters = 100;
  int lp_points = 2000;
  int jobs = 1;
  std::string output_dir = "out";
  HeatmapConfig heatmap;

  // Fields the config file set explicitly; flags lose to these with a warning.
  struct Provided {
    bool T = false;
    bool burn_in = false;
    bool jobs = false;
    bool seed = false;
    bool output_dir = false;
    bool lp_points = false;
  } provided;
  std::vector<std::string> warnings;  // unknown keys, env seed override
};

// Config parsing. Structural problems (bad JSON, wrong field type) raise
// ParseError naming the file and field; semantic ones (negative eigenvalue,
// unknown method) raise ValidationError. The environment variable
// CYCLIC_MOMENTUM_SEED, when set, overrides the config seed and wins over any
// --seed flag; the override is recorded in warnings.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);

struct MethodResult {
  std::string method;
  CycleParams params;    // underlying cycle; for cheby/cheby2 the schedule's limit cycle
  std::string schedule;  // "", "cheby", or "cheby2"
  RateReport report;     // theory on the tuning spectrum
  double rate_empirical = std::numeric_limits<double>::quiet_NaN();
  RunTrace trace;
  std::string error;  // non-empty: the method failed and is only in the manifest
};

// Asymptotic rate over an N x N step-size grid at fixed momentum.
// rate[i * n + j] is the worst-case factor for the cycle (h_values[i],
// h_values[j]); divergent cells carry their factor >= 1 rather than an error.
struct HeatmapResult {
  std::vector<double> h_values;
  std::vector<double> rate;
  double m = 0.0;
};

struct ExperimentResult {
  SpectrumSet tuning_spectrum;
  Vector eigenvalues;  // ascending, the eigenvalues.csv payload
  std::vector<MethodResult> methods;
  std::optional<HeatmapResult> heatmap;
  bool complete = true;  // false when any method landed in the manifest
};

// Build the problem, tune and run every method, and write the output files
// into cfg.output_dir: trace_<method>.csv, summary.csv, eigenvalues.csv,
// manifest.json, and heatmap.csv when the sweep is enabled. Per-method
// failures are recorded in the manifest and do not abort the run; problem
// construction failures propagate. Re-running a config byte-reproduces
// every file.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Grid sweep of rate_report over h_0, h_1 in (0, hmax], m fixed.
// hmax <= 0 selects 2 / L_1 (first-interval top edge), wide enough to
// contain the tuned cycle for any gap radius.
HeatmapResult sweep_heatmap(const SpectrumSet& s, double m, int grid,
                            double hmax = 0.0, int jobs = 1);
std::string heatmap_csv(const HeatmapResult& hm);

// Run fn(0..n-1) on up to `jobs` threads. Used for method runs and sweep
// cells; callers keep writes disjoint per index.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace cyclic
