#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "regmatch/pipeline.hpp"

namespace regmatch {

struct ExperimentCell {
  int n = 0;
  int d = 0;
};

struct ExperimentConfig {
  std::vector<ExperimentCell> grid;
  int trials = 1;
  std::uint64_t base_seed = 0;
  PipelineConfig pipeline;
};

/// One pipeline run on gen_regular(n, d, seed) with seed = base + trial.
struct TrialRecord {
  int cell = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  RunReport report;
};

struct CellSummary {
  int n = 0;
  int d = 0;
  int trials = 0;
  double success_rate = 0;   // sampled graph gave a verified perfect matching
  double verified_rate = 0;  // final output verified, fallback included
  double fallback_rate = 0;
  double abort_rate = 0;
  double mean_s1_edges = 0;
  double s1_reference = 0;  // p n d with the clamped stage-one probability
  double mean_s2_edges = 0;
  std::int64_t max_s2_edges = 0;
  double s2_reference = 0;  // c' n ln n
  double mean_phases = 0;
  int max_path_length = 0;
  int max_late_augmentations = 0;
  int deficiency_allowance = 0;
  double mean_total_ms = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;  // ordered by (cell, trial)
  std::vector<CellSummary> cells;
};

/// Trials run in parallel with OpenMP; results are merged by index, so the
/// output matches run_experiment_serial apart from wall times.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment_serial(const ExperimentConfig& cfg);

/// Per-cell CSV with a header row.
void write_cells_csv(std::ostream& out, const ExperimentResult& result);
/// JSON summary: config, cells and per-trial records.
std::string experiment_json(const ExperimentConfig& cfg, const ExperimentResult& result, bool include_times = true);
/// Writes <prefix>.csv and <prefix>.json; throws kIoError when unwritable.
void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result, const std::string& prefix);

/// JSON form of a run report without the matching.
std::string run_report_json(const RunReport& report, bool include_times = true);

/// Uniform sample at p = min(1, c ln n / d), maximum matching on the sample,
/// then completion on the full graph.
struct DeficiencyTrial {
  double probability = 0;
  std::int64_t sampled_edges = 0;
  int sampled_matching = 0;
  int allowance = 0;  // ceil(2n/d)
  int completion_augmentations = 0;
  bool completed = false;

  bool deficiency_ok(int n) const { return sampled_matching >= n - allowance; }
};
DeficiencyTrial deficiency_trial(int n, int d, double c, std::uint64_t seed);

/// Smallest constant in `candidates` (ascending) whose deficiency success rate
/// reaches `target` on every degree in `degrees`, over seeds
/// base_seed .. base_seed + trials - 1. Returns -1 when none does.
double calibrate_deficiency_constant(int n, const std::vector<int>& degrees, const std::vector<double>& candidates,
                                     int trials, std::uint64_t base_seed, double target);

/// The fixed constant found by calibrate_deficiency_constant for n = 128,
/// d in {16, 32}, candidates 0.5, 1.0, ..., 4.0, target 0.95, 100 trials from
/// seed 1000000.
inline constexpr double kDeficiencyConstant = 1.0;

/// ceil(2 * max |E''| / (n ln n)) over sampled-mode runs.
double calibrate_sample_size_constant(int n, int d, int trials, std::uint64_t base_seed, const SamplerConfig& sampler);

}  // namespace regmatch
