#include "regmatch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "regmatch/error.hpp"
#include "regmatch/graph.hpp"
#include "regmatch/rational.hpp"

namespace regmatch {
namespace {

using nlohmann::json;

std::uint64_t sampler_seed(std::uint64_t seed) {
  // splitmix64 finaliser: the graph and the sampler use unrelated streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrialRecord run_trial(const ExperimentConfig& cfg, int cell, int trial) {
  const ExperimentCell& c = cfg.grid[static_cast<std::size_t>(cell)];
  TrialRecord rec;
  rec.cell = cell;
  rec.trial = trial;
  rec.seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
  const BipartiteGraph g = gen_regular(c.n, c.d, rec.seed);
  PipelineConfig pc = cfg.pipeline;
  pc.sampler.seed = sampler_seed(rec.seed);
  rec.report = run_pipeline(g, pc);
  rec.report.matching = Matching{};
  return rec;
}

std::vector<CellSummary> summarise(const ExperimentConfig& cfg, const std::vector<TrialRecord>& trials) {
  std::vector<CellSummary> cells;
  for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
    const ExperimentCell& c = cfg.grid[k];
    CellSummary s;
    s.n = c.n;
    s.d = c.d;
    s.deficiency_allowance = deficiency_allowance(c.n, c.d);
    const double ln_n = std::log(static_cast<double>(c.n));
    s.s1_reference = c.n >= 2 ? s1_probability(c.n, c.d, cfg.pipeline.sampler) * c.n * c.d : 0.0;
    s.s2_reference = cfg.pipeline.c_prime * c.n * ln_n;
    int s1_runs = 0, s2_runs = 0;
    for (const auto& rec : trials) {
      if (rec.cell != static_cast<int>(k)) continue;
      const RunReport& r = rec.report;
      ++s.trials;
      s.success_rate += r.sampled_perfect && r.verified ? 1 : 0;
      s.verified_rate += r.verified ? 1 : 0;
      s.fallback_rate += r.fallback_used ? 1 : 0;
      s.abort_rate += r.aborted ? 1 : 0;
      if (r.s1_edges >= 0) {
        s.mean_s1_edges += static_cast<double>(r.s1_edges);
        ++s1_runs;
      }
      if (r.s2_edges >= 0) {
        s.mean_s2_edges += static_cast<double>(r.s2_edges);
        s.max_s2_edges = std::max(s.max_s2_edges, r.s2_edges);
        ++s2_runs;
      }
      s.mean_phases += r.phases;
      for (int len : r.path_lengths) s.max_path_length = std::max(s.max_path_length, len);
      s.max_late_augmentations = std::max(s.max_late_augmentations, r.late_augmentations);
      s.mean_total_ms += r.times.total_ms;
    }
    if (s.trials > 0) {
      const double t = s.trials;
      s.success_rate /= t;
      s.verified_rate /= t;
      s.fallback_rate /= t;
      s.abort_rate /= t;
      s.mean_phases /= t;
      s.mean_total_ms /= t;
    }
    if (s1_runs > 0) s.mean_s1_edges /= s1_runs;
    if (s2_runs > 0) s.mean_s2_edges /= s2_runs;
    cells.push_back(s);
  }
  return cells;
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 0) throw Error(ErrorCode::kInvalidParameters, "trial count must be nonnegative");
  for (const auto& c : cfg.grid) {
    if (c.n < 1 || c.d < 1 || c.d > c.n) throw Error(ErrorCode::kInvalidParameters, "grid cells need 1 <= d <= n");
  }
}

json report_to_json(const RunReport& r, bool include_times) {
  json j = {
      {"n", r.n},
      {"d", r.d},
      {"m", r.m},
      {"mode", to_string(r.mode_used)},
      {"variant", to_string(r.variant)},
      {"seed", r.seed},
      {"s1_probability", r.s1_probability},
      {"s1_edges", r.s1_edges},
      {"s2_edges", r.s2_edges},
      {"sampled_perfect", r.sampled_perfect},
      {"oversize", r.oversize},
      {"fallback_used", r.fallback_used},
      {"aborted", r.aborted},
      {"abort_reason", r.abort_reason},
      {"matching_size", r.matching_size},
      {"verified", r.verified},
      {"phases", r.phases},
      {"path_lengths", r.path_lengths},
      {"augmentations", r.augmentations},
      {"late_augmentations", r.late_augmentations},
      {"euler_depth", r.euler_depth},
  };
  if (r.fallback_used) j["fallback_algorithm"] = "hopcroft_karp";
  if (include_times) {
    j["times_ms"] = {{"s1", r.times.s1_ms},
                     {"s2", r.times.s2_ms},
                     {"s3", r.times.s3_ms},
                     {"fallback", r.times.fallback_ms},
                     {"total", r.times.total_ms}};
  }
  return j;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  check_config(cfg);
  const int cells = static_cast<int>(cfg.grid.size());
  const int total = cells * cfg.trials;
  ExperimentResult result;
  result.trials.resize(static_cast<std::size_t>(total));
  std::vector<std::string> errors(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < total; ++k) {
    try {
      result.trials[static_cast<std::size_t>(k)] = run_trial(cfg, k / cfg.trials, k % cfg.trials);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::kInvalidInput, "trial failed: " + e);
  }
  result.cells = summarise(cfg, result.trials);
  return result;
}

ExperimentResult run_experiment_serial(const ExperimentConfig& cfg) {
  check_config(cfg);
  ExperimentResult result;
  for (int cell = 0; cell < static_cast<int>(cfg.grid.size()); ++cell) {
    for (int trial = 0; trial < cfg.trials; ++trial) result.trials.push_back(run_trial(cfg, cell, trial));
  }
  result.cells = summarise(cfg, result.trials);
  return result;
}

void write_cells_csv(std::ostream& out, const ExperimentResult& result) {
  out << "n,d,trials,success_rate,verified_rate,fallback_rate,abort_rate,mean_s1_edges,s1_reference,"
         "mean_s2_edges,max_s2_edges,s2_reference,mean_phases,max_path_length,max_late_augmentations,"
         "deficiency_allowance,mean_total_ms\n";
  for (const auto& s : result.cells) {
    out << s.n << ',' << s.d << ',' << s.trials << ',' << s.success_rate << ',' << s.verified_rate << ','
        << s.fallback_rate << ',' << s.abort_rate << ',' << s.mean_s1_edges << ',' << s.s1_reference << ','
        << s.mean_s2_edges << ',' << s.max_s2_edges << ',' << s.s2_reference << ',' << s.mean_phases << ','
        << s.max_path_length << ',' << s.max_late_augmentations << ',' << s.deficiency_allowance << ','
        << s.mean_total_ms << '\n';
  }
}

std::string run_report_json(const RunReport& report, bool include_times) {
  return report_to_json(report, include_times).dump(2);
}

std::string experiment_json(const ExperimentConfig& cfg, const ExperimentResult& result, bool include_times) {
  json grid = json::array();
  for (const auto& c : cfg.grid) grid.push_back({{"n", c.n}, {"d", c.d}});
  const SamplerConfig& sc = cfg.pipeline.sampler;
  json j;
  j["config"] = {{"grid", grid},
                 {"trials", cfg.trials},
                 {"base_seed", cfg.base_seed},
                 {"mode", to_string(cfg.pipeline.mode)},
                 {"variant", to_string(cfg.pipeline.variant)},
                 {"c1", sc.c1},
                 {"c_bk", sc.c_bk},
                 {"gamma", format_rational(sc.gamma)},
                 {"epsilon", sc.epsilon},
                 {"amplify", sc.amplify},
                 {"c_prime", cfg.pipeline.c_prime}};
  json cells = json::array();
  for (const auto& s : result.cells) {
    json c = {{"n", s.n},
              {"d", s.d},
              {"trials", s.trials},
              {"success_rate", s.success_rate},
              {"verified_rate", s.verified_rate},
              {"fallback_rate", s.fallback_rate},
              {"abort_rate", s.abort_rate},
              {"mean_s1_edges", s.mean_s1_edges},
              {"s1_reference", s.s1_reference},
              {"mean_s2_edges", s.mean_s2_edges},
              {"max_s2_edges", s.max_s2_edges},
              {"s2_reference", s.s2_reference},
              {"mean_phases", s.mean_phases},
              {"max_path_length", s.max_path_length},
              {"max_late_augmentations", s.max_late_augmentations},
              {"deficiency_allowance", s.deficiency_allowance}};
    if (include_times) c["mean_total_ms"] = s.mean_total_ms;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  json trials = json::array();
  for (const auto& t : result.trials) {
    trials.push_back({{"cell", t.cell}, {"trial", t.trial}, {"seed", t.seed},
                      {"report", report_to_json(t.report, include_times)}});
  }
  j["trials"] = std::move(trials);
  return j.dump(2);
}

void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result, const std::string& prefix) {
  std::ofstream csv(prefix + ".csv");
  if (!csv) throw Error(ErrorCode::kIoError, "cannot write " + prefix + ".csv");
  write_cells_csv(csv, result);
  std::ofstream js(prefix + ".json");
  if (!js) throw Error(ErrorCode::kIoError, "cannot write " + prefix + ".json");
  js << experiment_json(cfg, result) << '\n';
  if (!csv || !js) throw Error(ErrorCode::kIoError, "write failed for " + prefix);
}

DeficiencyTrial deficiency_trial(int n, int d, double c, std::uint64_t seed) {
  if (n < 2 || d < 1 || d > n || !(c > 0.0)) throw Error(ErrorCode::kInvalidParameters, "need n >= 2, 1 <= d <= n, c > 0");
  const BipartiteGraph g = gen_regular(n, d, seed);
  DeficiencyTrial t;
  t.probability = std::min(1.0, c * std::log(static_cast<double>(n)) / d);
  t.allowance = deficiency_allowance(n, d);
  const BipartiteGraph sample = uniform_sample(g, t.probability, sampler_seed(seed));
  t.sampled_edges = sample.num_edges();
  MatchResult partial = hopcroft_karp(sample);
  t.sampled_matching = partial.matching.size;
  MatchResult full = complete_matching(g, std::move(partial.matching));
  t.completion_augmentations = full.stats.total_augmentations();
  t.completed = verify_matching(g, full.matching);
  return t;
}

double calibrate_deficiency_constant(int n, const std::vector<int>& degrees, const std::vector<double>& candidates,
                                     int trials, std::uint64_t base_seed, double target) {
  for (double c : candidates) {
    bool ok = true;
    for (int d : degrees) {
      int hits = 0;
      for (int i = 0; i < trials; ++i) {
        if (deficiency_trial(n, d, c, base_seed + static_cast<std::uint64_t>(i)).deficiency_ok(n)) ++hits;
      }
      if (hits < target * trials) ok = false;
    }
    if (ok) return c;
  }
  return -1.0;
}

double calibrate_sample_size_constant(int n, int d, int trials, std::uint64_t base_seed, const SamplerConfig& sampler) {
  ExperimentConfig cfg;
  cfg.grid = {{n, d}};
  cfg.trials = trials;
  cfg.base_seed = base_seed;
  cfg.pipeline.sampler = sampler;
  cfg.pipeline.mode = Mode::kSampled;
  // No oversize cut-off while calibrating.
  cfg.pipeline.c_prime = 1e9;
  const ExperimentResult result = run_experiment(cfg);
  double worst = 0;
  for (const auto& t : result.trials) worst = std::max(worst, static_cast<double>(t.report.s2_edges));
  return std::ceil(2.0 * worst / (n * std::log(static_cast<double>(n))));
}

}  // namespace regmatch
