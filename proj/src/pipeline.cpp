#include "regmatch/pipeline.hpp"

#include <bit>
#include <chrono>
#include <cmath>

#include "regmatch/bvn.hpp"
#include "regmatch/error.hpp"
#include "regmatch/strength.hpp"

namespace regmatch {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Second-stage seed, decorrelated from the first stage.
std::uint64_t stage_two_seed(std::uint64_t seed) { return seed ^ 0xD1B54A32D192ED03ULL; }

void record_stats(RunReport& report, const PhaseStats& stats, int threshold) {
  report.phases += stats.phase_count();
  for (int len : stats.path_lengths()) report.path_lengths.push_back(len);
  report.augmentations += stats.total_augmentations();
  report.late_augmentations += augmentations_past(stats, threshold);
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kAuto: return "auto";
    case Mode::kSampled: return "sampled";
    case Mode::kDirect: return "direct";
    case Mode::kEuler: return "euler";
  }
  return "unknown";
}

const char* to_string(Variant variant) {
  return variant == Variant::kLasVegas ? "las_vegas" : "monte_carlo";
}

Mode parse_mode(const std::string& text) {
  if (text == "auto") return Mode::kAuto;
  if (text == "sampled") return Mode::kSampled;
  if (text == "direct") return Mode::kDirect;
  if (text == "euler") return Mode::kEuler;
  throw Error(ErrorCode::kInvalidConfiguration, "unknown mode '" + text + "'");
}

Variant parse_variant(const std::string& text) {
  if (text == "las_vegas" || text == "las-vegas") return Variant::kLasVegas;
  if (text == "monte_carlo" || text == "monte-carlo") return Variant::kMonteCarlo;
  throw Error(ErrorCode::kInvalidConfiguration, "unknown variant '" + text + "'");
}

Mode select_mode(int n, int d) {
  if (n >= 2 && d > std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n))) return Mode::kSampled;
  if (d >= 2 && std::has_single_bit(static_cast<unsigned>(d))) return Mode::kEuler;
  return Mode::kDirect;
}

int deficiency_allowance(int n, int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidParameters, "degree must be positive");
  return (2 * n + d - 1) / d;
}

int augmentations_past(const PhaseStats& stats, int threshold_size) {
  int count = 0;
  for (const auto& phase : stats.phases) {
    const int before = phase.size_after - phase.augmentations;
    count += std::max(0, phase.size_after - std::max(before, threshold_size));
  }
  return count;
}

bool verify_matching(const BipartiteGraph& g, const Matching& m) {
  if (g.n_left() != g.n_right()) return false;
  if (static_cast<int>(m.left_mate.size()) != g.n_left() || static_cast<int>(m.right_mate.size()) != g.n_right()) {
    return false;
  }
  if (m.size != g.n_left()) return false;
  return is_valid_matching(g, m);
}

RunReport run_pipeline(const BipartiteGraph& g, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  cfg.sampler.validate();
  if (!(cfg.c_prime > 0.0)) throw Error(ErrorCode::kInvalidConfiguration, "c' must be positive");
  RunReport report;
  report.n = g.n_left();
  report.m = g.num_edges();
  report.variant = cfg.variant;
  report.seed = cfg.sampler.seed;
  const auto degree = regular_degree(g);
  report.d = degree.value_or(0);
  const int n = report.n;

  Mode mode = cfg.mode;
  if (mode == Mode::kAuto) mode = degree ? select_mode(n, *degree) : Mode::kDirect;
  if ((mode == Mode::kSampled || mode == Mode::kEuler) && !degree) {
    throw Error(ErrorCode::kInvalidConfiguration, std::string(to_string(mode)) + " mode needs a regular graph");
  }
  if (mode == Mode::kSampled && (n < 2 || *degree < 1)) {
    throw Error(ErrorCode::kInvalidConfiguration, "sampled mode needs n >= 2 and d >= 1");
  }
  if (mode == Mode::kEuler && (*degree < 1 || !std::has_single_bit(static_cast<unsigned>(*degree)))) {
    throw Error(ErrorCode::kInvalidConfiguration, "euler mode needs d to be a power of two");
  }
  report.mode_used = mode;
  const int threshold = report.d >= 1 ? n - deficiency_allowance(n, report.d) : n;

  if (mode == Mode::kDirect) {
    const auto t3 = Clock::now();
    MatchResult result = hopcroft_karp(g);
    report.times.s3_ms = elapsed_ms(t3);
    record_stats(report, result.stats, threshold);
    report.matching = std::move(result.matching);
  } else if (mode == Mode::kEuler) {
    const auto t3 = Clock::now();
    HalvingResult result = euler_halve(g);
    report.times.s3_ms = elapsed_ms(t3);
    report.euler_depth = result.depth;
    report.matching = std::move(result.matching);
  } else {
    const int d = *degree;
    const auto t1 = Clock::now();
    report.s1_probability = s1_probability(n, d, cfg.sampler);
    const BipartiteGraph first = g.subgraph(uniform_sample_ids(g, report.s1_probability, cfg.sampler.seed));
    report.s1_edges = first.num_edges();
    report.times.s1_ms = elapsed_ms(t1);
    const double expected_s1 = report.s1_probability * static_cast<double>(n) * d;
    MatchResult sampled;
    if (static_cast<double>(report.s1_edges) > 4.0 * expected_s1) {
      report.oversize = true;
      report.abort_reason = "first-stage sample too large";
    } else {
      const auto t2 = Clock::now();
      const StrengthMap strengths = exact_strengths(first);
      SamplerConfig second_cfg = cfg.sampler;
      second_cfg.seed = stage_two_seed(cfg.sampler.seed);
      const BipartiteGraph second = first.subgraph(bk_sample_ids(first, strengths, second_cfg));
      report.s2_edges = second.num_edges();
      report.times.s2_ms = elapsed_ms(t2);
      const double bound = 4.0 * cfg.c_prime * n * std::log(static_cast<double>(n));
      if (static_cast<double>(report.s2_edges) > bound) {
        report.oversize = true;
        report.abort_reason = "second-stage sample too large";
      } else {
        const auto t3 = Clock::now();
        sampled = hopcroft_karp(second);
        report.times.s3_ms = elapsed_ms(t3);
        record_stats(report, sampled.stats, threshold);
        report.sampled_perfect = sampled.matching.size == n;
        if (!report.sampled_perfect) report.abort_reason = "sampled graph has no perfect matching";
      }
    }
    if (report.sampled_perfect) {
      report.matching = std::move(sampled.matching);
    } else if (cfg.variant == Variant::kMonteCarlo) {
      report.aborted = true;
      report.matching = sampled.matching.left_mate.empty() ? Matching::empty_for(g) : std::move(sampled.matching);
    } else {
      const auto tf = Clock::now();
      report.fallback_used = true;
      // Warm start from whatever the sample produced; the edges all lie in g.
      Matching warm = sampled.matching.left_mate.empty() ? Matching::empty_for(g) : std::move(sampled.matching);
      MatchResult full = complete_matching(g, std::move(warm));
      report.times.fallback_ms = elapsed_ms(tf);
      record_stats(report, full.stats, threshold);
      report.matching = std::move(full.matching);
    }
  }
  report.matching_size = report.matching.size;
  report.verified = verify_matching(g, report.matching);
  report.times.total_ms = elapsed_ms(start);
  return report;
}

}  // namespace regmatch
