#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/matching.hpp"
#include "regmatch/sampling.hpp"

namespace regmatch {

enum class Mode { kAuto, kSampled, kDirect, kEuler };
enum class Variant { kLasVegas, kMonteCarlo };

const char* to_string(Mode mode);
const char* to_string(Variant variant);
Mode parse_mode(const std::string& text);
Variant parse_variant(const std::string& text);

/// Bound constant for the second-stage sample size, |E''| <= c' n ln n.
/// Fixed from the n = 128, d = 32 calibration run (twice the largest observed
/// ratio, rounded up).
inline constexpr double kSampleSizeConstant = 14.0;

struct PipelineConfig {
  SamplerConfig sampler;
  Mode mode = Mode::kAuto;
  Variant variant = Variant::kLasVegas;
  double c_prime = kSampleSizeConstant;
};

/// Mode chosen by kAuto: sampled iff d > sqrt(n) ln n, else Euler halving
/// when d >= 2 is a power of two, else direct Hopcroft-Karp.
Mode select_mode(int n, int d);

struct StageTimes {
  double s1_ms = 0;
  double s2_ms = 0;
  double s3_ms = 0;
  double fallback_ms = 0;
  double total_ms = 0;
};

struct RunReport {
  int n = 0;
  int d = 0;
  std::int64_t m = 0;
  Mode mode_used = Mode::kDirect;
  Variant variant = Variant::kLasVegas;
  std::uint64_t seed = 0;

  double s1_probability = 1.0;
  std::int64_t s1_edges = -1;  // -1 when the stage did not run
  std::int64_t s2_edges = -1;

  bool sampled_perfect = false;  // the sampled graph yielded a perfect matching
  bool oversize = false;
  bool fallback_used = false;
  bool aborted = false;
  std::string abort_reason;

  int matching_size = 0;
  bool verified = false;
  int phases = 0;
  std::vector<int> path_lengths;
  int augmentations = 0;
  int late_augmentations = 0;  // performed once the matching had n - ceil(2n/d) edges
  int euler_depth = 0;

  StageTimes times;
  Matching matching;

  bool success() const { return verified && !aborted; }
};

/// Uniform sample, strength-based sample, Hopcroft-Karp. On failure or an
/// oversize sample the Monte Carlo variant aborts with a report and the Las
/// Vegas variant falls back to Hopcroft-Karp on g.
RunReport run_pipeline(const BipartiteGraph& g, const PipelineConfig& cfg);

/// Perfect matching of g using only g's edges.
bool verify_matching(const BipartiteGraph& g, const Matching& m);

/// ceil(2n/d), the deficiency allowed after sampling.
int deficiency_allowance(int n, int d);

/// Augmentations that happened while the matching size was at least
/// n - ceil(2n/d).
int augmentations_past(const PhaseStats& stats, int threshold_size);

}  // namespace regmatch
