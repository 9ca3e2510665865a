#pragma once

#include <cstdint>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/rational.hpp"
#include "regmatch/strength.hpp"

namespace regmatch {

struct SamplerConfig {
  double c1 = 8.0;             // uniform stage constant
  double c_bk = 5.0;           // strength-based stage constant
  Rational gamma{1, 3};        // thickness parameter
  double epsilon = 0.2;        // concentration parameter
  std::uint64_t seed = 0;
  int amplify = 1;             // target failure probability O(1/n^amplify)

  /// Throws kInvalidConfiguration unless gamma in (0,1], epsilon in (0,1/2),
  /// constants positive and amplify >= 1.
  void validate() const;

  /// Both constants scale by (amplify + 1) / 2, so the default amplify = 1
  /// leaves them unchanged.
  double amplification_factor() const { return (amplify + 1) / 2.0; }
  double effective_c1() const { return c1 * amplification_factor(); }
  double effective_c_bk() const { return c_bk * amplification_factor(); }
};

/// min(1, c1 n ln n / d^2); 1 when n < 2.
double s1_probability(int n, int d, const SamplerConfig& cfg);

/// Independent retention with probability p, by geometric skipping over the
/// edge array (work proportional to the number of retained edges).
EdgeSet uniform_sample_ids(const BipartiteGraph& g, double p, std::uint64_t seed);
BipartiteGraph uniform_sample(const BipartiteGraph& g, double p, std::uint64_t seed);

/// p_e = min(1, c ln n w_e / (gamma s_e)) with n = g.n_left(); w_e = 1 for
/// unweighted graphs. Edges of strength 0 get probability 0.
std::vector<double> bk_probabilities(const BipartiteGraph& g, const StrengthMap& s, double c,
                                     const Rational& gamma);

/// Per-edge uniform draw in [0,1), a pure function of (seed, edge index), so
/// every Bernoulli kernel below is reproducible regardless of thread count.
double edge_uniform(std::uint64_t seed, EdgeId e);

/// Retain edge e iff edge_uniform(seed, e) < p[e]. OpenMP-parallel.
EdgeSet bernoulli_filter(const std::vector<double>& p, std::uint64_t seed);
/// Serial reference for bernoulli_filter.
EdgeSet bernoulli_filter_serial(const std::vector<double>& p, std::uint64_t seed);

EdgeSet bk_sample_ids(const BipartiteGraph& g, const StrengthMap& s, const SamplerConfig& cfg);
BipartiteGraph bk_sample(const BipartiteGraph& g, const StrengthMap& s, const SamplerConfig& cfg);

/// Weighted variant: weights come from g, gamma is passed explicitly.
EdgeSet weighted_bk_sample_ids(const BipartiteGraph& g, const StrengthMap& s, const Rational& gamma,
                               const SamplerConfig& cfg);
BipartiteGraph weighted_bk_sample(const BipartiteGraph& g, const StrengthMap& s, const Rational& gamma,
                                  const SamplerConfig& cfg);

}  // namespace regmatch
