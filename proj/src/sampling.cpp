#include "regmatch/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void check_strengths(const BipartiteGraph& g, const StrengthMap& s) {
  if (s.size() != static_cast<std::size_t>(g.num_edges())) {
    throw Error(ErrorCode::kInvalidInput, "strength map does not cover every edge");
  }
  if (g.n_left() < 2) throw Error(ErrorCode::kInvalidInput, "strength sampling needs n >= 2");
}

}  // namespace

void SamplerConfig::validate() const {
  if (!(gamma > 0 && gamma <= 1)) throw Error(ErrorCode::kInvalidConfiguration, "gamma must lie in (0, 1]");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw Error(ErrorCode::kInvalidConfiguration, "epsilon must lie in (0, 1/2)");
  if (!(c1 > 0.0) || !(c_bk > 0.0)) throw Error(ErrorCode::kInvalidConfiguration, "sampling constants must be positive");
  if (amplify < 1) throw Error(ErrorCode::kInvalidConfiguration, "amplify must be >= 1");
}

double s1_probability(int n, int d, const SamplerConfig& cfg) {
  if (d < 1) throw Error(ErrorCode::kInvalidParameters, "degree must be >= 1");
  if (n < 2) return 1.0;
  const double dd = static_cast<double>(d);
  const double p = cfg.effective_c1() * n * std::log(static_cast<double>(n)) / (dd * dd);
  return std::min(1.0, p);
}

EdgeSet uniform_sample_ids(const BipartiteGraph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidParameters, "probability outside [0,1]");
  EdgeSet kept;
  const auto m = static_cast<std::int64_t>(g.num_edges());
  if (p == 0.0 || m == 0) return kept;
  if (p == 1.0) {
    kept.resize(static_cast<std::size_t>(m));
    for (EdgeId e = 0; e < g.num_edges(); ++e) kept[static_cast<std::size_t>(e)] = e;
    return kept;
  }
  std::mt19937_64 rng(seed);
  const double log_miss = std::log1p(-p);
  kept.reserve(static_cast<std::size_t>(static_cast<double>(m) * p * 1.2) + 8);
  std::int64_t position = -1;
  while (true) {
    const double u = 1.0 - unit_interval(rng());  // (0, 1]
    const double skip = std::floor(std::log(u) / log_miss);
    if (skip >= static_cast<double>(m - position)) break;
    position += static_cast<std::int64_t>(skip) + 1;
    if (position >= m) break;
    kept.push_back(static_cast<EdgeId>(position));
  }
  return kept;
}

BipartiteGraph uniform_sample(const BipartiteGraph& g, double p, std::uint64_t seed) {
  const EdgeSet ids = uniform_sample_ids(g, p, seed);
  return g.subgraph(ids);
}

std::vector<double> bk_probabilities(const BipartiteGraph& g, const StrengthMap& s, double c,
                                     const Rational& gamma) {
  check_strengths(g, s);
  const double numerator = c * std::log(static_cast<double>(g.n_left())) / to_double(gamma);
  std::vector<double> p(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const double strength = s.as_double(e);
    const double w = g.weighted() ? to_double(g.weight(e)) : 1.0;
    p[static_cast<std::size_t>(e)] = strength <= 0.0 ? 0.0 : std::min(1.0, numerator * w / strength);
  }
  return p;
}

double edge_uniform(std::uint64_t seed, EdgeId e) {
  return unit_interval(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(e)));
}

EdgeSet bernoulli_filter(const std::vector<double>& p, std::uint64_t seed) {
  const auto m = static_cast<std::int64_t>(p.size());
  std::vector<unsigned char> keep(p.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < m; ++e) {
    keep[static_cast<std::size_t>(e)] = edge_uniform(seed, static_cast<EdgeId>(e)) < p[static_cast<std::size_t>(e)];
  }
  EdgeSet kept;
  for (std::int64_t e = 0; e < m; ++e) {
    if (keep[static_cast<std::size_t>(e)]) kept.push_back(static_cast<EdgeId>(e));
  }
  return kept;
}

EdgeSet bernoulli_filter_serial(const std::vector<double>& p, std::uint64_t seed) {
  EdgeSet kept;
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (edge_uniform(seed, static_cast<EdgeId>(e)) < p[e]) kept.push_back(static_cast<EdgeId>(e));
  }
  return kept;
}

EdgeSet bk_sample_ids(const BipartiteGraph& g, const StrengthMap& s, const SamplerConfig& cfg) {
  cfg.validate();
  return bernoulli_filter(bk_probabilities(g, s, cfg.effective_c_bk(), cfg.gamma), cfg.seed);
}

BipartiteGraph bk_sample(const BipartiteGraph& g, const StrengthMap& s, const SamplerConfig& cfg) {
  const EdgeSet ids = bk_sample_ids(g, s, cfg);
  return g.subgraph(ids);
}

EdgeSet weighted_bk_sample_ids(const BipartiteGraph& g, const StrengthMap& s, const Rational& gamma,
                               const SamplerConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0 && gamma <= 1)) throw Error(ErrorCode::kInvalidConfiguration, "gamma must lie in (0, 1]");
  for (const Rational& w : g.weights()) {
    if (w < 0) throw Error(ErrorCode::kInvalidInput, "negative edge weight");
  }
  return bernoulli_filter(bk_probabilities(g, s, cfg.effective_c_bk(), gamma), cfg.seed);
}

BipartiteGraph weighted_bk_sample(const BipartiteGraph& g, const StrengthMap& s, const Rational& gamma,
                                  const SamplerConfig& cfg) {
  const EdgeSet ids = weighted_bk_sample_ids(g, s, gamma, cfg);
  return g.subgraph(ids);
}

}  // namespace regmatch
