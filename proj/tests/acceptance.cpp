// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "regmatch/bvn.hpp"
#include "regmatch/decomposition.hpp"
#include "regmatch/experiment.hpp"
#include "regmatch/pipeline.hpp"
#include "regmatch/strength.hpp"
#include "regmatch/uncrossing.hpp"

using namespace regmatch;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::vector<ExperimentCell> sweep_grid() {
  std::vector<ExperimentCell> grid;
  for (int n : {16, 32, 64, 128, 256}) {
    for (int d : {2, 4, 8, 16, 32, 64}) {
      if (d <= n) grid.push_back({n, d});
    }
  }
  return grid;
}

// 1. Las Vegas pipeline is always correct over the grid.
Outcome correctness_sweep() {
  int runs = 0, verified = 0, sampled_runs = 0;
  for (Mode mode : {Mode::kAuto, Mode::kSampled}) {
    ExperimentConfig cfg;
    cfg.grid = sweep_grid();
    cfg.trials = 20;
    cfg.base_seed = 10'000;
    cfg.pipeline.mode = mode;
    cfg.pipeline.variant = Variant::kLasVegas;
    const auto result = run_experiment(cfg);
    for (const auto& t : result.trials) {
      ++runs;
      verified += t.report.verified && t.report.matching_size == t.report.n;
      sampled_runs += t.report.mode_used == Mode::kSampled;
    }
  }
  return {verified == runs, fmt("%d/%d verified perfect (auto and forced-sampled, %zu cells x 20 seeds each; %d sampled-mode runs)",
                                verified, runs, sweep_grid().size(), sampled_runs)};
}

// 2. The sampled graph alone has a perfect matching often enough.
Outcome sampled_success() {
  double rate[2] = {0, 0};
  int fallbacks[2] = {0, 0};
  for (int amplify : {1, 2}) {
    ExperimentConfig cfg;
    cfg.grid = {{256, 64}};
    cfg.trials = 200;
    cfg.base_seed = 20'000;
    cfg.pipeline.mode = Mode::kSampled;
    cfg.pipeline.sampler.amplify = amplify;
    const auto result = run_experiment(cfg);
    rate[amplify - 1] = result.cells.front().success_rate;
    fallbacks[amplify - 1] = static_cast<int>(std::lround(result.cells.front().fallback_rate * 200));
  }
  const bool pass = rate[0] >= 0.95 && rate[1] >= 0.99;
  return {pass, fmt("n=256 d=64, 200 seeds: no-fallback rate %.3f (need 0.95, %d fallbacks), amplify 2: %.3f (need 0.99, %d fallbacks)",
                    rate[0], fallbacks[0], rate[1], fallbacks[1])};
}

// 3. Edge counts of both sampling stages.
Outcome edge_counts() {
  ExperimentConfig cfg;
  cfg.grid = sweep_grid();
  cfg.trials = 19;
  cfg.base_seed = 30'000;
  cfg.pipeline.mode = Mode::kSampled;
  const auto result = run_experiment(cfg);
  int trials = 0, s1_bad = 0, s2_bad = 0, saturated = 0;
  double worst_ratio = 0, worst_z = 0;
  std::string worst_cell = "none";
  for (const auto& t : result.trials) {
    const RunReport& r = t.report;
    ++trials;
    const double p = r.s1_probability;
    const double nd = static_cast<double>(r.n) * r.d;
    const double sigma = std::sqrt(nd * p * (1 - p));
    if (p >= 1.0) ++saturated;
    if (p < 1.0) {
      const double z = std::abs(static_cast<double>(r.s1_edges) - p * nd) / sigma;
      if (z > worst_z) {
        worst_z = z;
        worst_cell = fmt("n=%d d=%d", r.n, r.d);
      }
    }
    if (std::abs(static_cast<double>(r.s1_edges) - p * nd) > 3 * sigma) ++s1_bad;
    const double bound = kSampleSizeConstant * r.n * std::log(static_cast<double>(r.n));
    if (r.s2_edges < 0 || static_cast<double>(r.s2_edges) > bound) ++s2_bad;
    worst_ratio = std::max(worst_ratio, static_cast<double>(r.s2_edges) / (r.n * std::log(static_cast<double>(r.n))));
  }
  // Off-grid, unclamped stage-one probability; reported only.
  int off_grid_bad = 0;
  const auto g = gen_regular(512, 512, 1);
  SamplerConfig sc;
  const double p = s1_probability(512, 512, sc);
  const double sigma = std::sqrt(512.0 * 512 * p * (1 - p));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double kept = static_cast<double>(uniform_sample_ids(g, p, seed).size());
    off_grid_bad += std::abs(kept - p * 512 * 512) > 3 * sigma;
  }
  const bool pass = trials >= 500 && s1_bad == 0 && s2_bad == 0;
  return {pass, fmt("%d trials: S1 3-sigma violations %d (%d with p=1, worst |z| %.2f at %s), |E''| > %.0f n ln n violations %d, worst |E''|/(n ln n) %.2f; "
                    "off-grid n=d=512 p=%.3f: %d/200 outside 3 sigma",
                    trials, s1_bad, saturated, worst_z, worst_cell.c_str(), kSampleSizeConstant, s2_bad, worst_ratio, p, off_grid_bad)};
}

// 4. Exact strengths agree with the exhaustive oracle.
Outcome strength_oracle() {
  int graphs = 0, mismatches = 0;
  auto check = [&](const UndirectedGraph& g) {
    if (!oracle::connected(g)) return;
    ++graphs;
    if (exact_strengths(g) != brute_strengths(g)) ++mismatches;
  };
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u) for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      UndirectedGraph g;
      g.num_vertices = n;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (mask >> k & 1u) g.edges.push_back({slots[k].first, slots[k].second, 1});
      }
      check(g);
    }
  }
  const int exhaustive = graphs;
  std::mt19937_64 rng(40'000);
  int random_graphs = 0;
  while (random_graphs < 2000) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const double density = 0.3 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto g = oracle::random_undirected(n, density, 1 + static_cast<int>(rng() % 3), rng());
    if (!oracle::connected(g)) continue;
    check(g);
    ++random_graphs;
  }
  return {mismatches == 0, fmt("%d connected graphs (%d exhaustive on <=5 vertices, 2000 random on <=7): %d mismatches",
                               graphs, exhaustive, mismatches)};
}

// 5. Decomposition guarantees on random regular graphs.
Outcome decomposition_validator() {
  std::mt19937_64 rng(50'000);
  int bad = 0, multi_piece = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 32 + static_cast<int>(rng() % 97);
    const int d = (rng() & 1u) ? 8 : 16;
    const auto g = gen_regular(n, d, rng());
    const auto dec = decompose(g);
    if (!validate_decomposition(g, dec).all_ok()) ++bad;
    multi_piece += dec.k() > 1;
  }
  return {bad == 0, fmt("100 instances, n in [32,128], d in {8,16}: %d violations (%d split into several pieces)", bad, multi_piece)};
}

// 6. Uncrossing on random thick collections, Venn identities and the worked demo.
Outcome uncrossing_lab() {
  const Rational gamma(1, 3);
  int failures = 0, venn_groups = 0, venn_bad = 0, collapsed = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const int nl = 2 + static_cast<int>(seed % 4);
    const int nr = 2 + static_cast<int>((seed / 4) % 4);
    const auto inst = random_thick_instance(nl, nr, gamma, 60'000 + seed);
    const auto t = uncross(inst.ctx, inst.collection);
    if (!verify_uncrossing(inst.ctx, inst.collection, t, gamma).all_ok()) ++failures;
    collapsed += t.pairs.size() < inst.collection.pairs.size();
    std::map<EdgeSet, std::vector<VertexPair>> by_cut;
    for (const auto& p : inst.collection.pairs) by_cut[cut_set(inst.ctx.graph(), p)].push_back(p);
    for (const auto& [cut, group] : by_cut) {
      if (group.size() < 2) continue;
      ++venn_groups;
      if (!check_venn_structure(inst.ctx.graph(), group).all_ok()) ++venn_bad;
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_single_cut_instance(5, 5, gamma, 61'000 + seed);
    ++venn_groups;
    if (!check_venn_structure(inst.ctx.graph(), inst.collection.pairs).all_ok()) ++venn_bad;
  }
  const auto demo = crossing_demo();
  const auto ctx = ThicknessContext::uniform(demo.graph);
  const PairCollection r{{demo.first, demo.second}, Rational(1, 2)};
  const auto t = venn_thick_pairs(ctx, r);
  const bool demo_ok = t.pairs.size() == 1 && t.pairs.front() == demo.expected &&
                       verify_uncrossing(ctx, r, t, Rational(1, 2)).all_ok();
  return {failures == 0 && venn_bad == 0 && demo_ok,
          fmt("500 collections: %d verifier failures (%d reduced); Venn identities on %d single-cut groups: %d failures; "
              "demo single representative: %s",
              failures, collapsed, venn_groups, venn_bad, demo_ok ? "yes" : "no")};
}

// 7. Hopcroft-Karp against brute force, with increasing phase lengths.
Outcome hopcroft_karp_oracle() {
  int wrong = 0, not_increasing = 0, runs = 0;
  std::mt19937_64 rng(70'000);
  for (int i = 0; i < 500; ++i) {
    const int nl = 1 + static_cast<int>(rng() % 10);
    const int nr = 1 + static_cast<int>(rng() % 10);
    const double density = 0.1 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto g = oracle::random_bipartite(nl, nr, density, rng());
    const auto r = hopcroft_karp(g);
    ++runs;
    if (r.matching.size != oracle::max_matching_size(g) || !is_valid_matching(g, r.matching)) ++wrong;
    if (!r.stats.lengths_strictly_increasing()) ++not_increasing;
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = hopcroft_karp(gen_regular(200, 2 + static_cast<int>(seed % 6), seed));
    ++runs;
    if (!r.stats.lengths_strictly_increasing()) ++not_increasing;
  }
  return {wrong == 0 && not_increasing == 0,
          fmt("500 random graphs n<=10: %d size mismatches; %d runs checked: %d with non-increasing path lengths", wrong,
              runs, not_increasing)};
}

// 8. Deficiency of the uniformly sampled graph and the cost of completing it.
Outcome sampling_deficiency() {
  bool pass = true;
  std::string detail = fmt("c=%.2f:", kDeficiencyConstant);
  for (int d : {16, 32}) {
    int ok = 0, within = 0;
    int worst = 0;
    for (int i = 0; i < 200; ++i) {
      const auto t = deficiency_trial(128, d, kDeficiencyConstant, 2'000'000 + static_cast<std::uint64_t>(i));
      if (!t.completed) pass = false;
      if (!t.deficiency_ok(128)) continue;
      ++ok;
      within += t.completion_augmentations <= t.allowance;
      worst = std::max(worst, t.completion_augmentations);
    }
    pass = pass && ok >= 190 && within == ok;
    detail += fmt(" d=%d deficiency ok %d/200 (need 190), completion within %d augmentations %d/%d (max %d);", d, ok,
                  deficiency_allowance(128, d), within, ok, worst);
  }
  return {pass, detail};
}

// 9. Doubly stochastic matrices: bit elimination and sampled matching.
Outcome bvn() {
  std::mt19937_64 rng(90'000);
  int bits_bad = 0, rounds_total = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 32);
    const int b = 1 + static_cast<int>(rng() % 12);
    const int k = 1 + static_cast<int>(rng() % std::min(16, 1 << b));
    const auto m = random_dyadic_matrix(n, k, b, rng());
    const auto r = bvn_match_bits(m);
    rounds_total += static_cast<int>(r.rounds.size());
    if (!r.invariants_ok() || !in_support(m, r.matching)) ++bits_bad;
  }
  int sampled_bad = 0, fallbacks = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 31);
    const int b = 1 + static_cast<int>(rng() % 12);
    const int k = 1 + static_cast<int>(rng() % std::min(16, 1 << b));
    const auto m = random_dyadic_matrix(n, k, b, rng());
    SamplerConfig cfg;
    cfg.seed = rng();
    const auto r = bvn_match_sampled(m, cfg);
    fallbacks += r.fallback_used;
    if (!in_support(m, r.matching)) ++sampled_bad;
  }
  return {bits_bad == 0 && sampled_bad == 0,
          fmt("bits: 200 matrices (n<=32, b<=12), %d violations, %d rounds total; sampled: 200 matrices, %d invalid, "
              "fallback rate %.3f",
              bits_bad, rounds_total, sampled_bad, fallbacks / 200.0)};
}

// 10. Euler halving on power-of-two degrees.
Outcome euler_halving() {
  int graphs = 0, bad = 0;
  double worst = 0;
  for (int k = 0; k <= 5; ++k) {
    const int d = 1 << k;
    for (int n : {32, 64, 128, 256}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = gen_regular(n, d, 100'000 + seed * 7 + static_cast<std::uint64_t>(n));
        const auto r = euler_halve(g);
        ++graphs;
        const bool ok = r.depth == k && verify_matching(g, r.matching) && r.touches <= 4LL * g.num_edges();
        if (!ok) ++bad;
        worst = std::max(worst, static_cast<double>(r.touches) / g.num_edges());
      }
    }
  }
  return {bad == 0, fmt("%d graphs, d=2^k for k<=5, n<=256: %d failures, worst touches/m %.2f (limit 4)", graphs, bad, worst)};
}

// 11. Adversarial family structure; augmentation counts are reported only.
Outcome adversarial_family() {
  bool pass = true;
  std::string detail;
  const std::vector<AdversarialParams> params = {{4, 1}, {8, 1}, {8, 2}, {16, 1}, {16, 2}, {16, 4}, {32, 4}, {32, 8}};
  for (const auto& p : params) {
    int aug_total = 0, late_total = 0;
    const int seeds = 10;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const auto g = gen_adversarial(p, 110'000 + seed);
      if (!is_regular(g, p.d) || g.num_vertices() != 2 * (p.d + 1) * p.t) pass = false;
      PipelineConfig cfg;
      cfg.mode = Mode::kSampled;
      cfg.sampler.seed = seed;
      const auto r = run_pipeline(g, cfg);
      if (!r.verified) pass = false;
      aug_total += r.augmentations;
      late_total += r.late_augmentations;
    }
    detail += fmt(" (d=%d,t=%d): mean augmentations %.1f, mean late %.1f;", p.d, p.t,
                  static_cast<double>(aug_total) / seeds, static_cast<double>(late_total) / seeds);
  }
  return {pass, "regular with 2(d+1)t vertices and verified pipeline output for all;" + detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 correctness sweep", correctness_sweep},
      {"C2 sampled-graph success rate", sampled_success},
      {"C3 sample edge counts", edge_counts},
      {"C4 strength oracle equivalence", strength_oracle},
      {"C5 decomposition validator", decomposition_validator},
      {"C6 uncrossing laboratory", uncrossing_lab},
      {"C7 Hopcroft-Karp oracle equivalence", hopcroft_karp_oracle},
      {"C8 deficiency after sampling", sampling_deficiency},
      {"C9 doubly stochastic matching", bvn},
      {"C10 Euler halving", euler_halving},
      {"C11 adversarial family", adversarial_family},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
