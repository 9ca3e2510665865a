// Command-line front end: generators, matchers, analyses and the experiment
// harness. Exit codes: 0 success, 2 Monte Carlo abort, 3 invalid input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "regmatch/bvn.hpp"
#include "regmatch/decomposition.hpp"
#include "regmatch/error.hpp"
#include "regmatch/experiment.hpp"
#include "regmatch/graph.hpp"
#include "regmatch/graph_io.hpp"
#include "regmatch/matching.hpp"
#include "regmatch/pipeline.hpp"
#include "regmatch/strength.hpp"
#include "regmatch/uncrossing.hpp"

namespace {

using nlohmann::json;
using namespace regmatch;

constexpr int kExitOk = 0;
constexpr int kExitAbort = 2;
constexpr int kExitInvalid = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void emit(const Globals& globals, const std::string& text) {
  if (globals.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(globals.out);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + globals.out);
  file << text;
}

json matching_pairs(const Matching& m) {
  json pairs = json::array();
  for (std::size_t p = 0; p < m.left_mate.size(); ++p) {
    if (m.left_mate[p] != kUnmatched) pairs.push_back({static_cast<int>(p), m.left_mate[p]});
  }
  return pairs;
}

std::string matching_csv(const Matching& m) {
  std::ostringstream out;
  out << "p,q\n";
  for (std::size_t p = 0; p < m.left_mate.size(); ++p) {
    if (m.left_mate[p] != kUnmatched) out << p << ',' << m.left_mate[p] << '\n';
  }
  return out.str();
}

json pair_json(const VertexPair& pair) { return {{"A", pair.a}, {"B", pair.b}}; }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidParameters, "bad integer list '" + text + "'");
    }
  }
  return out;
}

struct PipelineFlags {
  std::string mode = "auto";
  std::string variant = "las_vegas";
  double c1 = 8.0;
  double c_bk = 5.0;
  std::string gamma = "1/3";
  double epsilon = 0.2;
  int amplify = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "auto | sampled | direct | euler")->capture_default_str();
    cmd->add_option("--variant", variant, "las_vegas | monte_carlo")->capture_default_str();
    cmd->add_option("--c1", c1, "first-stage sampling constant")->capture_default_str();
    cmd->add_option("--c-bk", c_bk, "strength-based sampling constant")->capture_default_str();
    cmd->add_option("--gamma", gamma, "thickness parameter, e.g. 1/3")->capture_default_str();
    cmd->add_option("--epsilon", epsilon, "concentration parameter")->capture_default_str();
    cmd->add_option("--amplify", amplify, "failure-probability exponent")->capture_default_str();
  }

  PipelineConfig config(std::uint64_t seed) const {
    PipelineConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.variant = parse_variant(variant);
    cfg.sampler.c1 = c1;
    cfg.sampler.c_bk = c_bk;
    cfg.sampler.gamma = parse_rational(gamma);
    cfg.sampler.epsilon = epsilon;
    cfg.sampler.amplify = amplify;
    cfg.sampler.seed = seed;
    cfg.sampler.validate();
    return cfg;
  }
};

int cmd_gen(const Globals& g, int n, int d, int t, bool adversarial) {
  const BipartiteGraph graph = adversarial ? gen_adversarial({d, t}, g.seed) : gen_regular(n, d, g.seed);
  std::ostringstream out;
  write_graph(out, graph);
  emit(g, out.str());
  return kExitOk;
}

int cmd_match(const Globals& g, const std::string& path) {
  const BipartiteGraph graph = load_graph(path);
  const auto start = std::chrono::steady_clock::now();
  const MatchResult result = hopcroft_karp(graph);
  const double time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (g.format == "csv") {
    emit(g, matching_csv(result.matching));
    return kExitOk;
  }
  json j = {{"size", result.matching.size},
            {"perfect", verify_matching(graph, result.matching)},
            {"phases", result.stats.phase_count()},
            {"path_lengths", result.stats.path_lengths()},
            {"augmentations", result.stats.total_augmentations()},
            {"time_ms", time_ms},
            {"matching", matching_pairs(result.matching)}};
  emit(g, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_strength(const Globals& g, const std::string& path, bool brute) {
  const BipartiteGraph graph = load_graph(path);
  const StrengthMap s = brute ? brute_strengths(graph) : exact_strengths(graph);
  if (g.format == "csv") {
    std::ostringstream out;
    out << "edge,p,q,strength\n";
    for (EdgeId e = 0; e < graph.num_edges(); ++e) {
      out << e << ',' << graph.edge(e).p << ',' << graph.edge(e).q << ',' << format_rational(s.at(e)) << '\n';
    }
    emit(g, out.str());
    return kExitOk;
  }
  json edges = json::array();
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    edges.push_back({{"edge", e}, {"p", graph.edge(e).p}, {"q", graph.edge(e).q}, {"strength", format_rational(s.at(e))}});
  }
  emit(g, json{{"edges", edges}}.dump(2) + "\n");
  return kExitOk;
}

int cmd_decompose(const Globals& g, const std::string& path) {
  const BipartiteGraph graph = load_graph(path);
  const Decomposition dec = decompose(graph);
  const DecompositionReport rep = validate_decomposition(graph, dec);
  if (g.format == "csv") {
    std::ostringstream out;
    out << "vertex,side,index,piece\n";
    for (int k = 0; k < dec.k(); ++k) {
      for (int v : dec.pieces[static_cast<std::size_t>(k)]) {
        const bool left = v < graph.n_left();
        out << v << ',' << (left ? "P" : "Q") << ',' << (left ? v : v - graph.n_left()) << ',' << k << '\n';
      }
    }
    emit(g, out.str());
    return kExitOk;
  }
  json pieces = json::array();
  for (const auto& piece : dec.pieces) {
    std::vector<int> left, right;
    for (int v : piece) (v < graph.n_left() ? left : right).push_back(v < graph.n_left() ? v : v - graph.n_left());
    pieces.push_back({{"P", left}, {"Q", right}});
  }
  json j = {{"k", dec.k()},
            {"pieces", pieces},
            {"removed_edges", dec.removed_edges},
            {"report",
             {{"mincut_ok", rep.mincut_ok},
              {"count_ok", rep.count_ok},
              {"boundary_ok", rep.boundary_ok},
              {"removed_ok", rep.removed_ok},
              {"piece_min_cuts", rep.piece_min_cuts},
              {"boundary_total", rep.boundary_total},
              {"removed", rep.removed}}}};
  emit(g, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_bvn(const Globals& g, const std::string& path, const std::string& method) {
  const DoublyStochasticMatrix m = load_matrix(path);
  SamplerConfig sc;
  sc.seed = g.seed;
  json j = {{"n", m.n()}, {"method", method}};
  if (method == "bits") {
    const BitsResult r = bvn_match_bits(m);
    j["permutation"] = r.matching.left_mate;
    j["rounds"] = r.rounds.size();
    j["invariants_ok"] = r.invariants_ok();
    j["verified"] = in_support(m, r.matching);
  } else if (method == "sampled") {
    const SampledBvnResult r = bvn_match_sampled(m, sc);
    j["permutation"] = r.matching.left_mate;
    j["sampled_edges"] = r.sampled_edges;
    j["fallback_used"] = r.fallback_used;
    j["verified"] = in_support(m, r.matching);
  } else if (method == "decompose") {
    const BvnDecomposition dec = bvn_decompose(m, sc);
    json terms = json::array();
    for (const auto& t : dec.terms) {
      terms.push_back({{"coefficient", format_rational(t.coefficient)}, {"permutation", t.permutation}});
    }
    j["terms"] = terms;
    j["fallbacks"] = dec.fallbacks;
    j["verified"] = reconstructs(m, dec);
  } else {
    throw Error(ErrorCode::kInvalidConfiguration, "unknown bvn method '" + method + "'");
  }
  if (g.format == "csv") {
    std::ostringstream out;
    if (method == "decompose") {
      out << "term,coefficient,row,col\n";
      int k = 0;
      for (const auto& t : j["terms"]) {
        const auto perm = t["permutation"].get<std::vector<int>>();
        for (std::size_t r = 0; r < perm.size(); ++r) {
          out << k << ',' << t["coefficient"].get<std::string>() << ',' << r << ',' << perm[r] << '\n';
        }
        ++k;
      }
    } else {
      out << "row,col\n";
      const auto perm = j["permutation"].get<std::vector<int>>();
      for (std::size_t r = 0; r < perm.size(); ++r) out << r << ',' << perm[r] << '\n';
    }
    emit(g, out.str());
  } else {
    emit(g, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_pipeline(const Globals& g, const std::string& path, const PipelineFlags& flags) {
  const BipartiteGraph graph = load_graph(path);
  const RunReport report = run_pipeline(graph, flags.config(g.seed));
  if (g.format == "csv") {
    emit(g, matching_csv(report.matching));
  } else {
    json j = json::parse(run_report_json(report));
    j["matching"] = matching_pairs(report.matching);
    emit(g, j.dump(2) + "\n");
  }
  if (report.aborted) {
    std::cerr << "monte carlo abort: " << report.abort_reason << '\n';
    return kExitAbort;
  }
  return kExitOk;
}

int cmd_experiment(const Globals& g, const std::string& ns, const std::string& ds, int trials,
                   const PipelineFlags& flags) {
  ExperimentConfig cfg;
  for (int n : parse_int_list(ns)) {
    for (int d : parse_int_list(ds)) {
      if (d <= n) cfg.grid.push_back({n, d});
    }
  }
  cfg.trials = trials;
  cfg.base_seed = g.seed;
  cfg.pipeline = flags.config(g.seed);
  const ExperimentResult result = run_experiment(cfg);
  if (!g.out.empty()) {
    write_experiment(cfg, result, g.out);
    return kExitOk;
  }
  if (g.format == "csv") {
    write_cells_csv(std::cout, result);
  } else {
    std::cout << experiment_json(cfg, result) << '\n';
  }
  return kExitOk;
}

int cmd_uncross_demo(const Globals& g) {
  const CrossingDemo demo = crossing_demo();
  const ThicknessContext ctx = ThicknessContext::uniform(demo.graph);
  PairCollection r;
  r.gamma = Rational(1, 2);
  r.pairs = {demo.first, demo.second};
  const PairCollection t = venn_thick_pairs(ctx, r);
  const VennReport venn = check_venn_structure(demo.graph, r.pairs);
  const UncrossingReport rep = verify_uncrossing(ctx, r, t, r.gamma);
  auto describe = [&](const VertexPair& pair) {
    const EdgeSet w = witness_set(demo.graph, pair);
    const EdgeSet c = cut_set(demo.graph, pair);
    json j = pair_json(pair);
    j["witness"] = w;
    j["cut"] = c;
    j["thick"] = is_gamma_thick(ctx, pair, r.gamma);
    return j;
  };
  json edges = json::array();
  for (EdgeId e = 0; e < demo.graph.num_edges(); ++e) {
    edges.push_back({{"edge", e}, {"p", demo.graph.edge(e).p}, {"q", demo.graph.edge(e).q}});
  }
  json reps = json::array();
  for (const auto& pair : t.pairs) reps.push_back(describe(pair));
  json j = {{"gamma", "1/2"},
            {"edges", edges},
            {"input", {describe(demo.first), describe(demo.second)}},
            {"representatives", reps},
            {"expected", pair_json(demo.expected)},
            {"single_representative", t.pairs.size() == 1 && t.pairs.front() == demo.expected},
            {"venn_identities_ok", venn.all_ok()},
            {"uncrossing_ok", rep.all_ok()}};
  emit(g, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect matchings in regular bipartite graphs by two-stage sampling"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "random seed")->capture_default_str();
  app.add_option("--out", globals.out, "output file (experiment: output prefix)");
  app.add_option("--format", globals.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  int gen_n = 16, gen_d = 4, gen_t = 1;
  bool gen_adv = false;
  auto* gen = app.add_subcommand("gen", "generate a random regular or adversarial graph");
  gen->add_option("--n", gen_n, "vertices per side")->capture_default_str();
  gen->add_option("--d", gen_d, "degree")->capture_default_str();
  gen->add_flag("--adversarial", gen_adv, "stacked lower-bound family with parameters d, t");
  gen->add_option("--t", gen_t, "number of stacked blocks")->capture_default_str();

  std::string graph_path;
  auto* match = app.add_subcommand("match", "Hopcroft-Karp maximum matching");
  match->add_option("graph", graph_path, "graph file")->required();

  bool brute = false;
  auto* strength = app.add_subcommand("strength", "exact edge strengths");
  strength->add_option("graph", graph_path, "graph file")->required();
  strength->add_flag("--brute", brute, "use the exhaustive oracle (at most 12 vertices)");

  auto* decomp = app.add_subcommand("decompose", "piece decomposition of a regular graph");
  decomp->add_option("graph", graph_path, "graph file")->required();

  std::string matrix_path, method = "sampled";
  auto* bvn = app.add_subcommand("bvn", "perfect matching in the support of a doubly stochastic matrix");
  bvn->add_option("matrix", matrix_path, "matrix file")->required();
  bvn->add_option("--method", method, "sampled | bits | decompose")
      ->check(CLI::IsMember({"sampled", "bits", "decompose"}))
      ->capture_default_str();

  PipelineFlags pipe_flags;
  auto* pipeline = app.add_subcommand("pipeline", "two-stage sampling pipeline");
  pipeline->add_option("graph", graph_path, "graph file")->required();
  pipe_flags.attach(pipeline);

  PipelineFlags exp_flags;
  std::string exp_n = "16,32,64", exp_d = "2,4,8,16";
  int exp_trials = 10;
  auto* experiment = app.add_subcommand("experiment", "run the pipeline over an (n, d) grid");
  experiment->add_option("--n", exp_n, "comma-separated n values")->capture_default_str();
  experiment->add_option("--d", exp_d, "comma-separated d values (cells with d > n are skipped)")
      ->capture_default_str();
  experiment->add_option("--trials", exp_trials, "trials per cell")->capture_default_str();
  exp_flags.attach(experiment);

  auto* demo = app.add_subcommand("uncross-demo", "worked example of uncrossing two pairs with one cut");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*gen) return cmd_gen(globals, gen_n, gen_d, gen_t, gen_adv);
    if (*match) return cmd_match(globals, graph_path);
    if (*strength) return cmd_strength(globals, graph_path, brute);
    if (*decomp) return cmd_decompose(globals, graph_path);
    if (*bvn) return cmd_bvn(globals, matrix_path, method);
    if (*pipeline) return cmd_pipeline(globals, graph_path, pipe_flags);
    if (*experiment) return cmd_experiment(globals, exp_n, exp_d, exp_trials, exp_flags);
    if (*demo) return cmd_uncross_demo(globals);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
