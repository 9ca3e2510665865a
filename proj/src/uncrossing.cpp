#include "regmatch/uncrossing.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>
#include <string>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

EdgeSet set_union(const EdgeSet& x, const EdgeSet& y) {
  EdgeSet out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

bool intersects(const EdgeSet& x, const EdgeSet& y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

// Also used for sorted vertex lists, which share the representation.
bool subset(const EdgeSet& inner, const EdgeSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

struct PairSets {
  EdgeSet witness;
  EdgeSet cut;
};

std::vector<PairSets> sets_of(const BipartiteGraph& g, const std::vector<VertexPair>& pairs) {
  std::vector<PairSets> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back({witness_set(g, pair), cut_set(g, pair)});
  return out;
}

void check_size(const BipartiteGraph& g) {
  if (g.n_left() > kUncrossCap || g.n_right() > kUncrossCap) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "uncrossing limited to " + std::to_string(kUncrossCap) + " vertices per side");
  }
}

// Region signature of every vertex: bit i says membership in A_i (left) or B_i (right).
struct Signatures {
  std::vector<VennIndex> left;
  std::vector<VennIndex> right;
};

Signatures signatures(const BipartiteGraph& g, const std::vector<VertexPair>& pairs) {
  const std::size_t j = pairs.size();
  Signatures s;
  s.left.assign(static_cast<std::size_t>(g.n_left()), VennIndex{std::vector<bool>(j, false)});
  s.right.assign(static_cast<std::size_t>(g.n_right()), VennIndex{std::vector<bool>(j, false)});
  for (std::size_t i = 0; i < j; ++i) {
    for (int p : pairs[i].a) s.left[static_cast<std::size_t>(p)].bits[i] = true;
    for (int q : pairs[i].b) s.right[static_cast<std::size_t>(q)].bits[i] = true;
  }
  return s;
}

void check_pairs(const BipartiteGraph& g, const std::vector<VertexPair>& pairs) {
  for (const auto& pair : pairs) {
    for (int p : pair.a) {
      if (p < 0 || p >= g.n_left()) throw Error(ErrorCode::kInvalidPair, "left vertex out of range");
    }
    for (int q : pair.b) {
      if (q < 0 || q >= g.n_right()) throw Error(ErrorCode::kInvalidPair, "right vertex out of range");
    }
  }
}

}  // namespace

ThicknessContext::ThicknessContext(BipartiteGraph g, std::vector<Rational> t, EdgeSet relevant)
    : graph_(std::move(g)), t_(std::move(t)), relevant_(static_cast<std::size_t>(graph_.num_edges()), 0) {
  if (static_cast<int>(t_.size()) != graph_.num_edges()) {
    throw Error(ErrorCode::kInvalidParameters, "t must give one weight per edge");
  }
  for (const auto& w : t_) {
    if (w < 0) throw Error(ErrorCode::kInvalidParameters, "t must be nonnegative");
  }
  for (EdgeId e : relevant) {
    if (e < 0 || e >= graph_.num_edges()) throw Error(ErrorCode::kInvalidParameters, "relevant edge out of range");
    relevant_[static_cast<std::size_t>(e)] = 1;
  }
  for (EdgeId e = 0; e < graph_.num_edges(); ++e) {
    if (relevant_[static_cast<std::size_t>(e)]) relevant_list_.push_back(e);
  }
}

ThicknessContext ThicknessContext::uniform(BipartiteGraph g) {
  const int m = g.num_edges();
  EdgeSet all(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) all[static_cast<std::size_t>(e)] = e;
  return ThicknessContext(std::move(g), std::vector<Rational>(static_cast<std::size_t>(m), Rational(1)),
                          std::move(all));
}

Rational ThicknessContext::weight(const EdgeSet& edges) const {
  Rational total = 0;
  for (EdgeId e : edges) total += t_[static_cast<std::size_t>(e)];
  return total;
}

Rational ThicknessContext::relevant_weight(const EdgeSet& edges) const {
  Rational total = 0;
  for (EdgeId e : edges) {
    if (is_relevant(e)) total += t_[static_cast<std::size_t>(e)];
  }
  return total;
}

bool is_gamma_thick(const ThicknessContext& ctx, const VertexPair& pair, const Rational& gamma) {
  const BipartiteGraph& g = ctx.graph();
  return ctx.relevant_weight(witness_set(g, pair)) > gamma * ctx.weight(cut_set(g, pair));
}

bool is_gamma_thick(const ThicknessContext& ctx, const PairCollection& r) {
  return std::all_of(r.pairs.begin(), r.pairs.end(),
                     [&](const VertexPair& pair) { return is_gamma_thick(ctx, pair, r.gamma); });
}

PairCollection dedup(const ThicknessContext& ctx, const PairCollection& r) {
  PairCollection out;
  out.gamma = r.gamma;
  std::vector<PairSets> kept;
  for (const auto& pair : r.pairs) {
    PairSets sets{witness_set(ctx.graph(), pair), cut_set(ctx.graph(), pair)};
    const bool seen = std::any_of(kept.begin(), kept.end(), [&](const PairSets& k) {
      return k.witness == sets.witness && k.cut == sets.cut;
    });
    if (seen) continue;
    kept.push_back(std::move(sets));
    out.pairs.push_back(pair);
  }
  return out;
}

bool cut_precedes(const EdgeSet& x, const EdgeSet& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

VennIndex VennIndex::complement() const {
  VennIndex out = *this;
  out.bits.flip();
  return out;
}

bool VennIndex::is_zero() const { return std::none_of(bits.begin(), bits.end(), [](bool b) { return b; }); }

std::vector<VennPair> venn_pairs(const BipartiteGraph& g, const std::vector<VertexPair>& pairs) {
  check_pairs(g, pairs);
  const Signatures sig = signatures(g, pairs);
  std::map<VennIndex, VertexPair> regions;
  for (int p = 0; p < g.n_left(); ++p) regions[sig.left[static_cast<std::size_t>(p)]].a.push_back(p);
  for (int q = 0; q < g.n_right(); ++q) regions[sig.right[static_cast<std::size_t>(q)]].b.push_back(q);
  std::vector<VennIndex> present;
  for (const auto& [index, _] : regions) present.push_back(index);
  for (const auto& index : present) regions.try_emplace(index.complement());
  std::vector<VennPair> out;
  for (const auto& [index, pair] : regions) {
    VennPair vp{index, pair, witness_set(g, pair), cut_set(g, pair)};
    out.push_back(std::move(vp));
  }
  return out;
}

VennReport check_venn_structure(const BipartiteGraph& g, const std::vector<VertexPair>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kInvalidCollection, "empty collection");
  const auto sets = sets_of(g, pairs);
  const EdgeSet& shared = sets.front().cut;
  for (const auto& s : sets) {
    if (s.cut != shared) throw Error(ErrorCode::kInvalidCollection, "pairs do not share a single cut");
  }
  const auto venn = venn_pairs(g, pairs);
  std::map<VennIndex, std::size_t> position;
  for (std::size_t k = 0; k < venn.size(); ++k) position[venn[k].index] = k;

  VennReport report;
  report.witness_disjoint = true;
  report.cut_disjoint = true;
  for (std::size_t x = 0; x < venn.size(); ++x) {
    const VennIndex bar = venn[x].index.complement();
    for (std::size_t y = x + 1; y < venn.size(); ++y) {
      if (intersects(venn[x].witness, venn[y].witness)) report.witness_disjoint = false;
      if (venn[y].index != bar && intersects(venn[x].cut, venn[y].cut)) report.cut_disjoint = false;
    }
  }
  report.cut_symmetric = true;
  report.witness_cut = true;
  for (const auto& vp : venn) {
    const VennPair& other = venn[position.at(vp.index.complement())];
    if (vp.cut != other.cut) report.cut_symmetric = false;
    if (set_union(vp.witness, other.witness) != vp.cut) report.witness_cut = false;
  }
  report.witness_union = true;
  report.cut_union = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EdgeSet w;
    EdgeSet c;
    for (const auto& vp : venn) {
      if (!vp.index.bits[i]) continue;
      w = set_union(w, vp.witness);
      c = set_union(c, vp.cut);
    }
    if (w != sets[i].witness) report.witness_union = false;
    if (c != shared) report.cut_union = false;
  }
  const Signatures sig = signatures(g, pairs);
  report.edge_rule = true;
  for (const auto& e : g.edges()) {
    const VennIndex& from = sig.left[static_cast<std::size_t>(e.p)];
    const VennIndex& to = sig.right[static_cast<std::size_t>(e.q)];
    if (from != to && from != to.complement()) report.edge_rule = false;
  }
  return report;
}

PairCollection venn_thick_pairs(const ThicknessContext& ctx, const PairCollection& r) {
  PairCollection out;
  out.gamma = r.gamma;
  for (const auto& vp : venn_pairs(ctx.graph(), r.pairs)) {
    if (vp.index.is_zero()) continue;
    if (ctx.relevant_weight(vp.witness) > r.gamma * ctx.weight(vp.cut)) out.pairs.push_back(vp.pair);
  }
  return out;
}

PairCollection venn_uncross_single_cut(const ThicknessContext& ctx, const PairCollection& r) {
  if (r.pairs.size() <= 2) throw Error(ErrorCode::kInvalidCollection, "single-cut step needs more than two pairs");
  const auto sets = sets_of(ctx.graph(), r.pairs);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].cut != sets.front().cut) throw Error(ErrorCode::kInvalidCollection, "pairs do not share a single cut");
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[i].witness == sets[j].witness) throw Error(ErrorCode::kInvalidCollection, "redundant pairs");
    }
  }
  if (!is_gamma_thick(ctx, r)) throw Error(ErrorCode::kInvalidCollection, "collection is not gamma-thick");
  return venn_thick_pairs(ctx, r);
}

PairCollection uncross(const ThicknessContext& ctx, const PairCollection& r) {
  check_size(ctx.graph());
  check_pairs(ctx.graph(), r.pairs);
  if (!is_gamma_thick(ctx, r)) throw Error(ErrorCode::kInvalidCollection, "collection is not gamma-thick");

  PairCollection result;
  result.gamma = r.gamma;
  PairCollection work = dedup(ctx, r);
  // Each round settles the largest remaining cut, so cuts strictly shrink.
  while (!work.pairs.empty()) {
    const auto sets = sets_of(ctx.graph(), work.pairs);
    std::size_t top = 0;
    for (std::size_t i = 1; i < sets.size(); ++i) {
      if (cut_precedes(sets[top].cut, sets[i].cut)) top = i;
    }
    PairCollection rest;
    PairCollection largest;
    rest.gamma = largest.gamma = r.gamma;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      (sets[i].cut == sets[top].cut ? largest : rest).pairs.push_back(work.pairs[i]);
    }
    if (largest.pairs.size() <= 2) {
      result.pairs.insert(result.pairs.end(), largest.pairs.begin(), largest.pairs.end());
    } else {
      const PairCollection venn = venn_uncross_single_cut(ctx, largest);
      rest.pairs.insert(rest.pairs.end(), venn.pairs.begin(), venn.pairs.end());
    }
    work = dedup(ctx, rest);
  }
  return result;
}

UncrossingReport verify_uncrossing(const ThicknessContext& ctx, const PairCollection& r, const PairCollection& t,
                                   const Rational& gamma) {
  const BipartiteGraph& g = ctx.graph();
  const auto r_sets = sets_of(g, r.pairs);
  const auto t_sets = sets_of(g, t.pairs);
  UncrossingReport report;
  report.thick_ok = std::all_of(t.pairs.begin(), t.pairs.end(),
                                [&](const VertexPair& pair) { return is_gamma_thick(ctx, pair, gamma); });
  report.p1_ok = std::all_of(r_sets.begin(), r_sets.end(), [&](const PairSets& rs) {
    return std::any_of(t_sets.begin(), t_sets.end(),
                       [&](const PairSets& ts) { return subset(ts.cut, rs.cut) && subset(ts.witness, rs.witness); });
  });
  report.p2_ok = std::all_of(t_sets.begin(), t_sets.end(), [&](const PairSets& ts) {
    return std::any_of(r_sets.begin(), r_sets.end(), [&](const PairSets& rs) { return subset(ts.cut, rs.cut); });
  });
  std::map<EdgeSet, std::vector<VertexPair>> by_cut;
  for (std::size_t i = 0; i < t.pairs.size(); ++i) {
    auto& group = by_cut[t_sets[i].cut];
    if (std::find(group.begin(), group.end(), t.pairs[i]) == group.end()) group.push_back(t.pairs[i]);
  }
  report.p3_ok = std::all_of(by_cut.begin(), by_cut.end(), [](const auto& entry) { return entry.second.size() <= 2; });
  return report;
}

CombinatorialReport verify_combinatorial_uncrossing(const BipartiteGraph& g, const std::vector<VertexPair>& r,
                                                    const std::vector<VertexPair>& t,
                                                    const std::vector<std::vector<int>>& index_map) {
  CombinatorialReport report;
  report.map_ok = index_map.size() == r.size();
  for (const auto& images : index_map) {
    for (int k : images) {
      if (k < 0 || k >= static_cast<int>(t.size())) report.map_ok = false;
    }
  }
  if (!report.map_ok) return report;
  const auto r_sets = sets_of(g, r);
  const auto t_sets = sets_of(g, t);
  report.witness_disjoint = report.cut_disjoint = report.vertices_disjoint = true;
  report.contained = report.unions_exact = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& images = index_map[i];
    EdgeSet w;
    EdgeSet c;
    for (std::size_t x = 0; x < images.size(); ++x) {
      const auto kx = static_cast<std::size_t>(images[x]);
      const VertexPair& px = t[kx];
      if (!subset(px.a, r[i].a) || !subset(px.b, r[i].b)) report.contained = false;
      w = set_union(w, t_sets[kx].witness);
      c = set_union(c, t_sets[kx].cut);
      for (std::size_t y = x + 1; y < images.size(); ++y) {
        const auto ky = static_cast<std::size_t>(images[y]);
        const VertexPair& py = t[ky];
        if (kx == ky || intersects(t_sets[kx].witness, t_sets[ky].witness)) report.witness_disjoint = false;
        if (kx == ky || intersects(t_sets[kx].cut, t_sets[ky].cut)) report.cut_disjoint = false;
        if (kx == ky || intersects(px.a, py.a) || intersects(px.b, py.b)) report.vertices_disjoint = false;
      }
    }
    if (w != r_sets[i].witness || c != r_sets[i].cut) report.unions_exact = false;
  }
  std::map<EdgeSet, std::vector<VertexPair>> by_cut;
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto& group = by_cut[t_sets[k].cut];
    if (std::find(group.begin(), group.end(), t[k]) == group.end()) group.push_back(t[k]);
  }
  report.half_injective =
      std::all_of(by_cut.begin(), by_cut.end(), [](const auto& entry) { return entry.second.size() <= 2; });
  return report;
}

CombinatorialUncrossing venn_combinatorial_uncrossing(const BipartiteGraph& g, const std::vector<VertexPair>& r) {
  if (r.empty()) return {};
  const auto sets = sets_of(g, r);
  for (const auto& s : sets) {
    if (s.cut != sets.front().cut) throw Error(ErrorCode::kInvalidCollection, "pairs do not share a single cut");
  }
  CombinatorialUncrossing out;
  out.index_map.resize(r.size());
  for (const auto& vp : venn_pairs(g, r)) {
    if (vp.cut.empty()) continue;
    const int k = static_cast<int>(out.pairs.size());
    out.pairs.push_back(vp.pair);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (vp.index.bits[i]) out.index_map[i].push_back(k);
    }
  }
  return out;
}

CrossingDemo crossing_demo() {
  // Left: 0,1 in A∩X, 2 in A only, 3 in X only, 4 in neither.
  // Right: 0 in B∩Y, 1 in B only, 2 in Y only, 3,4 in neither.
  std::vector<BipartiteGraph::Edge> edges = {
      {0, 0}, {1, 0}, {2, 1}, {3, 2}, {4, 3},  // inside a region
      {0, 3}, {1, 4}, {4, 0},                  // A∩X <-> outside both
      {2, 2}, {3, 1},                          // A only <-> Y only
  };
  CrossingDemo demo;
  demo.graph = BipartiteGraph(5, 5, std::move(edges));
  demo.first = VertexPair({0, 1, 2}, {0, 1});
  demo.second = VertexPair({0, 1, 3}, {0, 2});
  demo.expected = VertexPair({0, 1}, {0});
  return demo;
}

CrossingDemo uncrossable_demo() {
  // Cycle p0 q0 p1 q1 plus chords; (A,B) and (X,Y) swap which half of the
  // shared cut they witness.
  std::vector<BipartiteGraph::Edge> edges = {
      {0, 0}, {1, 1},  // inside
      {0, 1}, {1, 0},  // the shared cut
  };
  CrossingDemo demo;
  demo.graph = BipartiteGraph(2, 2, std::move(edges));
  demo.first = VertexPair({0}, {0});
  demo.second = VertexPair({1}, {1});
  demo.expected = VertexPair();
  return demo;
}

namespace {

struct Candidate {
  VertexPair pair;
  PairSets sets;
};

ThicknessContext random_context(int n_left, int n_right, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<int> num(1, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<BipartiteGraph::Edge> edges;
  for (int p = 0; p < n_left; ++p) {
    for (int q = 0; q < n_right; ++q) {
      if (coin(rng) < 4) edges.push_back({p, q});
      if (coin(rng) == 0) edges.push_back({p, q});
    }
  }
  std::vector<Rational> t;
  EdgeSet relevant;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    t.emplace_back(num(rng), den(rng));
    if (coin(rng) < 8) relevant.push_back(static_cast<EdgeId>(e));
  }
  return ThicknessContext(BipartiteGraph(n_left, n_right, std::move(edges)), std::move(t), std::move(relevant));
}

// Thick pairs grouped by cut, each group free of redundant witness sets.
std::map<EdgeSet, std::vector<Candidate>> thick_groups(const ThicknessContext& ctx, const Rational& gamma) {
  const BipartiteGraph& g = ctx.graph();
  const int nl = g.n_left();
  const int total = g.num_vertices();
  std::map<EdgeSet, std::vector<Candidate>> groups;
  for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
    std::vector<int> a, b;
    for (int v = 0; v < total; ++v) {
      if (!(mask >> v & 1u)) continue;
      if (v < nl) a.push_back(v);
      else b.push_back(v - nl);
    }
    VertexPair pair(std::move(a), std::move(b));
    PairSets sets{witness_set(g, pair), cut_set(g, pair)};
    if (!(ctx.relevant_weight(sets.witness) > gamma * ctx.weight(sets.cut))) continue;
    auto& group = groups[sets.cut];
    const bool redundant = std::any_of(group.begin(), group.end(),
                                       [&](const Candidate& c) { return c.sets.witness == sets.witness; });
    if (!redundant) group.push_back({std::move(pair), std::move(sets)});
  }
  return groups;
}

void check_instance_size(int n_left, int n_right) {
  if (n_left < 1 || n_right < 1) throw Error(ErrorCode::kInvalidParameters, "instance sides must be nonempty");
  if (n_left > kUncrossCap || n_right > kUncrossCap) {
    throw Error(ErrorCode::kInstanceTooLarge, "random instances limited to kUncrossCap vertices per side");
  }
}

}  // namespace

ThickInstance random_thick_instance(int n_left, int n_right, const Rational& gamma, std::uint64_t seed) {
  check_instance_size(n_left, n_right);
  std::mt19937_64 rng(seed);
  ThicknessContext ctx = random_context(n_left, n_right, rng);
  const auto groups = thick_groups(ctx, gamma);
  PairCollection coll;
  coll.gamma = gamma;
  std::vector<const std::vector<Candidate>*> shared, single;
  for (const auto& [cut, group] : groups) (group.size() >= 3 ? shared : single).push_back(&group);
  std::shuffle(shared.begin(), shared.end(), rng);
  std::shuffle(single.begin(), single.end(), rng);
  std::uniform_int_distribution<int> few(0, 2);
  const int shared_groups = std::min<int>(few(rng) + 1, static_cast<int>(shared.size()));
  for (int k = 0; k < shared_groups; ++k) {
    for (const auto& c : *shared[static_cast<std::size_t>(k)]) coll.pairs.push_back(c.pair);
  }
  std::uniform_int_distribution<int> extra(1, 6);
  const int singles = std::min<int>(extra(rng), static_cast<int>(single.size()));
  for (int k = 0; k < singles; ++k) {
    const auto& group = *single[static_cast<std::size_t>(k)];
    coll.pairs.push_back(group[static_cast<std::size_t>(k) % group.size()].pair);
  }
  std::shuffle(coll.pairs.begin(), coll.pairs.end(), rng);
  return {std::move(ctx), std::move(coll)};
}

ThickInstance random_single_cut_instance(int n_left, int n_right, const Rational& gamma, std::uint64_t seed) {
  check_instance_size(n_left, n_right);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ThicknessContext ctx = random_context(n_left, n_right, rng);
    const auto groups = thick_groups(ctx, gamma);
    std::vector<const std::vector<Candidate>*> shared;
    for (const auto& [cut, group] : groups) {
      if (group.size() >= 3) shared.push_back(&group);
    }
    if (shared.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, shared.size() - 1);
    const auto& group = *shared[pick(rng)];
    PairCollection coll;
    coll.gamma = gamma;
    for (const auto& c : group) coll.pairs.push_back(c.pair);
    std::shuffle(coll.pairs.begin(), coll.pairs.end(), rng);
    std::uniform_int_distribution<std::size_t> keep(3, coll.pairs.size());
    coll.pairs.resize(keep(rng));
    return {std::move(ctx), std::move(coll)};
  }
  throw Error(ErrorCode::kInvalidParameters, "no single-cut collection found for these sizes");
}

}  // namespace regmatch
