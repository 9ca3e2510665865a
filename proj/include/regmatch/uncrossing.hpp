#pragma once

#include <cstdint>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/rational.hpp"

namespace regmatch {

/// Graph plus an edge weight function t and a set of relevant edges.
class ThicknessContext {
 public:
  ThicknessContext(BipartiteGraph g, std::vector<Rational> t, EdgeSet relevant);
  /// t = 1 on every edge, every edge relevant.
  static ThicknessContext uniform(BipartiteGraph g);

  const BipartiteGraph& graph() const { return graph_; }
  const std::vector<Rational>& t() const { return t_; }
  const EdgeSet& relevant() const { return relevant_list_; }
  bool is_relevant(EdgeId e) const { return relevant_[static_cast<std::size_t>(e)] != 0; }

  Rational weight(const EdgeSet& edges) const;
  Rational relevant_weight(const EdgeSet& edges) const;

 private:
  BipartiteGraph graph_;
  std::vector<Rational> t_;
  EdgeSet relevant_list_;
  std::vector<char> relevant_;
};

struct PairCollection {
  std::vector<VertexPair> pairs;
  Rational gamma{1, 3};
};

/// t(W(A,B) ∩ E_R) > gamma * t(C(A,B)), compared exactly.
bool is_gamma_thick(const ThicknessContext& ctx, const VertexPair& pair, const Rational& gamma);
bool is_gamma_thick(const ThicknessContext& ctx, const PairCollection& r);

/// Keeps the first pair of every group sharing both witness set and cut.
PairCollection dedup(const ThicknessContext& ctx, const PairCollection& r);

/// Total order on edge sets: by size, then lexicographically on sorted ids.
bool cut_precedes(const EdgeSet& x, const EdgeSet& y);

/// Bit vector over the pairs of a single-cut collection.
struct VennIndex {
  std::vector<bool> bits;

  VennIndex complement() const;
  bool is_zero() const;
  friend bool operator==(const VennIndex&, const VennIndex&) = default;
  friend auto operator<=>(const VennIndex&, const VennIndex&) = default;
};

struct VennPair {
  VennIndex index;
  VertexPair pair;
  EdgeSet witness;
  EdgeSet cut;
};

/// Every Venn region that holds a vertex, together with its complement
/// region. All other regions are empty and have empty witness sets and cuts.
std::vector<VennPair> venn_pairs(const BipartiteGraph& g, const std::vector<VertexPair>& pairs);

struct VennReport {
  bool witness_disjoint = false;  // W_(b) ∩ W_(d) = ∅ for b != d
  bool witness_union = false;     // W(A_i,B_i) = ∪_{b_i=1} W_(b)
  bool cut_symmetric = false;     // C_(b) = C_(b̄)
  bool cut_disjoint = false;      // C_(b) ∩ C_(d) = ∅ for d ∉ {b, b̄}
  bool cut_union = false;         // S = ∪_{b_i=1} C_(b) for every i
  bool witness_cut = false;       // W_(b) ∪ W_(b̄) = C_(b)
  bool edge_rule = false;         // each edge joins region b to b or b̄

  bool all_ok() const {
    return witness_disjoint && witness_union && cut_symmetric && cut_disjoint && cut_union && witness_cut &&
           edge_rule;
  }
};

/// Checks the Venn identities for a collection whose pairs all share one cut.
VennReport check_venn_structure(const BipartiteGraph& g, const std::vector<VertexPair>& pairs);

/// All gamma-thick Venn pairs with a nonzero index. No size precondition.
PairCollection venn_thick_pairs(const ThicknessContext& ctx, const PairCollection& r);

/// Single-cut step: requires |r| > 2, non-redundancy, one shared cut and
/// thickness. Every returned cut is a proper subset of the shared cut.
PairCollection venn_uncross_single_cut(const ThicknessContext& ctx, const PairCollection& r);

inline constexpr int kUncrossCap = 8;

/// Inductive uncrossing over the largest cut. Exponential; at most
/// kUncrossCap vertices per side.
PairCollection uncross(const ThicknessContext& ctx, const PairCollection& r);

struct UncrossingReport {
  bool thick_ok = false;
  bool p1_ok = false;  // every r-pair has a representative with W' ⊆ W, C' ⊆ C
  bool p2_ok = false;  // every t-pair's cut lies inside some r-pair's cut
  bool p3_ok = false;  // no three distinct t-pairs share a cut

  bool all_ok() const { return thick_ok && p1_ok && p2_ok && p3_ok; }
  /// Partial uncrossing: everything except half-injectivity.
  bool partial_ok() const { return thick_ok && p1_ok && p2_ok; }
};

UncrossingReport verify_uncrossing(const ThicknessContext& ctx, const PairCollection& r, const PairCollection& t,
                                   const Rational& gamma);

struct CombinatorialReport {
  bool map_ok = false;               // index map well formed
  bool witness_disjoint = false;     // Q1.1
  bool cut_disjoint = false;         // Q1.2
  bool vertices_disjoint = false;    // Q1.3
  bool contained = false;            // Q1.4
  bool unions_exact = false;         // Q1.5
  bool half_injective = false;       // Q2

  bool q1_ok() const { return witness_disjoint && cut_disjoint && vertices_disjoint && contained && unions_exact; }
  bool all_ok() const { return map_ok && q1_ok() && half_injective; }
};

/// index_map[i] lists indices into t for r[i].
CombinatorialReport verify_combinatorial_uncrossing(const BipartiteGraph& g, const std::vector<VertexPair>& r,
                                                    const std::vector<VertexPair>& t,
                                                    const std::vector<std::vector<int>>& index_map);

struct CombinatorialUncrossing {
  std::vector<VertexPair> pairs;
  std::vector<std::vector<int>> index_map;
};

/// Venn construction for a single-cut collection: Venn pairs with a nonempty
/// cut, each r-pair mapped to the regions whose index has its bit set.
CombinatorialUncrossing venn_combinatorial_uncrossing(const BipartiteGraph& g, const std::vector<VertexPair>& r);

/// Small worked instance: two 1/2-thick pairs with one cut that collapse to
/// the single representative (A ∩ X, B ∩ Y).
struct CrossingDemo {
  BipartiteGraph graph;
  VertexPair first;
  VertexPair second;
  VertexPair expected;
};
CrossingDemo crossing_demo();

/// Two 1/2-thick pairs sharing a cut whose witness sets are each exactly half
/// of it, so no single representative exists.
CrossingDemo uncrossable_demo();

struct ThickInstance {
  ThicknessContext ctx;
  PairCollection collection;
};

/// Random graph with random rational weights and relevant edges, and a random
/// gamma-thick collection that favours pairs sharing a cut.
ThickInstance random_thick_instance(int n_left, int n_right, const Rational& gamma, std::uint64_t seed);

/// Random instance whose collection has at least three non-redundant
/// gamma-thick pairs sharing one cut. Retries internally with derived seeds.
ThickInstance random_single_cut_instance(int n_left, int n_right, const Rational& gamma, std::uint64_t seed);

}  // namespace regmatch
