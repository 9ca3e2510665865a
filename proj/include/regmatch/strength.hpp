#pragma once

#include <cstdint>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/rational.hpp"

namespace regmatch {

/// General undirected multigraph with integer edge weights. Bipartite graphs
/// map P to [0, n_left) and Q to [n_left, n_left + n_right).
struct UndirectedGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    std::int64_t w = 1;
  };
  int num_vertices = 0;
  std::vector<Edge> edges;
};

/// Rational weights are scaled by the least common denominator, which is
/// returned through `scale` (1 for unweighted graphs).
UndirectedGraph to_undirected(const BipartiteGraph& g, std::int64_t* scale = nullptr);

struct MinCutResult {
  bool finite = false;  // false for a single vertex: no proper bipartition exists
  std::int64_t value = 0;
  std::vector<int> side;  // sorted; proper and nonempty when finite
};

/// Deterministic global minimum cut (Stoer-Wagner). Ties resolve to the first
/// cut-of-the-phase achieving the minimum.
MinCutResult min_cut(const UndirectedGraph& g);
MinCutResult min_cut(const BipartiteGraph& g);
/// Min cut of the subgraph induced by `vertices` (side uses global ids).
MinCutResult min_cut_induced(const UndirectedGraph& g, const std::vector<int>& vertices);

/// Strength s_e per edge, expressed as value[e] / scale.
struct StrengthMap {
  std::vector<std::int64_t> value;
  std::int64_t scale = 1;

  std::size_t size() const noexcept { return value.size(); }
  Rational at(EdgeId e) const { return Rational(value[static_cast<std::size_t>(e)], scale); }
  double as_double(EdgeId e) const {
    return static_cast<double>(value[static_cast<std::size_t>(e)]) / static_cast<double>(scale);
  }
};

/// Exact strengths by recursive min-cut splitting. Every subproblem carries
/// the connectivity of its ancestors as a floor; vertices whose degree does
/// not exceed the floor are peeled off before the next min-cut call.
std::vector<std::int64_t> exact_strengths(const UndirectedGraph& g);
StrengthMap exact_strengths(const BipartiteGraph& g);

/// Test oracle: maximum edge-connectivity over all vertex-induced subgraphs
/// containing each edge. Exponential; refuses graphs above kBruteStrengthCap.
inline constexpr int kBruteStrengthCap = 12;
std::vector<std::int64_t> brute_strengths(const UndirectedGraph& g);
StrengthMap brute_strengths(const BipartiteGraph& g);

/// Smallest j >= 1 with sum_{i in s1, i >= j} 1/i > gamma * sum_{i in s2, i >= j} 1/i,
/// evaluated exactly. Throws kNoGuarantee when no such j exists (only possible
/// when |s1| <= gamma |s2|).
int multiset_split_index(const std::vector<int>& s1, const std::vector<int>& s2, const Rational& gamma);

}  // namespace regmatch
