#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "regmatch/rational.hpp"

namespace regmatch {

using EdgeId = int;
// Sorted, duplicate-free list of edge indices.
using EdgeSet = std::vector<EdgeId>;

/// Bipartite multigraph G = (P, Q, E). Left vertices are P, right vertices Q.
/// Parallel edges are distinct edges. Weights are optional; an unweighted
/// graph reports weight 1 for every edge.
class BipartiteGraph {
 public:
  struct Edge {
    int p = 0;
    int q = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  BipartiteGraph() = default;
  BipartiteGraph(int n_left, int n_right, std::vector<Edge> edges,
                 std::vector<Rational> weights = {});

  int n_left() const noexcept { return n_left_; }
  int n_right() const noexcept { return n_right_; }
  int num_vertices() const noexcept { return n_left_ + n_right_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool weighted() const noexcept { return !weights_.empty(); }
  const Rational& weight(EdgeId e) const;
  std::span<const Rational> weights() const noexcept { return weights_; }

  std::span<const EdgeId> left_incident(int p) const;
  std::span<const EdgeId> right_incident(int q) const;
  int left_degree(int p) const { return static_cast<int>(left_incident(p).size()); }
  int right_degree(int q) const { return static_cast<int>(right_incident(q).size()); }

  /// Same vertex set, only the listed edges (renumbered in list order).
  BipartiteGraph subgraph(std::span<const EdgeId> edge_ids) const;

  /// Edge list sorted by (p, q); the multiset identity of the graph.
  std::vector<Edge> sorted_edges() const;

 private:
  int n_left_ = 0;
  int n_right_ = 0;
  std::vector<Edge> edges_;
  std::vector<Rational> weights_;
  // CSR incidence: offsets into incident_ for left vertices then right vertices.
  std::vector<int> offsets_;
  std::vector<EdgeId> incident_;
};

/// Degree d if every vertex on both sides has exactly d incident edges and the
/// sides have equal size.
std::optional<int> regular_degree(const BipartiteGraph& g);
bool is_regular(const BipartiteGraph& g, int d);

/// A ⊆ P, B ⊆ Q, kept sorted and deduplicated.
struct VertexPair {
  std::vector<int> a;
  std::vector<int> b;

  VertexPair() = default;
  VertexPair(std::vector<int> left, std::vector<int> right);

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// W(A,B): edges from A to Q \ B.
EdgeSet witness_set(const BipartiteGraph& g, const VertexPair& pair);
/// W(B,A) = W(P \ A, Q \ B): edges from P \ A into B.
EdgeSet reverse_witness_set(const BipartiteGraph& g, const VertexPair& pair);
/// C(A,B): edges between A ∪ B and (P \ A) ∪ (Q \ B).
EdgeSet cut_set(const BipartiteGraph& g, const VertexPair& pair);

/// Brute-force Hall oracle. Returns (A, N(A)) with |N(A)| < |A| when no
/// perfect matching exists. Requires n_left == n_right <= kHallOracleCap.
inline constexpr int kHallOracleCap = 20;
std::optional<VertexPair> hall_violator(const BipartiteGraph& g);

/// Union of d uniformly random permutations on n + n vertices.
BipartiteGraph gen_regular(int n, int d, std::uint64_t seed);

struct AdversarialParams {
  int d = 2;
  int t = 1;
};

/// Lower-bound family for the augmentation count: t stacked copies of
/// (d - k)-regular blocks joined through hub vertices u_j, v_j. Left side is
/// U_1..U_t followed by u_1..u_t; right side is V_1..V_t followed by v_1..v_t.
BipartiteGraph gen_adversarial(const AdversarialParams& params, std::uint64_t seed);

}  // namespace regmatch
