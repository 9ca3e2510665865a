#pragma once

#include <cstdint>
#include <vector>

#include "regmatch/graph.hpp"

namespace regmatch {

/// Vertex-disjoint pieces of a d-regular graph. Vertices use the combined
/// numbering: left p -> p, right q -> n_left + q.
struct Decomposition {
  std::vector<std::vector<int>> pieces;  // each sorted
  EdgeSet removed_edges;                 // edges joining different pieces

  int k() const { return static_cast<int>(pieces.size()); }
};

/// Repeatedly splits off a vertex set whose boundary in the remaining graph is
/// below d/4. The split set is shrunk until its own induced min cut exceeds d/8.
Decomposition decompose(const BipartiteGraph& g);

struct DecompositionReport {
  bool mincut_ok = false;    // every multi-vertex piece has min cut > d/8
  bool count_ok = false;     // k <= 4n/d + 1
  bool boundary_ok = false;  // sum of piece boundaries <= 2n
  bool removed_ok = false;   // |E_r| <= n
  int d = 0;
  int n = 0;
  int k = 0;
  std::vector<std::int64_t> piece_min_cuts;  // -1 for single-vertex pieces (infinite)
  std::int64_t boundary_total = 0;
  int removed = 0;

  bool all_ok() const { return mincut_ok && count_ok && boundary_ok && removed_ok; }
};

/// Throws kInvalidInput when the pieces do not partition the vertex set or the
/// removed edges are not exactly the crossing edges.
DecompositionReport validate_decomposition(const BipartiteGraph& g, const Decomposition& dec);

struct RelevantPairSet {
  struct Entry {
    VertexPair pair;
    int piece = 0;
  };
  std::vector<Entry> pairs;
  EdgeSet relevant_edges;  // edges with both endpoints in one piece
};

/// All relevant pairs, by exhaustive search per piece (at most
/// kRelevantPieceCap vertices per side).
inline constexpr int kRelevantPieceCap = 12;
RelevantPairSet relevant_pairs(const BipartiteGraph& g, const Decomposition& dec);

/// Edges within pieces.
EdgeSet relevant_edges(const BipartiteGraph& g, const Decomposition& dec);

/// True iff every relevant witness set, restricted to relevant edges, meets e_star.
bool check_hall_hitting(const BipartiteGraph& g, const RelevantPairSet& rel, const EdgeSet& e_star);

struct WitnessCutReport {
  int pairs = 0;
  int satisfied = 0;  // |W(A,B) ∩ E_R| >= |C(A,B)| / 2
  double min_ratio = 0.0;
};
WitnessCutReport witness_cut_report(const BipartiteGraph& g, const RelevantPairSet& rel);

}  // namespace regmatch
