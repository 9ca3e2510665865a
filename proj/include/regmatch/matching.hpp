#pragma once

#include <vector>

#include "regmatch/graph.hpp"

namespace regmatch {

inline constexpr int kUnmatched = -1;

struct Matching {
  std::vector<int> left_mate;   // P -> Q, kUnmatched when free
  std::vector<int> right_mate;  // Q -> P
  int size = 0;

  static Matching empty(int n_left, int n_right);
  static Matching empty_for(const BipartiteGraph& g) { return empty(g.n_left(), g.n_right()); }

  void match(int p, int q);
  void unmatch_left(int p);
};

/// Partner maps mutually inverse, size consistent, every pair an edge of g.
bool is_valid_matching(const BipartiteGraph& g, const Matching& m);

/// Alternating level graph. a_layers[j] = A_j, b_layers[j] = B_j with
/// b_layers[0] = B_0 = {}. L is the index of the last B layer examined.
struct LevelGraph {
  enum class Termination { kFreeVertexFound, kFrontierEmpty };

  std::vector<std::vector<int>> a_layers;
  std::vector<std::vector<int>> b_layers;
  int L = 0;
  Termination terminated_by = Termination::kFrontierEmpty;

  /// Length (edge count) of a shortest augmenting path, 2L - 1, when one exists.
  int path_length() const { return terminated_by == Termination::kFreeVertexFound ? 2 * L - 1 : 0; }
};

LevelGraph build_level_graph(const BipartiteGraph& g, const Matching& m);

struct PhaseRecord {
  int path_length = 0;
  int augmentations = 0;
  int size_after = 0;
  std::vector<int> layer_sizes;  // |B_1| .. |B_L|
};

struct PhaseStats {
  std::vector<PhaseRecord> phases;

  int phase_count() const { return static_cast<int>(phases.size()); }
  int total_augmentations() const;
  std::vector<int> path_lengths() const;
  /// Shortest-path lengths strictly increase from phase to phase.
  bool lengths_strictly_increasing() const;
};

/// One Hopcroft-Karp phase: a maximal set of vertex-disjoint shortest
/// augmenting paths found by depth-first search over the level graph.
/// Returns the number of augmentations; throws kNoAugmentingPath at a maximum.
int augment_phase(const BipartiteGraph& g, Matching& m, PhaseRecord* record = nullptr);

struct MatchResult {
  Matching matching;
  PhaseStats stats;
};

MatchResult hopcroft_karp(const BipartiteGraph& g);
/// Continues phases from a warm start; stats cover only the new phases.
MatchResult complete_matching(const BipartiteGraph& g, Matching start);

}  // namespace regmatch
