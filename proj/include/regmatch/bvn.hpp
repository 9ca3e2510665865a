#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/matching.hpp"
#include "regmatch/rational.hpp"
#include "regmatch/sampling.hpp"

namespace regmatch {

struct MatrixEntry {
  int row = 0;
  int col = 0;
  Rational value;
};

/// Sparse nonnegative n x n matrix with every row and column summing to 1.
/// Zero entries are dropped; entries are kept sorted by (row, col).
class DoublyStochasticMatrix {
 public:
  DoublyStochasticMatrix(int n, std::vector<MatrixEntry> entries);

  int n() const noexcept { return n_; }
  const std::vector<MatrixEntry>& entries() const noexcept { return entries_; }
  /// Every entry has a power-of-two denominator.
  bool dyadic() const noexcept { return dyadic_; }
  /// Largest base-2 exponent of any denominator; -1 for non-dyadic matrices.
  int bits() const noexcept { return bits_; }

  /// One edge per entry, in entry order. Weighted by the entry values when
  /// `weighted` is set.
  BipartiteGraph support_graph(bool weighted) const;

 private:
  int n_ = 0;
  std::vector<MatrixEntry> entries_;
  bool dyadic_ = true;
  int bits_ = 0;
};

/// Text format: first line "n", then one "i j value" line per nonzero entry,
/// value as an integer, fraction or decimal. '#' starts a comment.
DoublyStochasticMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const DoublyStochasticMatrix& m);
DoublyStochasticMatrix load_matrix(const std::string& path);

/// Weighted average of k random permutation matrices with dyadic weights
/// c_i / 2^bits, c_i >= 1. Requires 1 <= k <= 2^bits and bits <= 30.
DoublyStochasticMatrix random_dyadic_matrix(int n, int k, int bits, std::uint64_t seed);

/// Balanced orientation of an even-degree bipartite multigraph: the edges are
/// walked as closed trails, and result[e] is true when edge e is traversed
/// left to right. Every vertex ends with equal in- and out-degree. `touches`
/// accumulates one per incidence slot scanned.
std::vector<bool> euler_orient(const BipartiteGraph& g, std::int64_t* touches = nullptr);

struct BitRound {
  int bit = 0;                 // exponent j of the eliminated 2^-j
  int edges = 0;               // entries with that bit set
  bool even_degrees = false;   // checked before orienting
  bool stochastic_ok = false;  // exact row and column sums after the round
  bool support_ok = false;     // support did not grow
  bool bit_cleared = false;    // no entry keeps the bit afterwards
};

struct BitsResult {
  Matching matching;
  std::vector<BitRound> rounds;

  bool invariants_ok() const;
};

/// Bit elimination by Euler orientation. Throws kUnsupportedInput for
/// non-dyadic matrices or more than 62 bits.
BitsResult bvn_match_bits(const DoublyStochasticMatrix& m);

struct SampledBvnResult {
  Matching matching;
  int sampled_edges = 0;
  bool fallback_used = false;
};

/// Strength-based sample of the weighted support with gamma = 1/2, then
/// Hopcroft-Karp; falls back to the full support when the sample has no
/// perfect matching.
SampledBvnResult bvn_match_sampled(const DoublyStochasticMatrix& m, const SamplerConfig& cfg);

struct BvnTerm {
  Rational coefficient;
  std::vector<int> permutation;  // permutation[row] = col
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;
  int fallbacks = 0;
};

/// Repeatedly matches the normalised remainder and subtracts the smallest
/// matched entry. Coefficients sum to 1 and reproduce the matrix exactly.
BvnDecomposition bvn_decompose(const DoublyStochasticMatrix& m, const SamplerConfig& cfg);

/// Exact check that the terms sum back to the matrix.
bool reconstructs(const DoublyStochasticMatrix& m, const BvnDecomposition& dec);

/// Permutation matching lies in the matrix support.
bool in_support(const DoublyStochasticMatrix& m, const Matching& matching);

struct HalvingResult {
  Matching matching;
  int depth = 0;
  std::int64_t touches = 0;
  std::vector<int> level_edges;  // edge count at each level, input first
};

/// Perfect matching of a 2^k-regular bipartite graph by k rounds of keeping
/// the left-to-right edges of a balanced orientation.
HalvingResult euler_halve(const BipartiteGraph& g);

}  // namespace regmatch
