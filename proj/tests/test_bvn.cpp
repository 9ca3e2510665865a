#include <gtest/gtest.h>

#include <sstream>

#include "regmatch/bvn.hpp"
#include "regmatch/error.hpp"

using namespace regmatch;

namespace {

DoublyStochasticMatrix permutation_matrix(const std::vector<int>& perm) {
  std::vector<MatrixEntry> entries;
  for (std::size_t r = 0; r < perm.size(); ++r) entries.push_back({static_cast<int>(r), perm[r], Rational(1)});
  return DoublyStochasticMatrix(static_cast<int>(perm.size()), entries);
}

DoublyStochasticMatrix uniform_matrix(int n) {
  std::vector<MatrixEntry> entries;
  for (int r = 0; r < n; ++r) for (int c = 0; c < n; ++c) entries.push_back({r, c, Rational(1, n)});
  return DoublyStochasticMatrix(n, entries);
}

// 2n-cycle: p_i adjacent to q_i and q_{i+1 mod n}.
BipartiteGraph cycle(int n) {
  std::vector<BipartiteGraph::Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, i});
    edges.push_back({i, (i + 1) % n});
  }
  return BipartiteGraph(n, n, edges);
}

bool perfect_in(const BipartiteGraph& g, const Matching& m) {
  return m.size == g.n_left() && is_valid_matching(g, m);
}

}  // namespace

TEST(Matrix, Validation) {
  EXPECT_THROW(DoublyStochasticMatrix(2, {{0, 0, Rational(1)}}), Error);
  EXPECT_THROW(DoublyStochasticMatrix(1, {{0, 0, Rational(1, 2)}, {0, 0, Rational(1, 2)}}), Error);
  EXPECT_THROW(DoublyStochasticMatrix(1, {{0, 1, Rational(1)}}), Error);
  EXPECT_THROW(DoublyStochasticMatrix(2, {{0, 0, Rational(2)}, {0, 1, Rational(-1)}, {1, 0, Rational(-1)}, {1, 1, Rational(2)}}),
               Error);
  const DoublyStochasticMatrix m(1, {{0, 0, Rational(1)}});
  EXPECT_EQ(m.entries().size(), 1u);
}

TEST(Matrix, ZerosDroppedAndDyadicBits) {
  const DoublyStochasticMatrix m(2, {{0, 0, Rational(3, 4)}, {0, 1, Rational(1, 4)}, {1, 0, Rational(1, 4)},
                                     {1, 1, Rational(3, 4)}});
  EXPECT_TRUE(m.dyadic());
  EXPECT_EQ(m.bits(), 2);
  const DoublyStochasticMatrix z(2, {{0, 0, Rational(1)}, {0, 1, Rational(0)}, {1, 1, Rational(1)}});
  EXPECT_EQ(z.entries().size(), 2u);
  EXPECT_EQ(z.bits(), 0);
  EXPECT_FALSE(uniform_matrix(3).dyadic());
}

TEST(Matrix, TextRoundTrip) {
  const auto m = random_dyadic_matrix(6, 4, 5, 3);
  std::stringstream s;
  write_matrix(s, m);
  const auto back = read_matrix(s);
  ASSERT_EQ(back.entries().size(), m.entries().size());
  for (std::size_t k = 0; k < m.entries().size(); ++k) EXPECT_EQ(back.entries()[k].value, m.entries()[k].value);
}

TEST(Matrix, ParsesDecimalsAndFractions) {
  std::istringstream in("2\n0 0 0.5\n0 1 1/2\n1 0 1/2\n1 1 .5\n");
  const auto m = read_matrix(in);
  EXPECT_EQ(m.entries().size(), 4u);
  EXPECT_EQ(m.bits(), 1);
}

TEST(Matrix, ParseErrors) {
  std::istringstream bad("2\n0 0 x\n");
  EXPECT_THROW(read_matrix(bad), Error);
  std::istringstream empty("");
  EXPECT_THROW(read_matrix(empty), Error);
}

TEST(RandomDyadic, IsDoublyStochastic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = random_dyadic_matrix(8, 5, 6, seed);
    EXPECT_TRUE(m.dyadic());
    EXPECT_LE(m.bits(), 6);
  }
  EXPECT_THROW(random_dyadic_matrix(4, 5, 2, 1), Error);
}

TEST(EulerOrient, BalancedDegrees) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = gen_regular(20, 4, seed);
    std::int64_t touches = 0;
    const auto fwd = euler_orient(g, &touches);
    std::vector<int> out(20, 0), in(20, 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (fwd[static_cast<std::size_t>(e)]) ++out[static_cast<std::size_t>(g.edge(e).p)];
      else ++in[static_cast<std::size_t>(g.edge(e).p)];
    }
    EXPECT_EQ(out, in);
    EXPECT_LE(touches, 2 * g.num_edges());
  }
}

TEST(BitsMatch, TwoByTwoHalves) {
  const DoublyStochasticMatrix m(2, {{0, 0, Rational(1, 2)}, {0, 1, Rational(1, 2)}, {1, 0, Rational(1, 2)},
                                     {1, 1, Rational(1, 2)}});
  const auto r = bvn_match_bits(m);
  ASSERT_EQ(r.rounds.size(), 1u);
  EXPECT_EQ(r.rounds[0].bit, 1);
  EXPECT_EQ(r.rounds[0].edges, 4);
  EXPECT_TRUE(r.invariants_ok());
  EXPECT_TRUE(in_support(m, r.matching));
}

TEST(BitsMatch, PermutationNeedsNoRounds) {
  const auto m = permutation_matrix({2, 0, 3, 1});
  const auto r = bvn_match_bits(m);
  EXPECT_TRUE(r.rounds.empty());
  EXPECT_EQ(r.matching.left_mate, std::vector<int>({2, 0, 3, 1}));
}

TEST(BitsMatch, RejectsNonDyadic) { EXPECT_THROW(bvn_match_bits(uniform_matrix(3)), Error); }

TEST(BitsMatch, RandomMatrices) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 31);
    const int k = 1 + static_cast<int>(seed % 16);
    const int bits = 4 + static_cast<int>(seed % 9);
    const auto m = random_dyadic_matrix(n, k, bits, seed);
    const auto r = bvn_match_bits(m);
    EXPECT_TRUE(r.invariants_ok()) << "seed " << seed;
    EXPECT_TRUE(in_support(m, r.matching)) << "seed " << seed;
    EXPECT_LE(static_cast<int>(r.rounds.size()), m.bits());
  }
}

TEST(SampledMatch, PermutationReturned) {
  const auto m = permutation_matrix({1, 2, 0});
  const auto r = bvn_match_sampled(m, SamplerConfig{});
  EXPECT_EQ(r.matching.left_mate, std::vector<int>({1, 2, 0}));
  EXPECT_FALSE(r.fallback_used);
}

TEST(SampledMatch, UniformMatrix) {
  const auto m = uniform_matrix(8);
  EXPECT_TRUE(in_support(m, bvn_match_sampled(m, SamplerConfig{}).matching));
}

TEST(SampledMatch, RandomMatrices) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = random_dyadic_matrix(16, 1 + static_cast<int>(seed % 12), 10, seed);
    SamplerConfig cfg;
    cfg.seed = seed;
    EXPECT_TRUE(in_support(m, bvn_match_sampled(m, cfg).matching)) << "seed " << seed;
  }
}

TEST(Decompose, ReconstructsExactly) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = random_dyadic_matrix(6, 1 + static_cast<int>(seed % 5), 6, seed);
    const auto dec = bvn_decompose(m, SamplerConfig{});
    EXPECT_TRUE(reconstructs(m, dec)) << "seed " << seed;
  }
  const auto u = uniform_matrix(4);
  EXPECT_TRUE(reconstructs(u, bvn_decompose(u, SamplerConfig{})));
}

TEST(Decompose, ReconstructionRejectsTamperedTerms) {
  const auto m = random_dyadic_matrix(5, 3, 4, 2);
  auto dec = bvn_decompose(m, SamplerConfig{});
  dec.terms.front().coefficient += Rational(1, 64);
  EXPECT_FALSE(reconstructs(m, dec));
}

TEST(EulerHalve, DegreeOneIsItsOwnMatching) {
  const auto g = gen_regular(9, 1, 4);
  const auto r = euler_halve(g);
  EXPECT_EQ(r.depth, 0);
  EXPECT_TRUE(perfect_in(g, r.matching));
}

TEST(EulerHalve, CycleGivesAlternatingEdges) {
  const auto g = cycle(6);
  const auto r = euler_halve(g);
  EXPECT_EQ(r.depth, 1);
  ASSERT_TRUE(perfect_in(g, r.matching));
  // Either every p_i takes q_i or every p_i takes q_{i+1}.
  const int shift = (r.matching.left_mate[0] - 0 + 6) % 6;
  for (int i = 0; i < 6; ++i) EXPECT_EQ(r.matching.left_mate[static_cast<std::size_t>(i)], (i + shift) % 6);
}

TEST(EulerHalve, DepthAndWork) {
  const auto g = gen_regular(64, 8, 5);
  const auto r = euler_halve(g);
  EXPECT_EQ(r.depth, 3);
  EXPECT_TRUE(perfect_in(g, r.matching));
  EXPECT_EQ(r.level_edges, std::vector<int>({512, 256, 128, 64}));
  EXPECT_LE(r.touches, 4 * g.num_edges());
}

TEST(EulerHalve, RejectsOtherDegrees) {
  EXPECT_THROW(euler_halve(gen_regular(8, 3, 1)), Error);
  EXPECT_THROW(euler_halve(BipartiteGraph(2, 2, {{0, 0}, {0, 1}, {1, 1}})), Error);
}
