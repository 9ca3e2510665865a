#include <gtest/gtest.h>

#include "oracles.hpp"
#include "regmatch/error.hpp"
#include "regmatch/strength.hpp"

using namespace regmatch;

namespace {

UndirectedGraph make(int n, std::vector<std::pair<int, int>> edges) {
  UndirectedGraph g;
  g.num_vertices = n;
  for (auto [u, v] : edges) g.edges.push_back({u, v, 1});
  return g;
}

UndirectedGraph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return make(n, edges);
}

std::int64_t cut_value(const UndirectedGraph& g, const std::vector<int>& side) {
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices), 0);
  for (int v : side) in[static_cast<std::size_t>(v)] = 1;
  std::int64_t value = 0;
  for (const auto& e : g.edges) if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) value += e.w;
  return value;
}

}  // namespace

TEST(MinCut, FourCycle) {
  const BipartiteGraph c4(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_EQ(min_cut(c4).value, 2);
}

TEST(MinCut, CompleteFour) { EXPECT_EQ(min_cut(complete(4)).value, 3); }

TEST(MinCut, DisconnectedIsZero) { EXPECT_EQ(min_cut(make(4, {{0, 1}, {2, 3}})).value, 0); }

TEST(MinCut, EmptyGraphRejected) { EXPECT_THROW(min_cut(UndirectedGraph{}), Error); }

TEST(MinCut, SingleVertexIsInfinite) { EXPECT_FALSE(min_cut(make(1, {})).finite); }

TEST(MinCut, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = oracle::random_undirected(n, 0.5, 4, seed);
    const auto r = min_cut(g);
    ASSERT_TRUE(r.finite);
    EXPECT_EQ(r.value, oracle::brute_min_cut(g)) << "seed " << seed;
    EXPECT_EQ(cut_value(g, r.side), r.value);
    EXPECT_FALSE(r.side.empty());
    EXPECT_LT(static_cast<int>(r.side.size()), n);
  }
}

TEST(MinCut, InducedUsesGlobalIds) {
  // Triangle 2-3-4 plus a pendant 0-2; induced on {2,3,4} the min cut is 2.
  const auto g = make(5, {{0, 2}, {2, 3}, {3, 4}, {2, 4}});
  const auto r = min_cut_induced(g, {2, 3, 4});
  EXPECT_EQ(r.value, 2);
  for (int v : r.side) EXPECT_TRUE(v >= 2 && v <= 4);
}

TEST(Strength, TreeEdgesAreBridges) {
  const auto s = exact_strengths(make(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}}));
  for (auto v : s) EXPECT_EQ(v, 1);
}

TEST(Strength, CompleteFour) {
  for (auto v : exact_strengths(complete(4))) EXPECT_EQ(v, 3);
}

TEST(Strength, TrianglesJoinedByBridge) {
  const auto g = make(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
  const auto s = exact_strengths(g);
  EXPECT_EQ(s, std::vector<std::int64_t>({2, 2, 2, 1, 2, 2, 2}));
  EXPECT_EQ(brute_strengths(g), s);
}

TEST(Strength, SingleEdgeAndFourCycle) {
  EXPECT_EQ(brute_strengths(make(2, {{0, 1}})), std::vector<std::int64_t>({1}));
  const BipartiteGraph c4(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto s = exact_strengths(c4);
  for (std::size_t e = 0; e < s.size(); ++e) EXPECT_EQ(s.at(static_cast<EdgeId>(e)), Rational(2));
}

TEST(Strength, ParallelEdgesAddUp) {
  const BipartiteGraph g(1, 1, {{0, 0}, {0, 0}, {0, 0}});
  const auto s = exact_strengths(g);
  for (std::size_t e = 0; e < s.size(); ++e) EXPECT_EQ(s.value[e], 3);
}

TEST(Strength, WeightedScale) {
  const BipartiteGraph g(1, 2, {{0, 0}, {0, 1}}, {Rational(1, 2), Rational(1, 3)});
  const auto s = exact_strengths(g);
  EXPECT_EQ(s.at(0), Rational(1, 2));
  EXPECT_EQ(s.at(1), Rational(1, 3));
}

TEST(Strength, AgreesWithBruteForceOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    const auto g = oracle::random_undirected(n, 0.55, 1 + static_cast<int>(seed % 3), seed);
    EXPECT_EQ(exact_strengths(g), brute_strengths(g)) << "seed " << seed;
  }
}

TEST(Strength, AgreesWithBruteForceOnBipartiteMultigraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_bipartite(4, 5, 0.5, seed);
    const auto a = exact_strengths(g);
    const auto b = brute_strengths(g);
    EXPECT_EQ(a.value, b.value) << "seed " << seed;
  }
}

TEST(Strength, BruteForceRefusesLargeGraphs) {
  EXPECT_THROW(brute_strengths(complete(kBruteStrengthCap + 1)), Error);
}

TEST(Strength, NeverExceedsEndpointCut) {
  // Any cut separating the endpoints of e is at least s_e.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 6;
    const auto g = oracle::random_undirected(n, 0.6, 3, seed);
    const auto s = exact_strengths(g);
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<int> side;
      for (int v = 0; v < n; ++v) if (mask >> v & 1u) side.push_back(v);
      const auto value = cut_value(g, side);
      for (std::size_t id = 0; id < g.edges.size(); ++id) {
        const auto& e = g.edges[id];
        if (((mask >> e.u) & 1u) != ((mask >> e.v) & 1u)) {
          EXPECT_GE(value, s[id]);
        }
      }
    }
  }
}

TEST(Strength, MonotoneUnderEdgeAddition) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = oracle::random_undirected(7, 0.4, 2, seed);
    const auto before = exact_strengths(g);
    g.edges.push_back({0, 6, 1});
    const auto after = exact_strengths(g);
    for (std::size_t id = 0; id < before.size(); ++id) EXPECT_GE(after[id], before[id]);
  }
}

TEST(MultisetSplit, Examples) {
  EXPECT_EQ(multiset_split_index({1}, {}, Rational(1)), 1);
  EXPECT_EQ(multiset_split_index({2, 2, 2}, {2, 2}, Rational(1)), 1);
  EXPECT_EQ(multiset_split_index({3}, {1}, Rational(1, 2)), 2);
}

TEST(MultisetSplit, NoGuaranteeWhenNoIndexExists) {
  try {
    multiset_split_index({1}, {1, 1}, Rational(1));
    FAIL() << "expected no-guarantee";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoGuarantee);
  }
}

TEST(MultisetSplit, ExistsWheneverFirstIsLarger) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> s1, s2;
    const int n2 = static_cast<int>(rng() % 6);
    for (int i = 0; i < n2; ++i) s2.push_back(1 + static_cast<int>(rng() % 6));
    const Rational gamma(1 + static_cast<int>(rng() % 3), 3);
    while (Rational(static_cast<int>(s1.size())) <= gamma * static_cast<int>(s2.size())) {
      s1.push_back(1 + static_cast<int>(rng() % 6));
    }
    const int j = multiset_split_index(s1, s2, gamma);
    Rational left = 0, right = 0;
    for (int v : s1) if (v >= j) left += Rational(1, v);
    for (int v : s2) if (v >= j) right += Rational(1, v);
    EXPECT_GT(left, gamma * right);
    for (int i = 1; i < j; ++i) {
      Rational l = 0, r = 0;
      for (int v : s1) if (v >= i) l += Rational(1, v);
      for (int v : s2) if (v >= i) r += Rational(1, v);
      EXPECT_LE(l, gamma * r) << "index " << i << " is smaller";
    }
  }
}
