#include <gtest/gtest.h>

#include <map>

#include "regmatch/error.hpp"
#include "regmatch/uncrossing.hpp"

using namespace regmatch;

namespace {

bool subset_of(const EdgeSet& x, const EdgeSet& y) { return std::includes(y.begin(), y.end(), x.begin(), x.end()); }

// Direct restatement of the uncrossing conditions, independent of verify_uncrossing.
struct Conditions {
  bool thick = true;
  bool representatives = true;
  bool contained_cuts = true;
  bool at_most_two = true;
};

Conditions check_conditions(const ThicknessContext& ctx, const PairCollection& r, const PairCollection& t) {
  const auto& g = ctx.graph();
  Conditions out;
  for (const auto& pair : t.pairs) {
    const Rational inside = ctx.relevant_weight(witness_set(g, pair));
    if (!(inside > t.gamma * ctx.weight(cut_set(g, pair)))) out.thick = false;
  }
  for (const auto& rp : r.pairs) {
    const auto w = witness_set(g, rp);
    const auto c = cut_set(g, rp);
    bool found = false;
    for (const auto& tp : t.pairs) found = found || (subset_of(witness_set(g, tp), w) && subset_of(cut_set(g, tp), c));
    if (!found) out.representatives = false;
  }
  for (const auto& tp : t.pairs) {
    const auto c = cut_set(g, tp);
    bool found = false;
    for (const auto& rp : r.pairs) found = found || subset_of(c, cut_set(g, rp));
    if (!found) out.contained_cuts = false;
  }
  std::map<EdgeSet, std::vector<VertexPair>> by_cut;
  for (const auto& tp : t.pairs) {
    auto& group = by_cut[cut_set(g, tp)];
    if (std::find(group.begin(), group.end(), tp) == group.end()) group.push_back(tp);
  }
  for (const auto& [cut, group] : by_cut) out.at_most_two = out.at_most_two && group.size() <= 2;
  return out;
}

ThicknessContext context_of(const CrossingDemo& demo) { return ThicknessContext::uniform(demo.graph); }

}  // namespace

TEST(Thickness, EmptyRelevantWitnessIsNotThick) {
  const BipartiteGraph g(2, 2, {{0, 0}, {0, 1}, {1, 1}});
  const ThicknessContext ctx(g, {Rational(1), Rational(1), Rational(1)}, {0, 2});
  // W({0},{0}) = {edge 1}, which is not relevant.
  EXPECT_FALSE(is_gamma_thick(ctx, VertexPair({0}, {0}), Rational(1, 100)));
}

TEST(Thickness, HalfCutPairsAreStrictlyBelowOneHalf) {
  const auto demo = uncrossable_demo();
  const auto ctx = context_of(demo);
  for (const auto& pair : {demo.first, demo.second}) {
    EXPECT_TRUE(is_gamma_thick(ctx, pair, Rational(49, 100)));
    EXPECT_FALSE(is_gamma_thick(ctx, pair, Rational(1, 2)));
  }
  EXPECT_EQ(cut_set(demo.graph, demo.first), cut_set(demo.graph, demo.second));
}

TEST(Thickness, WeightsAreExact) {
  const BipartiteGraph g(1, 2, {{0, 0}, {0, 1}});
  const ThicknessContext ctx(g, {Rational(1, 3), Rational(2, 3)}, {0, 1});
  // W({0},{0}) = {edge 1} of weight 2/3, cut weight 2/3 + ... = 2/3.
  const VertexPair pair({0}, {0});
  EXPECT_EQ(ctx.relevant_weight(witness_set(g, pair)), Rational(2, 3));
  EXPECT_EQ(ctx.weight(cut_set(g, pair)), Rational(2, 3));
  EXPECT_TRUE(is_gamma_thick(ctx, pair, Rational(99, 100)));
  EXPECT_FALSE(is_gamma_thick(ctx, pair, Rational(1)));
}

TEST(Thickness, ContextValidation) {
  const BipartiteGraph g(1, 1, {{0, 0}});
  EXPECT_THROW(ThicknessContext(g, {}, {}), Error);
  EXPECT_THROW(ThicknessContext(g, {Rational(-1)}, {}), Error);
  EXPECT_THROW(ThicknessContext(g, {Rational(1)}, {3}), Error);
}

TEST(CrossingDemo, SingleRepresentative) {
  const auto demo = crossing_demo();
  const auto ctx = context_of(demo);
  const Rational half(1, 2);
  ASSERT_TRUE(is_gamma_thick(ctx, demo.first, half));
  ASSERT_TRUE(is_gamma_thick(ctx, demo.second, half));
  ASSERT_EQ(cut_set(demo.graph, demo.first), cut_set(demo.graph, demo.second));
  PairCollection r{{demo.first, demo.second}, half};
  const auto t = venn_thick_pairs(ctx, r);
  ASSERT_EQ(t.pairs.size(), 1u);
  EXPECT_EQ(t.pairs.front(), demo.expected);
  const auto c = check_conditions(ctx, r, t);
  EXPECT_TRUE(c.thick && c.representatives && c.contained_cuts && c.at_most_two);
  EXPECT_TRUE(check_venn_structure(demo.graph, r.pairs).all_ok());
}

TEST(CrossingDemo, ExpectedIsTheIntersection) {
  const auto demo = crossing_demo();
  std::vector<int> a, b;
  std::set_intersection(demo.first.a.begin(), demo.first.a.end(), demo.second.a.begin(), demo.second.a.end(),
                        std::back_inserter(a));
  std::set_intersection(demo.first.b.begin(), demo.first.b.end(), demo.second.b.begin(), demo.second.b.end(),
                        std::back_inserter(b));
  EXPECT_EQ(VertexPair(a, b), demo.expected);
}

TEST(Venn, ComplementRegionsPresent) {
  const auto demo = crossing_demo();
  const auto venn = venn_pairs(demo.graph, {demo.first, demo.second});
  for (const auto& vp : venn) {
    const auto bar = vp.index.complement();
    EXPECT_TRUE(std::any_of(venn.begin(), venn.end(), [&](const VennPair& o) { return o.index == bar; }));
  }
}

TEST(Venn, IdentitiesOnRandomSingleCutCollections) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_single_cut_instance(4, 4, Rational(1, 3), seed);
    EXPECT_TRUE(check_venn_structure(inst.ctx.graph(), inst.collection.pairs).all_ok()) << "seed " << seed;
  }
}

TEST(Venn, RejectsMixedCuts) {
  const BipartiteGraph g(2, 2, {{0, 0}, {1, 1}});
  EXPECT_THROW(check_venn_structure(g, {VertexPair({0}, {}), VertexPair({0}, {0})}), Error);
}

TEST(VennUncross, PreconditionsEnforced) {
  const auto demo = crossing_demo();
  const auto ctx = context_of(demo);
  EXPECT_THROW(venn_uncross_single_cut(ctx, PairCollection{{demo.first, demo.second}, Rational(1, 2)}), Error);
}

TEST(VennUncross, RandomSingleCutInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_single_cut_instance(6, 6, Rational(1, 3), seed);
    ASSERT_GT(inst.collection.pairs.size(), 2u);
    const auto t = venn_uncross_single_cut(inst.ctx, inst.collection);
    const auto c = check_conditions(inst.ctx, inst.collection, t);
    EXPECT_TRUE(c.thick && c.representatives && c.contained_cuts) << "seed " << seed;
    const auto shared = cut_set(inst.ctx.graph(), inst.collection.pairs.front());
    for (const auto& tp : t.pairs) {
      const auto cut = cut_set(inst.ctx.graph(), tp);
      EXPECT_TRUE(subset_of(cut, shared));
      EXPECT_LT(cut.size(), shared.size()) << "seed " << seed;
    }
  }
}

TEST(Uncross, DistinctCutsAreTheirOwnUncrossing) {
  const auto demo = crossing_demo();
  const auto ctx = context_of(demo);
  PairCollection r{{demo.first}, Rational(1, 2)};
  EXPECT_EQ(uncross(ctx, r).pairs, r.pairs);
  const auto inst = random_thick_instance(4, 4, Rational(1, 3), 5);
  std::map<EdgeSet, VertexPair> one_per_cut;
  for (const auto& p : inst.collection.pairs) one_per_cut.try_emplace(cut_set(inst.ctx.graph(), p), p);
  PairCollection distinct;
  distinct.gamma = Rational(1, 3);
  for (const auto& [cut, p] : one_per_cut) distinct.pairs.push_back(p);
  auto out = uncross(inst.ctx, distinct).pairs;
  auto expected = distinct.pairs;
  std::sort(out.begin(), out.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(out, expected);
  EXPECT_TRUE(verify_uncrossing(inst.ctx, distinct, distinct, Rational(1, 3)).all_ok());
}

TEST(Uncross, RandomCollections) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_thick_instance(5, 5, Rational(1, 3), seed);
    const auto t = uncross(inst.ctx, inst.collection);
    EXPECT_TRUE(verify_uncrossing(inst.ctx, inst.collection, t, Rational(1, 3)).all_ok()) << "seed " << seed;
    const auto c = check_conditions(inst.ctx, inst.collection, t);
    EXPECT_TRUE(c.thick && c.representatives && c.contained_cuts && c.at_most_two) << "seed " << seed;
  }
}

TEST(Uncross, RejectsNonThickInput) {
  const auto demo = uncrossable_demo();
  const auto ctx = context_of(demo);
  EXPECT_THROW(uncross(ctx, PairCollection{{demo.first}, Rational(1, 2)}), Error);
}

TEST(Uncross, RefusesLargeGraphs) {
  const BipartiteGraph g(kUncrossCap + 1, 1, {{0, 0}});
  EXPECT_THROW(uncross(ThicknessContext::uniform(g), PairCollection{{VertexPair({0}, {})}, Rational(1, 3)}), Error);
}

TEST(VerifyUncrossing, MissingRepresentativeDetected) {
  const auto inst = random_single_cut_instance(4, 4, Rational(1, 3), 3);
  PairCollection t;
  t.gamma = Rational(1, 3);
  const auto report = verify_uncrossing(inst.ctx, inst.collection, t, Rational(1, 3));
  EXPECT_FALSE(report.p1_ok);
}

TEST(VerifyUncrossing, ThreePairsOnOneCutDetected) {
  const auto inst = random_single_cut_instance(4, 4, Rational(1, 3), 8);
  const auto report = verify_uncrossing(inst.ctx, inst.collection, inst.collection, Rational(1, 3));
  EXPECT_TRUE(report.p1_ok);
  EXPECT_FALSE(report.p3_ok);
  EXPECT_TRUE(report.partial_ok());
}

TEST(Combinatorial, IdentityOnDistinctCuts) {
  const auto demo = crossing_demo();
  const std::vector<VertexPair> r = {demo.first, demo.expected};
  ASSERT_NE(cut_set(demo.graph, r[0]), cut_set(demo.graph, r[1]));
  EXPECT_TRUE(verify_combinatorial_uncrossing(demo.graph, r, r, {{0}, {1}}).all_ok());
}

TEST(Combinatorial, OverlappingImagesDetected) {
  const auto demo = crossing_demo();
  const std::vector<VertexPair> r = {demo.first};
  const std::vector<VertexPair> t = {demo.first, demo.expected};
  const auto report = verify_combinatorial_uncrossing(demo.graph, r, t, {{0, 1}});
  EXPECT_FALSE(report.witness_disjoint);
  EXPECT_FALSE(report.q1_ok());
}

TEST(Combinatorial, BadMapDetected) {
  const auto demo = crossing_demo();
  EXPECT_FALSE(verify_combinatorial_uncrossing(demo.graph, {demo.first}, {demo.first}, {{3}}).map_ok);
}

TEST(Combinatorial, VennConstructionSatisfiesAllConditions) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_single_cut_instance(5, 5, Rational(1, 3), seed);
    const auto comb = venn_combinatorial_uncrossing(inst.ctx.graph(), inst.collection.pairs);
    const auto report =
        verify_combinatorial_uncrossing(inst.ctx.graph(), inst.collection.pairs, comb.pairs, comb.index_map);
    EXPECT_TRUE(report.all_ok()) << "seed " << seed;
  }
}

TEST(Dedup, KeepsFirstOfEachGroup) {
  const auto demo = crossing_demo();
  const auto ctx = context_of(demo);
  PairCollection r{{demo.first, demo.second, demo.first}, Rational(1, 2)};
  EXPECT_EQ(dedup(ctx, r).pairs, std::vector<VertexPair>({demo.first, demo.second}));
}

TEST(CutOrder, SizeThenLexicographic) {
  EXPECT_TRUE(cut_precedes({5}, {1, 2}));
  EXPECT_TRUE(cut_precedes({1, 2}, {1, 3}));
  EXPECT_FALSE(cut_precedes({1, 3}, {1, 3}));
}
