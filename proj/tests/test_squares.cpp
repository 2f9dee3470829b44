#include <gtest/gtest.h>

#include "lenslab/lenslab.hpp"
#include "support/fixtures.hpp"

using namespace lenslab;

namespace {

GenConfig config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Squares, FixtureSquareCommutesAndIsCompatible) {
  Workspace ws = fixtures::example();
  const LensSquare& sq = ws.get<LensSquare>("SQ_EX4");
  EXPECT_TRUE(is_commuting_square(sq));
  EXPECT_TRUE(is_compatible_square(sq));
  EXPECT_EQ(proxy_pullback(ws.get<LensCospan>("COSPAN_EX4")), sq);
}

TEST(Squares, ProxyPullbackLiftsFollowTheFormula) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    LensCospan c = gen_cospan(config(seed));
    LensSquare sq = proxy_pullback(c);
    const Lens& F = c.left;
    const Lens& G = c.right;
    const FinCat& A = *F.dom();
    const FinCat& B = *G.dom();
    const FinCat& D = *sq.span.apex();
    CatPullback pb = cat_pullback(F.get, G.get);
    ASSERT_EQ(D, *pb.apex);
    for (Obj d : D.objects()) {
      Obj x = sq.span.left(d), y = sq.span.right(d);
      EXPECT_EQ(D.name(d), "⟨" + A.name(x) + "," + B.name(y) + "⟩");
      for (Mor a : A.out(x)) {
        std::string expect = "⟨" + A.name(a) + "," + B.name(G.lift(y, F(a))) + "⟩";
        EXPECT_EQ(D.name(sq.span.left.lift(d, a)), expect);
      }
      for (Mor b : B.out(y)) {
        std::string expect = "⟨" + A.name(F.lift(x, G(b))) + "," + B.name(b) + "⟩";
        EXPECT_EQ(D.name(sq.span.right.lift(d, b)), expect);
      }
    }
    EXPECT_TRUE(validate_lens(sq.span.left).empty()) << "seed " << seed;
    EXPECT_TRUE(validate_lens(sq.span.right).empty()) << "seed " << seed;
    EXPECT_TRUE(is_compatible_square(sq)) << "seed " << seed;
  }
}

TEST(Squares, NonCommutingSquareWitnessed) {
  CatPtr two = interval_category();
  CatPtr T = terminal_category();
  LensSquare product = proxy_pullback({lens_to_terminal(two, T), lens_to_terminal(two, T)});
  LensSquare sq{product.span, {identity_lens(two), identity_lens(two)}};
  Report r = commutation_report(sq);
  EXPECT_TRUE(has_violation(r, "commutation-object", {"⟨0,1⟩"}));
  EXPECT_FALSE(has_violation(r, "commutation-object", {"⟨0,0⟩"}));
  EXPECT_FALSE(is_compatible_square(sq));
}

TEST(Squares, BoundaryMismatchThrows) {
  Workspace ws = fixtures::example();
  const LensSquare& sq = ws.get<LensSquare>("SQ_EX4");
  LensSquare swapped{mirror(sq.span), sq.cospan};
  EXPECT_THROW(commutation_report(swapped), BoundaryMismatch);
}

TEST(Squares, MirroredCospanGivesIsomorphicSpan) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    LensCospan c = gen_cospan(config(seed));
    LensSpan s1 = mirror(proxy_pullback(c).span);
    LensSpan s2 = proxy_pullback(mirror(c)).span;
    SpanIsomorphismSearch found = find_span_isomorphisms(s1, s2);
    EXPECT_EQ(found.count, 1u) << "seed " << seed;
    ASSERT_TRUE(found.first);
    EXPECT_EQ(compose_lens(found.first->forward, found.first->backward),
              identity_lens(s1.apex()));
    EXPECT_EQ(compose_lens(found.first->forward, s2.left), s1.left);
  }
}

TEST(Squares, DiscreteOpfibrationLegMakesCommutingSquaresCompatible) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GenConfig cfg = config(seed);
    cfg.require_dopf_leg = true;
    LensCospan c = gen_cospan(cfg);
    ASSERT_TRUE(is_discrete_opfibration_lens(c.left));
    for (std::uint64_t k = 0; k < 3; ++k) {
      GenConfig sub = cfg;
      sub.seed = derive_seed(seed, k);
      LensSpan s;
      try {
        s = gen_adversarial_candidate(sub, c);
      } catch (const GenerationExhausted&) {
        continue;
      }
      LensSquare sq{s, c};
      ASSERT_TRUE(is_commuting_square(sq));
      EXPECT_TRUE(is_compatible_square(sq)) << "seed " << seed;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Squares, CommutingSquaresNeedNotBeCompatible) {
  // 𝟚 with identity legs over 𝟚 → 𝟙 ← 𝟚: lift_Ḡ,0(u) = u but F̄ u is not
  // the identity lift of G.
  CatPtr two = interval_category();
  CatPtr T = terminal_category();
  LensSquare sq{{identity_lens(two), identity_lens(two)},
                {lens_to_terminal(two, T), lens_to_terminal(two, T)}};
  EXPECT_TRUE(is_commuting_square(sq));
  Report r = compatibility_report(sq);
  EXPECT_TRUE(has_violation(r, "compatibility-left", {"0", "u"}));
  EXPECT_TRUE(has_violation(r, "compatibility-right", {"0", "u"}));
}

TEST(Squares, SampledCommutingSquaresCommute) {
  std::size_t commuting = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    LensCospan c = gen_cospan(config(seed));
    try {
      LensSpan s = gen_adversarial_candidate(config(seed), c);
      EXPECT_TRUE(is_commuting_square({s, c})) << "seed " << seed;
      ++commuting;
    } catch (const GenerationExhausted&) {
    }
  }
  EXPECT_GT(commuting, 150u);
}
