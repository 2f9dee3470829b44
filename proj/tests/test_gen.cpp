#include <set>

#include <gtest/gtest.h>

#include "lenslab/lenslab.hpp"

using namespace lenslab;

namespace {

GenConfig config(std::uint64_t seed, std::size_t objects = 4, std::size_t extra = 6) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_objects = objects;
  cfg.max_extra_morphisms = extra;
  return cfg;
}

std::string printed(const CatPtr& c) {
  Workspace ws;
  ws.bind("X", c);
  return print(ws);
}

}  // namespace

TEST(Rng, StreamIsPinned) {
  // mt19937_64 seeded with splitmix64(0); values fixed by the standard.
  std::mt19937_64 reference(Rng::mix(0));
  Rng rng(0);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(rng.next(), reference());
  EXPECT_EQ(Rng::mix(0), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, BelowIsInRangeAndCoversIt) {
  Rng rng(7);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    std::size_t v = rng.below(5);
    ASSERT_LT(v, 5u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Gen, ConfigNeedsAnObject) {
  EXPECT_THROW(gen_category(config(0, 0, 3)), PreconditionViolated);
}

TEST(Gen, CategoriesRespectBoundsAndLaws) {
  std::set<std::string> distinct;
  for (std::uint64_t seed = 0; seed < 300; ++seed)
    for (auto [objects, extra] : {std::pair{1, 0}, {2, 1}, {3, 4}, {4, 6}, {5, 9}}) {
      CatPtr c = gen_category(config(seed, objects, extra));
      ASSERT_TRUE(check_category_laws(*c).empty()) << "seed " << seed;
      EXPECT_TRUE(fits(*c, objects, extra)) << "seed " << seed;
      EXPECT_GE(c->object_count(), 1u);
      if (objects == 4) distinct.insert(printed(c));
    }
  EXPECT_GT(distinct.size(), 150u);
}

TEST(Gen, AcyclicFlag) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenConfig cfg = config(seed);
    cfg.require_acyclic = true;
    EXPECT_TRUE(is_acyclic(*gen_category(cfg)));
    EXPECT_TRUE(is_acyclic(*gen_lens(cfg).dom()));
  }
}

TEST(Gen, SomeCategoriesHaveCycles) {
  std::size_t cyclic = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    if (!is_acyclic(*gen_category(config(seed)))) ++cyclic;
  EXPECT_GT(cyclic, 0u);
}

TEST(Gen, LensesAreValidAndWithinBounds) {
  std::size_t split = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Lens L = gen_lens(config(seed));
    ASSERT_TRUE(validate_lens(L).empty()) << "seed " << seed;
    EXPECT_TRUE(fits(*L.dom(), config(seed)));
    EXPECT_TRUE(fits(*L.cod(), config(seed)));
    if (is_split_opfibration(L)) ++split;
  }
  EXPECT_LT(split, 400u);
}

TEST(Gen, LegFlagsAreHonoured) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GenConfig dopf = config(seed);
    dopf.require_dopf_leg = true;
    LensCospan c = gen_cospan(dopf);
    EXPECT_TRUE(is_discrete_opfibration_lens(c.left)) << "seed " << seed;
    EXPECT_TRUE(is_discrete_opfibration_lens(gen_lens(dopf)));

    GenConfig sopf = config(seed);
    sopf.require_split_opfib_leg = true;
    EXPECT_TRUE(is_split_opfibration(gen_cospan(sopf).left)) << "seed " << seed;
    EXPECT_TRUE(is_split_opfibration(gen_lens(sopf)));
  }
}

TEST(Gen, CospansShareTheirCodomain) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    LensCospan c = gen_cospan(config(seed));
    EXPECT_NO_THROW(check_boundaries(c));
    EXPECT_TRUE(validate_lens(c.left).empty());
    EXPECT_TRUE(validate_lens(c.right).empty());
  }
}

TEST(Gen, SameSeedSameOutput) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(printed(gen_category(config(seed))), printed(gen_category(config(seed))));
    EXPECT_EQ(gen_lens(config(seed)), gen_lens(config(seed)));
    EXPECT_EQ(gen_cospan(config(seed)), gen_cospan(config(seed)));
    LensCospan c = gen_cospan(config(seed));
    EXPECT_EQ(gen_factored_candidate(config(seed), c).span,
              gen_factored_candidate(config(seed), c).span);
  }
}

TEST(Gen, CandidatesCommuteWithTheirCospan) {
  std::size_t adversarial = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    LensCospan c = gen_cospan(config(seed));
    FactoredCandidate fc = gen_factored_candidate(config(seed), c);
    EXPECT_TRUE(validate_lens(fc.factor).empty());
    EXPECT_TRUE(is_compatible_square({fc.span, c})) << "seed " << seed;
    try {
      LensSpan s = gen_adversarial_candidate(config(seed), c);
      EXPECT_TRUE(validate_lens(s.left).empty());
      EXPECT_TRUE(validate_lens(s.right).empty());
      EXPECT_TRUE(is_commuting_square({s, c})) << "seed " << seed;
      ++adversarial;
    } catch (const GenerationExhausted&) {
    }
  }
  EXPECT_GT(adversarial, 100u);
}

TEST(Gen, WidenedBoundsAdmitTheTarget) {
  CatPtr two = interval_category();
  CatPtr fp = free_product(two, two);
  GenConfig wide = widened_for(config(0, 2, 1), *fp);
  EXPECT_TRUE(fits(*fp, wide));
  Lens L = gen_lens(wide, fp);
  EXPECT_TRUE(same_category(L.cod(), fp));
}

TEST(Gen, SingleObjectNoExtrasIsTerminal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed)
  {
    CatPtr c = gen_category(config(seed, 1, 0));
    EXPECT_EQ(c->object_count(), 1u);
    EXPECT_EQ(c->morphism_count(), 1u);
  }
}

TEST(Gen, EveryStrategyProducesValidLenses) {
  for (LensStrategy s :
       {LensStrategy::discrete_opfibration, LensStrategy::free_product_projection,
        LensStrategy::product_projection, LensStrategy::composite, LensStrategy::rejection}) {
    std::size_t valid = 0;
    for (std::uint64_t seed = 0; seed < 3000 && valid < 1000; ++seed) {
      try {
        Lens L = gen_lens(config(seed), nullptr, s);
        ASSERT_TRUE(validate_lens(L).empty()) << to_string(s) << " seed " << seed;
        ++valid;
      } catch (const GenerationExhausted&) {
      }
    }
    EXPECT_EQ(valid, 1000u) << to_string(s);
  }
}
