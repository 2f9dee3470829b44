#include <cstdlib>

#include <gtest/gtest.h>

#include "lenslab/lenslab.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace lenslab;

namespace {

// Small functors with their codomain: every functor between two generated
// categories of at most three objects.
std::vector<Functor> sample_functors(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 11));
  CatPtr E = detail::random_category(rng, 1, 3, 3, false);
  CatPtr B = detail::random_category(rng, 1, 2, 2, false);
  return oracle::all_functors(E, B);
}

}  // namespace

TEST(Lens, FixtureLensesAreValid) {
  Workspace ws = fixtures::example();
  for (const char* name : {"F", "G", "Ḡ", "F̄"}) EXPECT_TRUE(validate_lens(ws.get<Lens>(name)).empty()) << name;
}

TEST(Lens, BrokenLiftReportsPutGet) {
  Workspace ws = fixtures::example();
  Lens F = ws.get<Lens>("F");
  const FinCat& A = *F.dom();
  const FinCat& C = *F.cod();
  F.put.lift_slot(A.object("A1"), C.morphism("c")) = A.identity(A.object("A1"));
  Report r = validate_lens(F);
  EXPECT_TRUE(has_violation(r, "PutGet", {"A1", "c"}));
  EXPECT_TRUE(has_violation(r, "PutTgt", {"A1", "c"}));
}

TEST(Lens, BrokenIdentityLiftReportsPutId) {
  Workspace ws = fixtures::example();
  Lens F = ws.get<Lens>("F");
  const FinCat& A = *F.dom();
  const FinCat& C = *F.cod();
  F.put.lift_slot(A.object("A1"), C.morphism("id_C1")) = A.morphism("a");
  Report r = validate_lens(F);
  EXPECT_TRUE(has_violation(r, "PutId", {"A1"}));
}

TEST(Lens, MissingLiftReported) {
  Workspace ws = fixtures::example();
  Lens F = ws.get<Lens>("F");
  F.put.lift_slot(F.dom()->object("A2"), F.cod()->morphism("id_C2")) = kNoMor;
  EXPECT_TRUE(has_violation(validate_lens(F), "lift-missing", {"A2", "id_C2"}));
}

TEST(Lens, PutPutViolationDetected) {
  // E: x →f y →g z with a second arrow k: x → z; B: the path without k.
  auto build = [](bool extra) {
    CategoryBuilder b;
    Obj x = b.add_object("x"), y = b.add_object("y"), z = b.add_object("z");
    Mor idx = b.add_identity(x, "id_x"), idy = b.add_identity(y, "id_y"), idz = b.add_identity(z, "id_z");
    Mor f = b.add_morphism("f", x, y), g = b.add_morphism("g", y, z), gf = b.add_morphism("g∘f", x, z);
    std::vector<std::pair<Mor, std::pair<Mor, Mor>>> arrows{
        {idx, {idx, idx}}, {idy, {idy, idy}}, {idz, {idz, idz}},
        {f, {idx, idy}},   {g, {idy, idz}},   {gf, {idx, idz}}};
    if (extra) arrows.push_back({b.add_morphism("k", x, z), {idx, idz}});
    for (auto [m, ends] : arrows) {
      b.set_composite(m, ends.first, m);
      b.set_composite(ends.second, m, m);
    }
    b.set_composite(g, f, gf);
    return std::move(b).build();
  };
  CatPtr E = build(true), B = build(false);
  Functor F{E, B, {obj_at(0), obj_at(1), obj_at(2)}, {}};
  for (Mor m : E->morphisms()) F.mor.push_back(m == E->morphism("k") ? B->morphism("g∘f") : m);
  ASSERT_TRUE(validate_functor(F).empty());
  Cofunctor put = Cofunctor::blank(E, B, F.obj);
  for (Mor b : B->morphisms()) put.lift_slot(B->src(b), b) = b;
  Lens L{F, put};
  EXPECT_TRUE(validate_lens(L).empty());
  L.put.lift_slot(E->object("x"), B->morphism("g∘f")) = E->morphism("k");
  Report r = validate_lens(L);
  EXPECT_TRUE(has_violation(r, "PutPut", {"x", "f", "g"}));
  EXPECT_FALSE(has_violation(r, "PutGet"));
  EXPECT_EQ(count_lens_structures(F), 1u);
  EXPECT_EQ(oracle::count_lens_structures(F), 1u);
}

TEST(Lens, CompositionLaws) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Lens L = gen_lens(cfg);
    Lens M = gen_lens(widened_for(cfg, *L.dom()), L.dom());
    Lens N = gen_lens(widened_for(cfg, *M.dom()), M.dom());
    EXPECT_TRUE(validate_lens(compose_lens(M, L)).empty());
    EXPECT_EQ(compose_lens(identity_lens(L.dom()), L), L);
    EXPECT_EQ(compose_lens(L, identity_lens(L.cod())), L);
    EXPECT_EQ(compose_lens(N, compose_lens(M, L)), compose_lens(compose_lens(N, M), L));
  }
}

TEST(Lens, EnumerationMatchesBruteForce) {
  std::size_t functors = 0, with_structure = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const Functor& F : sample_functors(seed)) {
      if (oracle::lift_table_space(F) > 2e5) continue;
      std::size_t expected = oracle::count_lens_structures(F);
      std::vector<Lens> found = enumerate_lens_structures(F);
      ASSERT_EQ(found.size(), expected) << "seed " << seed;
      for (const Lens& L : found) EXPECT_TRUE(validate_lens(L).empty());
      for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = i + 1; j < found.size(); ++j) EXPECT_NE(found[i], found[j]);
      ++functors;
      if (expected > 0) ++with_structure;
    }
  }
  EXPECT_GT(functors, 100u);
  EXPECT_GT(with_structure, 20u);
}

TEST(Lens, EnumerationLimitAndBudget) {
  CatPtr two = interval_category();
  CatPtr T = terminal_category();
  FreeProduct fp = free_product_with_projections(two, two);
  Functor F = functor_to_terminal(fp.apex, T);
  std::size_t all = count_lens_structures(F);
  EXPECT_EQ(all, oracle::count_lens_structures(F));
  EnumerationOptions limited;
  limited.limit = 1;
  EXPECT_EQ(count_lens_structures(F, limited), 1u);
  EnumerationOptions tight;
  tight.budget = 3;
  EXPECT_THROW(count_lens_structures(F, tight), BudgetExceeded);
}

TEST(Lens, BudgetFromEnvironment) {
  ::setenv("LENSLAB_BUDGET", "17", 1);
  EXPECT_EQ(default_budget(), 17u);
  ::unsetenv("LENSLAB_BUDGET");
  EXPECT_EQ(default_budget(), kDefaultBudget);
}

TEST(Opfibration, DiscreteOpfibrationHasExactlyOneLensStructure) {
  std::size_t seen = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    for (const Functor& F : sample_functors(seed)) {
      if (!is_discrete_opfibration(F)) continue;
      ++seen;
      EXPECT_TRUE(validate_lens(dopf_to_lens(F)).empty());
      EXPECT_EQ(count_lens_structures(F), 1u);
      EXPECT_TRUE(is_discrete_opfibration_lens(dopf_to_lens(F)));
      EXPECT_TRUE(is_split_opfibration(dopf_to_lens(F)));
    }
  EXPECT_GT(seen, 10u);
}

TEST(Opfibration, FreeProductProjectionIsNotSplit) {
  CatPtr two = interval_category();
  LensSpan p = free_product_projections(two, two);
  EXPECT_FALSE(is_split_opfibration(p.left, SplitCheck::by_definition));
  EXPECT_FALSE(is_split_opfibration(p.left, SplitCheck::by_characterisation));
  EXPECT_FALSE(is_opcartesian(p.left.get, p.left.lift(p.left.dom()->object("(0,0)"),
                                                       two->morphism("u"))));
}

TEST(Opfibration, ProductProjectionIsSplit) {
  CatPtr two = interval_category();
  CatPtr T = terminal_category();
  LensSquare pp = proxy_pullback({lens_to_terminal(two, T), lens_to_terminal(two, T)});
  EXPECT_TRUE(is_split_opfibration(pp.span.left, SplitCheck::by_definition));
  EXPECT_TRUE(is_split_opfibration(pp.span.left, SplitCheck::by_characterisation));
}

TEST(Opfibration, LensesToTerminalAreSplit) {
  CatPtr T = terminal_category();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    CatPtr X = gen_category(cfg);
    EXPECT_TRUE(is_split_opfibration(lens_to_terminal(X, T)));
  }
}

TEST(Opfibration, DefinitionAgreesWithCharacterisationOnAllStructures) {
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    for (const Functor& F : sample_functors(seed)) {
      if (oracle::lift_table_space(F) > 2e5) continue;
      for (const Lens& L : enumerate_lens_structures(F))
        EXPECT_EQ(is_split_opfibration(L, SplitCheck::by_definition),
                  is_split_opfibration(L, SplitCheck::by_characterisation));
    }
}
