#pragma once

#include <string>
#include <vector>

#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/lens.hpp"
#include "lenslab/opfibration.hpp"
#include "lenslab/squares.hpp"

namespace lenslab {

/// The sync-minimal core M(F,G) of a span and the inclusion ε of its apex.
struct SyncCore {
  LensSpan core;
  Functor inclusion;
};

namespace detail {

// Membership in the wide subcategory generated by the chosen lifts of both legs.
inline std::vector<bool> lift_closure(const LensSpan& span) {
  const FinCat& X = *span.apex();
  std::vector<bool> member(X.morphism_count(), false);
  std::vector<Mor> pending;
  auto add = [&](Mor f) {
    if (!member[ix(f)]) {
      member[ix(f)] = true;
      pending.push_back(f);
    }
  };
  for (Obj x : X.objects()) {
    add(X.identity(x));
    for (Mor a : span.left.cod()->out(span.left(x))) add(span.left.lift(x, a));
    for (Mor b : span.right.cod()->out(span.right(x))) add(span.right.lift(x, b));
  }
  while (!pending.empty()) {
    Mor f = pending.back();
    pending.pop_back();
    for (Mor g : X.out(X.tgt(f)))
      if (member[ix(g)]) add(X.compose(g, f));
    for (Mor e : X.morphisms())
      if (member[ix(e)] && X.tgt(e) == X.src(f)) add(X.compose(f, e));
  }
  return member;
}

}  // namespace detail

inline SyncCore sync_minimal_core(const LensSpan& span) {
  check_boundaries(span);
  const FinCat& X = *span.apex();
  std::vector<bool> member = detail::lift_closure(span);

  CategoryBuilder builder;
  for (Obj x : X.objects()) builder.add_object(X.name(x));
  std::vector<Mor> core_of(X.morphism_count(), kNoMor);
  std::vector<Mor> original;
  for (Mor f : X.morphisms())
    if (member[ix(f)]) {
      core_of[ix(f)] = builder.add_morphism(X.name(f), X.src(f), X.tgt(f));
      original.push_back(f);
    }
  for (Obj x : X.objects()) builder.set_identity(x, core_of[ix(X.identity(x))]);
  for (Mor f : original)
    for (Mor g : X.out(X.tgt(f)))
      if (member[ix(g)]) builder.set_composite(core_of[ix(g)], core_of[ix(f)], core_of[ix(X.compose(g, f))]);
  CatPtr apex = std::move(builder).build();

  auto restrict = [&](const Lens& leg) {
    Functor get{apex, leg.cod(), leg.get.obj, {}};
    for (Mor f : original) get.mor.push_back(leg(f));
    Cofunctor put = Cofunctor::blank(apex, leg.cod(), leg.get.obj);
    for (Obj x : X.objects())
      for (Mor b : leg.cod()->out(leg(x))) put.lift_slot(x, b) = core_of[ix(leg.lift(x, b))];
    return Lens{std::move(get), std::move(put)};
  };
  Functor inclusion{apex, span.apex(), {}, original};
  for (Obj x : X.objects()) inclusion.obj.push_back(x);
  return SyncCore{LensSpan{restrict(span.left), restrict(span.right)}, std::move(inclusion)};
}

/// Apex morphisms that are not composites of chosen lifts.
inline std::vector<Mor> non_lift_composites(const LensSpan& span) {
  std::vector<bool> member = detail::lift_closure(span);
  std::vector<Mor> missing;
  for (Mor f : span.apex()->morphisms())
    if (!member[ix(f)]) missing.push_back(f);
  return missing;
}

inline bool is_sync_minimal(const LensSpan& span) {
  check_boundaries(span);
  return non_lift_composites(span).empty();
}

/// Pairs of distinct core morphisms with a common source and equal images
/// under both legs.
inline Report independence_report(const LensSpan& span) {
  check_boundaries(span);
  const FinCat& X = *span.apex();
  std::vector<bool> member = detail::lift_closure(span);
  Report report;
  for (Obj x : X.objects()) {
    auto out = X.out(x);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!member[ix(out[i])]) continue;
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        if (!member[ix(out[j])]) continue;
        if (span.left(out[i]) == span.left(out[j]) && span.right(out[i]) == span.right(out[j]))
          report.push_back({"independence", {X.name(out[i]), X.name(out[j])}});
      }
    }
  }
  return report;
}

inline bool is_independent(const LensSpan& span) { return independence_report(span).empty(); }

/// F̄-split independence of the span of a compatible square: every
/// configuration (d1, a1, b, a2) whose A-square commutes and whose Ḡ-lifts
/// lie over identities in B must close up to a commuting square in D.
inline Report split_independence_report(const LensSquare& sq) {
  if (!is_compatible_square(sq)) throw PreconditionViolated({"compatible"});
  const Lens& Gbar = sq.span.left;
  const Lens& Fbar = sq.span.right;
  const FinCat& D = *sq.span.apex();
  const FinCat& A = *Gbar.cod();
  const FinCat& B = *Fbar.cod();
  auto vertical = [&](Obj d, Mor a) {
    return Fbar(Gbar.lift(d, a)) == B.identity(Fbar(d));
  };
  Report report;
  for (Obj d1 : D.objects())
    for (Mor a1 : A.out(Gbar(d1))) {
      if (!vertical(d1, a1)) continue;
      Mor up1 = Gbar.lift(d1, a1);
      Obj d1p = D.tgt(up1);
      for (Mor b : B.out(Fbar(d1))) {
        Mor across = Fbar.lift(d1, b);
        Mor across_p = Fbar.lift(d1p, b);
        Obj d2 = D.tgt(across);
        for (Mor a2 : A.out(Gbar(d2))) {
          if (!vertical(d2, a2)) continue;
          if (A.compose(a2, Gbar(across)) != A.compose(Gbar(across_p), a1)) continue;
          Mor up2 = Gbar.lift(d2, a2);
          if (D.tgt(up2) != D.tgt(across_p) || D.compose(up2, across) != D.compose(across_p, up1))
            report.push_back({"split-independence", {D.name(d1), A.name(a1), B.name(b), A.name(a2)}});
        }
      }
    }
  return report;
}

inline bool is_split_independent(const LensSquare& sq) {
  return split_independence_report(sq).empty();
}

/// d = lift_Ḡ(u) ∘ lift_F̄(F̄ d), with F u an identity.
struct SplitFactorisation {
  Mor first;   // lift_F̄,d1(F̄ d) in D
  Mor second;  // lift_Ḡ,d2'(u) in D
  Mor u;       // in A
};

/// Factors a core morphism d of a compatible square whose cospan leg F is a
/// split opfibration and whose span is split independent. u is the
/// comparison from the opcartesian lift lift_F(G F̄ d) to Ḡ d.
inline SplitFactorisation split_opfib_factorisation(const LensSquare& sq, Mor d) {
  std::vector<std::string> failed;
  if (!is_compatible_square(sq)) throw PreconditionViolated({"compatible"});
  if (!is_split_opfibration(sq.cospan.left)) failed.push_back("split-opfibration");
  if (!is_split_independent(sq)) failed.push_back("split-independent");
  if (!detail::lift_closure(sq.span)[ix(d)]) failed.push_back("core-morphism");
  if (!failed.empty()) throw PreconditionViolated(failed);

  const Lens& Gbar = sq.span.left;
  const Lens& Fbar = sq.span.right;
  const Lens& F = sq.cospan.left;
  const FinCat& D = *sq.span.apex();
  const FinCat& A = *F.dom();
  Mor first = Fbar.lift(D.src(d), Fbar(d));
  Obj d2p = D.tgt(first);
  Mor top = Gbar(first);
  Mor u = kNoMor;
  for (Mor cand : A.hom(Gbar(d2p), Gbar(D.tgt(d))))
    if (F(cand) == F.cod()->identity(F(A.tgt(cand))) && A.compose(cand, top) == Gbar(d)) {
      if (u != kNoMor) throw Error("split_opfib_factorisation: comparison morphism is not unique");
      u = cand;
    }
  if (u == kNoMor) throw Error("split_opfib_factorisation: no comparison morphism");
  return SplitFactorisation{first, Gbar.lift(d2p, u), u};
}

}  // namespace lenslab
