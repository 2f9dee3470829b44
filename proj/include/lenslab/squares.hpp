#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/lens.hpp"
#include "lenslab/opfibration.hpp"
#include "lenslab/pullback.hpp"

namespace lenslab {

/// Differences between F∘Ḡ and G∘F̄, compared as lenses D → C.
inline Report commutation_report(const LensSquare& sq) {
  check_boundaries(sq);
  Lens via_a = compose_lens(sq.span.left, sq.cospan.left);
  Lens via_b = compose_lens(sq.span.right, sq.cospan.right);
  const FinCat& D = *sq.span.apex();
  const FinCat& C = *sq.cospan.left.cod();
  Report report;
  for (Obj d : D.objects())
    if (via_a(d) != via_b(d)) report.push_back({"commutation-object", {D.name(d)}});
  if (!report.empty()) return report;
  for (Mor d : D.morphisms())
    if (via_a(d) != via_b(d)) report.push_back({"commutation-get", {D.name(d)}});
  for (Obj d : D.objects())
    for (Mor c : C.out(via_a(d)))
      if (via_a.lift(d, c) != via_b.lift(d, c))
        report.push_back({"commutation-put", {D.name(d), C.name(c)}});
  return report;
}

inline bool is_commuting_square(const LensSquare& sq) { return commutation_report(sq).empty(); }

/// Commutation plus the two mixed equations
///   F̄ lift_Ḡ,d(a) = lift_G,F̄d(F a)   and   Ḡ lift_F̄,d(b) = lift_F,Ḡd(G b).
inline Report compatibility_report(const LensSquare& sq) {
  Report report = commutation_report(sq);
  if (has_violation(report, "commutation-object")) return report;
  const Lens& Gbar = sq.span.left;
  const Lens& Fbar = sq.span.right;
  const Lens& F = sq.cospan.left;
  const Lens& G = sq.cospan.right;
  const FinCat& D = *sq.span.apex();
  const FinCat& A = *F.dom();
  const FinCat& B = *G.dom();
  for (Obj d : D.objects()) {
    for (Mor a : A.out(Gbar(d)))
      if (Fbar(Gbar.lift(d, a)) != G.lift(Fbar(d), F(a)))
        report.push_back({"compatibility-left", {D.name(d), A.name(a)}});
    for (Mor b : B.out(Fbar(d)))
      if (Gbar(Fbar.lift(d, b)) != F.lift(Gbar(d), G(b)))
        report.push_back({"compatibility-right", {D.name(d), B.name(b)}});
  }
  return report;
}

inline bool is_compatible_square(const LensSquare& sq) { return compatibility_report(sq).empty(); }

/// The proxy pullback above the Cat pullback of the get functors, with
///   lift_Ḡ,⟨x,y⟩(a) = ⟨a, lift_G,y(F a)⟩   and   lift_F̄,⟨x,y⟩(b) = ⟨lift_F,x(G b), b⟩.
inline LensSquare proxy_pullback(const LensCospan& cospan) {
  check_boundaries(cospan);
  const Lens& F = cospan.left;
  const Lens& G = cospan.right;
  CatPullback pb = cat_pullback(F.get, G.get);
  const FinCat& D = *pb.apex;
  const FinCat& A = *F.dom();
  const FinCat& B = *G.dom();
  const std::size_t mb = B.morphism_count();
  std::vector<Mor> pair_of(A.morphism_count() * mb, kNoMor);
  for (Mor d : D.morphisms()) pair_of[ix(pb.left(d)) * mb + ix(pb.right(d))] = d;

  Cofunctor left_put = Cofunctor::blank(pb.apex, F.dom(), pb.left.obj);
  Cofunctor right_put = Cofunctor::blank(pb.apex, G.dom(), pb.right.obj);
  for (Obj d : D.objects()) {
    Obj x = pb.left(d);
    Obj y = pb.right(d);
    for (Mor a : A.out(x)) left_put.lift_slot(d, a) = pair_of[ix(a) * mb + ix(G.lift(y, F(a)))];
    for (Mor b : B.out(y)) right_put.lift_slot(d, b) = pair_of[ix(F.lift(x, G(b))) * mb + ix(b)];
  }
  return LensSquare{LensSpan{Lens{pb.left, std::move(left_put)}, Lens{pb.right, std::move(right_put)}},
                    cospan};
}

/// A pair of mutually inverse lenses between span apexes commuting with
/// both legs.
struct SpanIsomorphism {
  Lens forward;   // apex(s1) → apex(s2)
  Lens backward;  // apex(s2) → apex(s1)
};

struct SpanIsomorphismSearch {
  std::optional<SpanIsomorphism> first;
  std::size_t count = 0;
};

/// Exhaustive search for span isomorphisms s1 ≅ s2, stopping after `limit`
/// have been found.
inline SpanIsomorphismSearch find_span_isomorphisms(const LensSpan& s1, const LensSpan& s2,
                                                    std::size_t limit = 2) {
  check_boundaries(s1);
  check_boundaries(s2);
  if (!same_category(s1.left.cod(), s2.left.cod()) || !same_category(s1.right.cod(), s2.right.cod()))
    throw BoundaryMismatch("span_isomorphic: spans have different feet");
  SpanIsomorphismSearch result;
  const FinCat& X1 = *s1.apex();
  const FinCat& X2 = *s2.apex();
  if (X1.object_count() != X2.object_count() || X1.morphism_count() != X2.morphism_count())
    return result;

  Functor H{s1.apex(), s2.apex(), std::vector<Obj>(X1.object_count(), kNoObj),
            std::vector<Mor>(X1.morphism_count(), kNoMor)};
  std::vector<bool> obj_used(X2.object_count(), false);
  std::vector<bool> mor_used(X2.morphism_count(), false);

  auto finish = [&] {
    if (!validate_functor(H).empty()) return;
    // Lifts of an isomorphism lens are forced; the legs' puts must agree.
    for (Obj x : X1.objects()) {
      for (Mor a : s1.left.cod()->out(s1.left(x)))
        if (H(s1.left.lift(x, a)) != s2.left.lift(H(x), a)) return;
      for (Mor b : s1.right.cod()->out(s1.right(x)))
        if (H(s1.right.lift(x, b)) != s2.right.lift(H(x), b)) return;
    }
    ++result.count;
    if (!result.first) {
      Functor inverse{s2.apex(), s1.apex(), std::vector<Obj>(X2.object_count()),
                      std::vector<Mor>(X2.morphism_count())};
      for (Obj x : X1.objects()) inverse.obj[ix(H(x))] = x;
      for (Mor f : X1.morphisms()) inverse.mor[ix(H(f))] = f;
      result.first = SpanIsomorphism{dopf_to_lens(H), dopf_to_lens(inverse)};
    }
  };

  std::function<void(std::size_t)> assign_mor = [&](std::size_t i) {
    if (result.count >= limit) return;
    if (i == X1.morphism_count()) {
      finish();
      return;
    }
    Mor f = mor_at(i);
    Obj s = H(X1.src(f));
    Obj t = H(X1.tgt(f));
    for (Mor g : X2.hom(s, t)) {
      if (mor_used[ix(g)] || X1.is_identity(f) != X2.is_identity(g)) continue;
      if (s1.left(f) != s2.left(g) || s1.right(f) != s2.right(g)) continue;
      H.mor[i] = g;
      bool ok = true;
      for (Mor h : X1.out(X1.tgt(f))) {
        Mor hf = X1.compose(h, f);
        if (H(h) != kNoMor && H(hf) != kNoMor && X2.compose(H(h), g) != H(hf)) ok = false;
      }
      for (Mor e : X1.morphisms()) {
        if (X1.tgt(e) != X1.src(f) || H(e) == kNoMor) continue;
        Mor fe = X1.compose(f, e);
        if (H(fe) != kNoMor && X2.compose(g, H(e)) != H(fe)) ok = false;
      }
      if (ok) {
        mor_used[ix(g)] = true;
        assign_mor(i + 1);
        mor_used[ix(g)] = false;
      }
      H.mor[i] = kNoMor;
      if (result.count >= limit) return;
    }
  };

  std::function<void(std::size_t)> assign_obj = [&](std::size_t i) {
    if (result.count >= limit) return;
    if (i == X1.object_count()) {
      assign_mor(0);
      return;
    }
    Obj x = obj_at(i);
    for (Obj y : X2.objects()) {
      if (obj_used[ix(y)] || s1.left(x) != s2.left(y) || s1.right(x) != s2.right(y)) continue;
      obj_used[ix(y)] = true;
      H.obj[i] = y;
      assign_obj(i + 1);
      H.obj[i] = kNoObj;
      obj_used[ix(y)] = false;
    }
  };
  assign_obj(0);
  return result;
}

inline std::optional<SpanIsomorphism> span_isomorphic(const LensSpan& s1, const LensSpan& s2) {
  return find_span_isomorphisms(s1, s2, 1).first;
}

}  // namespace lenslab
