#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"

namespace lenslab {

/// A cofunctor A → B: an object function A → B and, for every object x of
/// A, a lifting function Out_B(obj x) → Out_A(x).
///
/// Lifts are stored densely, indexed by (x, b). Slots whose b is not out of
/// obj(x) stay kNoMor.
struct Cofunctor {
  CatPtr dom, cod;
  std::vector<Obj> obj;
  std::vector<Mor> lifts;

  static Cofunctor blank(CatPtr dom, CatPtr cod, std::vector<Obj> obj) {
    std::vector<Mor> lifts(dom->object_count() * cod->morphism_count(), kNoMor);
    return Cofunctor{std::move(dom), std::move(cod), std::move(obj), std::move(lifts)};
  }

  Obj operator()(Obj x) const { return obj[ix(x)]; }
  Mor lift(Obj x, Mor b) const { return lifts[ix(x) * cod->morphism_count() + ix(b)]; }
  Mor& lift_slot(Obj x, Mor b) { return lifts[ix(x) * cod->morphism_count() + ix(b)]; }

  friend bool operator==(const Cofunctor& a, const Cofunctor& b) {
    return same_category(a.dom, b.dom) && same_category(a.cod, b.cod) && a.obj == b.obj &&
           a.lifts == b.lifts;
  }
};

/// An asymmetric delta lens: a get functor and a put cofunctor with one
/// object function, satisfying PutGet.
struct Lens {
  Functor get;
  Cofunctor put;

  const CatPtr& dom() const { return get.dom; }
  const CatPtr& cod() const { return get.cod; }
  Obj operator()(Obj x) const { return get(x); }
  Mor operator()(Mor f) const { return get(f); }
  Mor lift(Obj x, Mor b) const { return put.lift(x, b); }

  friend bool operator==(const Lens&, const Lens&) = default;
};

namespace detail {

inline Report check_lift_table(const Cofunctor& P) {
  Report report;
  const FinCat& A = *P.dom;
  const FinCat& B = *P.cod;
  if (P.obj.size() != A.object_count() || P.lifts.size() != A.object_count() * B.morphism_count()) {
    report.push_back({"assignment-size", {}});
    return report;
  }
  for (Obj x : A.objects()) {
    if (ix(P(x)) >= B.object_count()) {
      report.push_back({"missing-assignment", {A.name(x)}});
      continue;
    }
    for (Mor b : B.morphisms()) {
      Mor a = P.lift(x, b);
      bool required = B.src(b) == P(x);
      if (!required) {
        if (a != kNoMor) report.push_back({"lift-spurious", {A.name(x), B.name(b)}});
        continue;
      }
      if (a == kNoMor || ix(a) >= A.morphism_count())
        report.push_back({"lift-missing", {A.name(x), B.name(b)}});
      else if (A.src(a) != x)
        report.push_back({"lift-source", {A.name(x), B.name(b)}});
    }
  }
  return report;
}

}  // namespace detail

/// Checks totality of the lifting functions and the PutTgt, PutId and PutPut
/// laws. Witnesses are (object, morphism[, morphism]) identifiers.
inline Report validate_cofunctor(const Cofunctor& P) {
  Report report = detail::check_lift_table(P);
  if (!report.empty()) return report;
  const FinCat& A = *P.dom;
  const FinCat& B = *P.cod;
  for (Obj x : A.objects()) {
    for (Mor b : B.out(P(x))) {
      Mor a = P.lift(x, b);
      if (P(A.tgt(a)) != B.tgt(b)) report.push_back({"PutTgt", {A.name(x), B.name(b)}});
    }
    if (P.lift(x, B.identity(P(x))) != A.identity(x))
      report.push_back({"PutId", {A.name(x)}});
  }
  for (Obj x : A.objects())
    for (Mor b : B.out(P(x))) {
      Mor a = P.lift(x, b);
      Obj next = A.tgt(a);
      if (P(next) != B.tgt(b)) continue;  // already reported as PutTgt
      for (Mor b2 : B.out(B.tgt(b))) {
        Mor lhs = P.lift(x, B.compose(b2, b));
        Mor rhs = A.compose(P.lift(next, b2), a);
        if (lhs != rhs) report.push_back({"PutPut", {A.name(x), B.name(b), B.name(b2)}});
      }
    }
  return report;
}

inline Report validate_lens(const Lens& L) {
  Report report;
  if (!same_category(L.get.dom, L.put.dom) || !same_category(L.get.cod, L.put.cod)) {
    report.push_back({"boundary-mismatch", {}});
    return report;
  }
  if (L.get.obj != L.put.obj) {
    for (Obj x : L.dom()->objects())
      if (ix(x) < L.get.obj.size() && ix(x) < L.put.obj.size() && L.get(x) != L.put(x))
        report.push_back({"object-function-mismatch", {L.dom()->name(x)}});
    if (report.empty()) report.push_back({"object-function-mismatch", {}});
  }
  Report functor = validate_functor(L.get);
  Report cofunctor = validate_cofunctor(L.put);
  report.insert(report.end(), functor.begin(), functor.end());
  report.insert(report.end(), cofunctor.begin(), cofunctor.end());
  if (!report.empty() && (has_violation(report, "assignment-size") ||
                          has_violation(report, "missing-assignment") ||
                          has_violation(report, "lift-missing") ||
                          has_violation(report, "lift-source") ||
                          has_violation(report, "object-function-mismatch")))
    return report;
  const FinCat& A = *L.dom();
  const FinCat& B = *L.cod();
  for (Obj x : A.objects())
    for (Mor b : B.out(L(x)))
      if (L(L.lift(x, b)) != b) report.push_back({"PutGet", {A.name(x), B.name(b)}});
  return report;
}

inline Lens identity_lens(const CatPtr& c) {
  Functor id = identity_functor(c);
  Cofunctor put = Cofunctor::blank(c, c, id.obj);
  for (Obj x : c->objects())
    for (Mor f : c->out(x)) put.lift_slot(x, f) = f;
  return Lens{std::move(id), std::move(put)};
}

/// The unique lens !_C into a terminal category.
inline Lens lens_to_terminal(const CatPtr& c, const CatPtr& terminal) {
  Functor get = functor_to_terminal(c, terminal);
  Cofunctor put = Cofunctor::blank(c, terminal, get.obj);
  for (Obj x : c->objects()) put.lift_slot(x, terminal->identity(obj_at(0))) = c->identity(x);
  return Lens{std::move(get), std::move(put)};
}

/// `second ∘ first` for first: A → B and second: B → C. Lifts compose as
/// lift_{second∘first, x}(c) = lift_{first, x}(lift_{second, first x}(c)).
inline Lens compose_lens(const Lens& first, const Lens& second) {
  if (!same_category(first.cod(), second.dom()))
    throw BoundaryMismatch("lens composition: codomain and domain differ");
  Functor get = compose(second.get, first.get);
  Cofunctor put = Cofunctor::blank(first.dom(), second.cod(), get.obj);
  const FinCat& A = *first.dom();
  const FinCat& C = *second.cod();
  for (Obj x : A.objects())
    for (Mor c : C.out(get(x))) put.lift_slot(x, c) = first.lift(x, second.lift(first(x), c));
  return Lens{std::move(get), std::move(put)};
}

// ---------------------------------------------------------------------------
// Identifier-level description.

struct LiftDecl {
  std::string at, over, put;
  friend bool operator==(const LiftDecl&, const LiftDecl&) = default;
};

struct LensData {
  FunctorData get;
  std::vector<LiftDecl> lift;
};

inline std::pair<Lens, Report> resolve_lens(const LensData& data, const CatPtr& dom,
                                            const CatPtr& cod) {
  auto [get, report] = resolve_functor(data.get, dom, cod);
  Cofunctor put = Cofunctor::blank(dom, cod, get.obj);
  for (const auto& l : data.lift) {
    auto x = dom->find_object(l.at);
    auto b = cod->find_morphism(l.over);
    auto a = dom->find_morphism(l.put);
    if (!x) report.push_back({"dangling-reference", {l.at}});
    if (!b) report.push_back({"dangling-reference", {l.over}});
    if (!a) report.push_back({"dangling-reference", {l.put}});
    if (!x || !b || !a) continue;
    Mor& slot = put.lift_slot(*x, *b);
    if (slot != kNoMor && slot != *a) report.push_back({"lift-conflict", {l.at, l.over}});
    slot = *a;
  }
  Lens lens{std::move(get), std::move(put)};
  if (has_violation(report, "dangling-reference") || has_violation(report, "missing-assignment"))
    return {std::move(lens), std::move(report)};
  Report laws = validate_lens(lens);
  for (auto& v : laws)
    if (std::find(report.begin(), report.end(), v) == report.end()) report.push_back(std::move(v));
  return {std::move(lens), std::move(report)};
}

inline LensData to_data(const Lens& L) {
  LensData d{to_data(L.get), {}};
  const FinCat& A = *L.dom();
  const FinCat& B = *L.cod();
  for (Obj x : A.objects())
    for (Mor b : B.out(L(x))) d.lift.push_back({A.name(x), B.name(b), A.name(L.lift(x, b))});
  return d;
}

}  // namespace lenslab
