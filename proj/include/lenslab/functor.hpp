#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"

namespace lenslab {

struct Functor {
  CatPtr dom, cod;
  std::vector<Obj> obj;
  std::vector<Mor> mor;

  Obj operator()(Obj x) const { return obj[ix(x)]; }
  Mor operator()(Mor f) const { return mor[ix(f)]; }

  friend bool operator==(const Functor& a, const Functor& b) {
    return same_category(a.dom, b.dom) && same_category(a.cod, b.cod) && a.obj == b.obj &&
           a.mor == b.mor;
  }
};

inline Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  for (Obj x : c->objects()) f.obj.push_back(x);
  for (Mor m : c->morphisms()) f.mor.push_back(m);
  return f;
}

/// The unique functor into a one-object discrete category.
inline Functor functor_to_terminal(const CatPtr& c, const CatPtr& terminal) {
  Obj t = obj_at(0);
  return Functor{c, terminal, std::vector<Obj>(c->object_count(), t),
                 std::vector<Mor>(c->morphism_count(), terminal->identity(t))};
}

/// `second ∘ first`
inline Functor compose(const Functor& second, const Functor& first) {
  if (!same_category(first.cod, second.dom))
    throw BoundaryMismatch("functor composition: codomain and domain differ");
  Functor r{first.dom, second.cod, {}, {}};
  r.obj.reserve(first.obj.size());
  for (Obj x : first.obj) r.obj.push_back(second(x));
  r.mor.reserve(first.mor.size());
  for (Mor f : first.mor) r.mor.push_back(second(f));
  return r;
}

inline Report validate_functor(const Functor& F) {
  Report report;
  const FinCat& A = *F.dom;
  const FinCat& B = *F.cod;
  if (F.obj.size() != A.object_count() || F.mor.size() != A.morphism_count()) {
    report.push_back({"assignment-size", {}});
    return report;
  }
  bool total = true;
  for (Obj x : A.objects())
    if (ix(F(x)) >= B.object_count()) {
      report.push_back({"missing-assignment", {A.name(x)}});
      total = false;
    }
  for (Mor f : A.morphisms())
    if (ix(F(f)) >= B.morphism_count()) {
      report.push_back({"missing-assignment", {A.name(f)}});
      total = false;
    }
  if (!total) return report;

  for (Mor f : A.morphisms()) {
    if (B.src(F(f)) != F(A.src(f))) report.push_back({"source-preservation", {A.name(f)}});
    if (B.tgt(F(f)) != F(A.tgt(f))) report.push_back({"target-preservation", {A.name(f)}});
  }
  for (Obj x : A.objects())
    if (F(A.identity(x)) != B.identity(F(x)))
      report.push_back({"identity-preservation", {A.name(x)}});
  for (Mor f : A.morphisms())
    for (Mor g : A.out(A.tgt(f))) {
      Mor image = B.compose(F(g), F(f));
      if (image != F(A.compose(g, f)))
        report.push_back({"composition-preservation", {A.name(g), A.name(f)}});
    }
  return report;
}

struct FunctorData {
  std::vector<std::pair<std::string, std::string>> obj;
  std::vector<std::pair<std::string, std::string>> mor;
};

/// Resolves identifiers; unresolved names are `dangling-reference`
/// violations and unassigned ones `missing-assignment`.
inline std::pair<Functor, Report> resolve_functor(const FunctorData& data, const CatPtr& dom,
                                                  const CatPtr& cod) {
  Functor F{dom, cod, std::vector<Obj>(dom->object_count(), kNoObj),
            std::vector<Mor>(dom->morphism_count(), kNoMor)};
  Report report;
  for (const auto& [from, to] : data.obj) {
    auto x = dom->find_object(from);
    auto y = cod->find_object(to);
    if (!x) report.push_back({"dangling-reference", {from}});
    if (!y) report.push_back({"dangling-reference", {to}});
    if (x && y) F.obj[ix(*x)] = *y;
  }
  for (const auto& [from, to] : data.mor) {
    auto f = dom->find_morphism(from);
    auto g = cod->find_morphism(to);
    if (!f) report.push_back({"dangling-reference", {from}});
    if (!g) report.push_back({"dangling-reference", {to}});
    if (f && g) F.mor[ix(*f)] = *g;
  }
  if (!report.empty()) return {std::move(F), std::move(report)};
  return {F, validate_functor(F)};
}

inline Report validate_functor(const FunctorData& data, const CatPtr& dom, const CatPtr& cod) {
  return resolve_functor(data, dom, cod).second;
}

inline FunctorData to_data(const Functor& F) {
  FunctorData d;
  for (Obj x : F.dom->objects()) d.obj.emplace_back(F.dom->name(x), F.cod->name(F(x)));
  for (Mor f : F.dom->morphisms()) d.mor.emplace_back(F.dom->name(f), F.cod->name(F(f)));
  return d;
}

}  // namespace lenslab
