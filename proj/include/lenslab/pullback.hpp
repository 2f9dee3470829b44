#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"

namespace lenslab {

inline std::string pair_id(const std::string& first, const std::string& second) {
  return "⟨" + first + "," + second + "⟩";
}

struct CatPullback {
  CatPtr apex;
  Functor left;   // projection onto dom(F)
  Functor right;  // projection onto dom(G)
};

/// Pullback in Cat of the cospan F: A → C ← B: G. Objects and morphisms are
/// pairs with equal images, enumerated A-major in declaration order and
/// named `⟨x,y⟩`.
inline CatPullback cat_pullback(const Functor& F, const Functor& G) {
  if (!same_category(F.cod, G.cod))
    throw BoundaryMismatch("cat_pullback: functors do not share a codomain");
  const FinCat& A = *F.dom;
  const FinCat& B = *G.dom;
  const std::size_t nb = B.object_count();
  const std::size_t mb = B.morphism_count();

  CategoryBuilder builder;
  std::vector<Obj> obj_of(A.object_count() * nb, kNoObj);
  std::vector<Obj> left_obj, right_obj;
  for (Obj x : A.objects())
    for (Obj y : B.objects())
      if (F(x) == G(y)) {
        obj_of[ix(x) * nb + ix(y)] = builder.add_object(pair_id(A.name(x), B.name(y)));
        left_obj.push_back(x);
        right_obj.push_back(y);
      }

  std::vector<Mor> mor_of(A.morphism_count() * mb, kNoMor);
  std::vector<Mor> left_mor, right_mor;
  for (Mor f : A.morphisms())
    for (Mor g : B.morphisms())
      if (F(f) == G(g)) {
        Obj s = obj_of[ix(A.src(f)) * nb + ix(B.src(g))];
        Obj t = obj_of[ix(A.tgt(f)) * nb + ix(B.tgt(g))];
        mor_of[ix(f) * mb + ix(g)] = builder.add_morphism(pair_id(A.name(f), B.name(g)), s, t);
        left_mor.push_back(f);
        right_mor.push_back(g);
      }

  for (Obj x : A.objects())
    for (Obj y : B.objects()) {
      Obj d = obj_of[ix(x) * nb + ix(y)];
      if (d != kNoObj) builder.set_identity(d, mor_of[ix(A.identity(x)) * mb + ix(B.identity(y))]);
    }
  const std::size_t md = left_mor.size();
  for (std::size_t i = 0; i < md; ++i)
    for (std::size_t j = 0; j < md; ++j) {
      // pair i after pair j
      Mor f2 = left_mor[i], g2 = right_mor[i], f1 = left_mor[j], g1 = right_mor[j];
      if (A.src(f2) != A.tgt(f1) || B.src(g2) != B.tgt(g1)) continue;
      Mor r = mor_of[ix(A.compose(f2, f1)) * mb + ix(B.compose(g2, g1))];
      builder.set_composite(mor_at(i), mor_at(j), r);
    }

  CatPtr apex = std::move(builder).build();
  return CatPullback{apex, Functor{apex, F.dom, left_obj, left_mor},
                     Functor{apex, G.dom, right_obj, right_mor}};
}

/// The functor ⟨S,T⟩ into the apex of a pullback with projections
/// (left, right): the unique H with left∘H = S and right∘H = T.
inline Functor pairing(const Functor& left, const Functor& right, const Functor& S,
                       const Functor& T) {
  if (!same_category(left.dom, right.dom) || !same_category(S.dom, T.dom) ||
      !same_category(left.cod, S.cod) || !same_category(right.cod, T.cod))
    throw BoundaryMismatch("pairing: boundary categories differ");
  const FinCat& D = *left.dom;
  const FinCat& E = *S.dom;
  const std::size_t nb = right.cod->object_count();
  const std::size_t mb = right.cod->morphism_count();
  std::unordered_map<std::size_t, Obj> obj_of;
  std::unordered_map<std::size_t, Mor> mor_of;
  for (Obj d : D.objects()) obj_of.emplace(ix(left(d)) * nb + ix(right(d)), d);
  for (Mor d : D.morphisms()) mor_of.emplace(ix(left(d)) * mb + ix(right(d)), d);

  Functor H{S.dom, left.dom, {}, {}};
  for (Obj e : E.objects()) {
    auto it = obj_of.find(ix(S(e)) * nb + ix(T(e)));
    if (it == obj_of.end()) throw PreconditionViolated({"commuting-square at " + E.name(e)});
    H.obj.push_back(it->second);
  }
  for (Mor e : E.morphisms()) {
    auto it = mor_of.find(ix(S(e)) * mb + ix(T(e)));
    if (it == mor_of.end()) throw PreconditionViolated({"commuting-square at " + E.name(e)});
    H.mor.push_back(it->second);
  }
  return H;
}

inline Functor pairing(const CatPullback& pb, const Functor& S, const Functor& T) {
  return pairing(pb.left, pb.right, S, T);
}

}  // namespace lenslab
