#pragma once

#include <cstddef>

#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/lens.hpp"

namespace lenslab {

/// Each b out of F x has exactly one preimage out of x.
inline bool is_discrete_opfibration(const Functor& F) {
  const FinCat& A = *F.dom;
  const FinCat& B = *F.cod;
  std::vector<std::size_t> preimages(B.morphism_count());
  for (Obj x : A.objects()) {
    std::fill(preimages.begin(), preimages.end(), 0);
    for (Mor a : A.out(x)) ++preimages[ix(F(a))];
    for (Mor b : B.out(F(x)))
      if (preimages[ix(b)] != 1) return false;
  }
  return true;
}

/// GetPut: lift_x(F a) = a for every a out of x.
inline bool is_discrete_opfibration_lens(const Lens& L) {
  const FinCat& A = *L.dom();
  for (Obj x : A.objects())
    for (Mor a : A.out(x))
      if (L.lift(x, L(a)) != a) return false;
  return true;
}

/// The unique lens whose get functor is the discrete opfibration F.
inline Lens dopf_to_lens(const Functor& F) {
  if (!is_discrete_opfibration(F)) throw PreconditionViolated({"discrete-opfibration"});
  Cofunctor put = Cofunctor::blank(F.dom, F.cod, F.obj);
  for (Obj x : F.dom->objects())
    for (Mor a : F.dom->out(x)) put.lift_slot(x, F(a)) = a;
  return Lens{F, std::move(put)};
}

namespace detail {

// Number of u: Y → Y' with u ∘ f = f2 and F u = v.
inline std::size_t count_factorisations(const Functor& F, Mor f, Mor f2, Mor v) {
  const FinCat& A = *F.dom;
  std::size_t n = 0;
  for (Mor u : A.hom(A.tgt(f), A.tgt(f2)))
    if (A.compose(u, f) == f2 && F(u) == v) ++n;
  return n;
}

}  // namespace detail

/// f: X → Y is F-opcartesian when every f2: X → Y' and v: FY → FY' with
/// F f2 = v ∘ F f admit exactly one u: Y → Y' with f2 = u ∘ f and F u = v.
/// Exhaustive over the finite hom-sets.
inline bool is_opcartesian(const Functor& F, Mor f) {
  const FinCat& A = *F.dom;
  const FinCat& B = *F.cod;
  Obj y = A.tgt(f);
  for (Mor f2 : A.out(A.src(f))) {
    for (Mor v : B.hom(F(y), F(A.tgt(f2)))) {
      if (B.compose(v, F(f)) != F(f2)) continue;
      if (detail::count_factorisations(F, f, f2, v) != 1) return false;
    }
  }
  return true;
}

/// As is_opcartesian, restricted to v = identity.
inline bool is_weakly_opcartesian(const Functor& F, Mor f) {
  const FinCat& A = *F.dom;
  const FinCat& B = *F.cod;
  Obj y = A.tgt(f);
  for (Mor f2 : A.out(A.src(f))) {
    if (F(A.tgt(f2)) != F(y) || F(f2) != F(f)) continue;
    if (detail::count_factorisations(F, f, f2, B.identity(F(y))) != 1) return false;
  }
  return true;
}

enum class SplitCheck { by_definition, by_characterisation };

/// A lens is a split opfibration when its chosen lifts are opcartesian for
/// its get functor. The characterisation instead asks, for every a: x → x',
/// for exactly one u with a = u ∘ lift_x(F a) and F u = id.
inline bool is_split_opfibration(const Lens& L, SplitCheck method = SplitCheck::by_definition) {
  const FinCat& A = *L.dom();
  const FinCat& B = *L.cod();
  if (method == SplitCheck::by_definition) {
    for (Obj x : A.objects())
      for (Mor b : B.out(L(x)))
        if (!is_opcartesian(L.get, L.lift(x, b))) return false;
    return true;
  }
  for (Mor a : A.morphisms()) {
    Mor chosen = L.lift(A.src(a), L(a));
    std::size_t n = 0;
    for (Mor u : A.hom(A.tgt(chosen), A.tgt(a)))
      if (A.compose(u, chosen) == a && L(u) == B.identity(L(A.tgt(a)))) ++n;
    if (n != 1) return false;
  }
  return true;
}

}  // namespace lenslab
