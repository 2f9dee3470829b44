#pragma once

#include <deque>
#include <string>
#include <vector>

#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/lens.hpp"

namespace lenslab {

namespace detail {

// One generator of A □ B: (a, y) moves along A, (x, b) along B.
struct Letter {
  int side;   // 0: A, 1: B
  Mor mor;    // non-identity morphism of the moving side
  Obj fixed;  // object of the other side

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;  // application order: front is applied first

struct FreeProductParts {
  CatPtr A, B;
  std::vector<Word> words;
  std::vector<Obj> src_a, src_b;  // source object of each word
};

inline std::string object_id(const FinCat& A, const FinCat& B, Obj x, Obj y) {
  return "(" + A.name(x) + "," + B.name(y) + ")";
}

inline std::string letter_id(const FinCat& A, const FinCat& B, const Letter& l) {
  return l.side == 0 ? "(" + A.name(l.mor) + "," + B.name(l.fixed) + ")"
                     : "(" + A.name(l.fixed) + "," + B.name(l.mor) + ")";
}

inline std::string word_id(const FinCat& A, const FinCat& B, Obj x, Obj y, const Word& w) {
  if (w.empty()) return "id" + object_id(A, B, x, y);
  std::string id;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (!id.empty()) id += "∘";
    id += letter_id(A, B, *it);
  }
  return id;
}

inline std::pair<Obj, Obj> word_target(const FinCat& A, const FinCat& B, Obj x, Obj y,
                                       const Word& w) {
  for (const auto& l : w) {
    if (l.side == 0) x = A.tgt(l.mor);
    else y = B.tgt(l.mor);
  }
  return {x, y};
}

// Concatenate `first` then `second`, fusing a same-side junction.
inline Word concatenate(const FinCat& A, const FinCat& B, const Word& first, const Word& second) {
  Word w = first;
  for (const auto& l : second) {
    if (!w.empty() && w.back().side == l.side) {
      const FinCat& C = l.side == 0 ? A : B;
      w.back().mor = C.compose(l.mor, w.back().mor);
    } else {
      w.push_back(l);
    }
  }
  return w;
}

}  // namespace detail

struct FreeProduct {
  CatPtr apex;
  LensSpan projections;  // (P1, P2)
};

/// A □ B for acyclic A and B. Morphisms are alternating words of
/// non-identity one-sided generators in maximally fused normal form,
/// named `(a,y)`, `(x,b)`, joined by `∘` in composition order; identities
/// are `id(x,y)`.
inline FreeProduct free_product_with_projections(const CatPtr& Ap, const CatPtr& Bp) {
  const FinCat& A = *Ap;
  const FinCat& B = *Bp;
  if (!is_acyclic(A) || !is_acyclic(B))
    throw NotAcyclic("free product requires acyclic categories (the result would be infinite)");

  using detail::Word;
  CategoryBuilder builder;
  std::vector<std::vector<Obj>> obj_of(A.object_count(), std::vector<Obj>(B.object_count()));
  for (Obj x : A.objects())
    for (Obj y : B.objects()) obj_of[ix(x)][ix(y)] = builder.add_object(detail::object_id(A, B, x, y));

  std::vector<Word> words;
  std::vector<std::pair<Obj, Obj>> sources;
  for (Obj x : A.objects())
    for (Obj y : B.objects()) {
      // Breadth-first: shorter words first, generators in declaration order.
      std::deque<Word> queue{Word{}};
      while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        auto [tx, ty] = detail::word_target(A, B, x, y, w);
        Obj s = obj_of[ix(x)][ix(y)];
        Obj t = obj_of[ix(tx)][ix(ty)];
        Mor m = builder.add_morphism(detail::word_id(A, B, x, y, w), s, t);
        if (w.empty()) builder.set_identity(s, m);
        words.push_back(w);
        sources.emplace_back(x, y);
        int last = w.empty() ? -1 : w.back().side;
        if (last != 0)
          for (Mor a : A.out(tx))
            if (!A.is_identity(a)) {
              Word next = w;
              next.push_back({0, a, ty});
              queue.push_back(std::move(next));
            }
        if (last != 1)
          for (Mor b : B.out(ty))
            if (!B.is_identity(b)) {
              Word next = w;
              next.push_back({1, b, tx});
              queue.push_back(std::move(next));
            }
      }
    }

  const std::size_t m = words.size();
  std::vector<std::pair<Obj, Obj>> targets(m);
  for (std::size_t i = 0; i < m; ++i)
    targets[i] = detail::word_target(A, B, sources[i].first, sources[i].second, words[i]);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      if (sources[i] != targets[j]) continue;
      Word w = detail::concatenate(A, B, words[j], words[i]);
      auto id = detail::word_id(A, B, sources[j].first, sources[j].second, w);
      builder.set_composite(mor_at(i), mor_at(j), *builder.find_morphism(id));
    }
  CatPtr apex = std::move(builder).build();

  auto projection = [&](int side) {
    const CatPtr& target = side == 0 ? Ap : Bp;
    Functor get{apex, target, {}, {}};
    for (Obj x : A.objects())
      for (Obj y : B.objects()) get.obj.push_back(side == 0 ? x : y);
    for (std::size_t i = 0; i < m; ++i) {
      auto [x, y] = sources[i];
      Mor image = side == 0 ? A.identity(x) : B.identity(y);
      for (const auto& l : words[i])
        if (l.side == side) image = target->compose(l.mor, image);
      get.mor.push_back(image);
    }
    Cofunctor put = Cofunctor::blank(apex, target, get.obj);
    for (Obj x : A.objects())
      for (Obj y : B.objects()) {
        Obj d = obj_of[ix(x)][ix(y)];
        Obj here = side == 0 ? x : y;
        for (Mor f : target->out(here)) {
          Word w;
          if (!target->is_identity(f)) w.push_back({side, f, side == 0 ? y : x});
          put.lift_slot(d, f) = apex->morphism(detail::word_id(A, B, x, y, w));
        }
      }
    return Lens{std::move(get), std::move(put)};
  };
  return FreeProduct{apex, LensSpan{projection(0), projection(1)}};
}

inline CatPtr free_product(const CatPtr& A, const CatPtr& B) {
  return free_product_with_projections(A, B).apex;
}

inline LensSpan free_product_projections(const CatPtr& A, const CatPtr& B) {
  return free_product_with_projections(A, B).projections;
}

}  // namespace lenslab
