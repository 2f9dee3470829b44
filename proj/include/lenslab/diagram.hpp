#pragma once

#include "lenslab/errors.hpp"
#include "lenslab/lens.hpp"

namespace lenslab {

/// F: A → C ← B: G
struct LensCospan {
  Lens left;
  Lens right;

  friend bool operator==(const LensCospan&, const LensCospan&) = default;
};

/// A ← X → B
struct LensSpan {
  Lens left;
  Lens right;

  const CatPtr& apex() const { return left.dom(); }
  friend bool operator==(const LensSpan&, const LensSpan&) = default;
};

/// The square
///
///     D ──right──▶ B
///     │            │
///    left          G
///     ▼            ▼
///     A ────F────▶ C
///
/// span = (Ḡ, F̄) = (left, right), cospan = (F, G).
struct LensSquare {
  LensSpan span;
  LensCospan cospan;

  friend bool operator==(const LensSquare&, const LensSquare&) = default;
};

inline void check_boundaries(const LensSpan& s) {
  if (!same_category(s.left.dom(), s.right.dom()))
    throw BoundaryMismatch("span legs do not share a domain");
}

inline void check_boundaries(const LensCospan& c) {
  if (!same_category(c.left.cod(), c.right.cod()))
    throw BoundaryMismatch("cospan legs do not share a codomain");
}

inline void check_boundaries(const LensSquare& sq) {
  check_boundaries(sq.span);
  check_boundaries(sq.cospan);
  if (!same_category(sq.span.left.cod(), sq.cospan.left.dom()) ||
      !same_category(sq.span.right.cod(), sq.cospan.right.dom()))
    throw BoundaryMismatch("square sides do not meet");
}

inline LensSpan mirror(const LensSpan& s) { return {s.right, s.left}; }
inline LensCospan mirror(const LensCospan& c) { return {c.right, c.left}; }
/// Reflects the square in its diagonal, exchanging the A and B sides.
inline LensSquare mirror(const LensSquare& sq) { return {mirror(sq.span), mirror(sq.cospan)}; }

}  // namespace lenslab
