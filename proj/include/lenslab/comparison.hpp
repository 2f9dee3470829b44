#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/lens.hpp"
#include "lenslab/pullback.hpp"
#include "lenslab/spans.hpp"
#include "lenslab/squares.hpp"

namespace lenslab {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// The enumeration budget, overridable through LENSLAB_BUDGET.
inline std::size_t default_budget() {
  if (const char* env = std::getenv("LENSLAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

/// Pins lift_at(over) to `put`.
struct LiftRequirement {
  Obj at;
  Mor over;
  Mor put;
};

struct EnumerationOptions {
  std::size_t budget = default_budget();  // search nodes
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  std::vector<LiftRequirement> required;
};

namespace detail {

// Backtracking over lift tables for a fixed get functor. Candidate lifts of
// b at x are the preimages of b out of x (identity for identities), so
// PutGet, PutTgt and PutId hold by construction; PutPut is checked on every
// equation as soon as its three keys are assigned.
class LensStructureSearch {
 public:
  LensStructureSearch(const Functor& F, const EnumerationOptions& options)
      : F_(F), A_(*F.dom), B_(*F.cod), options_(options) {
    const std::size_t mb = B_.morphism_count();
    key_of_.assign(A_.object_count() * mb, kNone);
    for (Obj x : A_.objects())
      for (Mor b : B_.out(F(x))) {
        key_of_[ix(x) * mb + ix(b)] = keys_.size();
        keys_.emplace_back(x, b);
      }
    choices_.resize(keys_.size());
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      auto [x, b] = keys_[k];
      if (B_.is_identity(b)) {
        choices_[k].push_back(A_.identity(x));
      } else {
        for (Mor a : A_.out(x))
          if (F(a) == b) choices_[k].push_back(a);
      }
    }
    for (const auto& r : options_.required) {
      std::size_t k = key_of_[ix(r.at) * mb + ix(r.over)];
      if (k == kNone) {
        infeasible_ = true;
        continue;
      }
      auto& c = choices_[k];
      bool present = std::find(c.begin(), c.end(), r.put) != c.end();
      c.clear();
      if (present) c.push_back(r.put);
    }
    for (const auto& c : choices_)
      if (c.empty()) infeasible_ = true;

    factorisations_.resize(mb);
    for (Mor b0 : B_.morphisms())
      for (Mor b1 : B_.out(B_.tgt(b0))) factorisations_[ix(B_.compose(b1, b0))].emplace_back(b0, b1);

    order_.resize(keys_.size());
    for (std::size_t k = 0; k < keys_.size(); ++k) order_[k] = k;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t i, std::size_t j) {
      return choices_[i].size() < choices_[j].size();
    });
    value_.assign(keys_.size(), kNoMor);
    by_target_.assign(A_.object_count(), {});
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (infeasible_) return;
    search(0, visit);
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t key(Obj x, Mor b) const { return key_of_[ix(x) * B_.morphism_count() + ix(b)]; }
  Mor value(Obj x, Mor b) const {
    std::size_t k = key(x, b);
    return k == kNone ? kNoMor : value_[k];
  }

  bool consistent(std::size_t k) const {
    auto [x, b] = keys_[k];
    Mor a = value_[k];
    Obj next = A_.tgt(a);
    for (Mor b1 : B_.out(B_.tgt(b))) {
      Mor a1 = value(next, b1);
      Mor a01 = value(x, B_.compose(b1, b));
      if (a1 != kNoMor && a01 != kNoMor && a01 != A_.compose(a1, a)) return false;
    }
    for (std::size_t j : by_target_[ix(x)]) {
      auto [x0, b0] = keys_[j];
      Mor a01 = value(x0, B_.compose(b, b0));
      if (a01 != kNoMor && a01 != A_.compose(a, value_[j])) return false;
    }
    for (auto [b0, b1] : factorisations_[ix(b)]) {
      Mor a0 = value(x, b0);
      if (a0 == kNoMor) continue;
      Mor a1 = value(A_.tgt(a0), b1);
      if (a1 != kNoMor && a != A_.compose(a1, a0)) return false;
    }
    return true;
  }

  template <class Visit>
  void search(std::size_t depth, Visit& visit) {
    if (stopped_) return;
    if (depth == order_.size()) {
      Cofunctor put = Cofunctor::blank(F_.dom, F_.cod, F_.obj);
      for (std::size_t k = 0; k < keys_.size(); ++k)
        put.lift_slot(keys_[k].first, keys_[k].second) = value_[k];
      if (!visit(Lens{F_, std::move(put)}) || ++found_ >= options_.limit) stopped_ = true;
      return;
    }
    std::size_t k = order_[depth];
    for (Mor a : choices_[k]) {
      if (++nodes_ > options_.budget) throw BudgetExceeded(options_.budget);
      value_[k] = a;
      auto& targets = by_target_[ix(A_.tgt(a))];
      targets.push_back(k);
      if (consistent(k)) search(depth + 1, visit);
      targets.pop_back();
      value_[k] = kNoMor;
      if (stopped_) return;
    }
  }

  const Functor& F_;
  const FinCat& A_;
  const FinCat& B_;
  const EnumerationOptions& options_;
  std::vector<std::pair<Obj, Mor>> keys_;
  std::vector<std::size_t> key_of_;
  std::vector<std::vector<Mor>> choices_;
  std::vector<std::vector<std::pair<Mor, Mor>>> factorisations_;
  std::vector<std::size_t> order_;
  std::vector<Mor> value_;
  std::vector<std::vector<std::size_t>> by_target_;
  std::size_t nodes_ = 0;
  std::size_t found_ = 0;
  bool infeasible_ = false;
  bool stopped_ = false;
};

}  // namespace detail

/// Calls `visit(const Lens&)` for each lens structure on F in a fixed order;
/// returning false from `visit` stops the search.
template <class Visit>
void for_each_lens_structure(const Functor& F, const EnumerationOptions& options, Visit&& visit) {
  detail::LensStructureSearch search(F, options);
  search.run(visit);
}

/// Every lift assignment making F a lens (subject to `options.required`).
/// Throws BudgetExceeded past `options.budget` search nodes.
inline std::vector<Lens> enumerate_lens_structures(const Functor& F,
                                                   const EnumerationOptions& options = {}) {
  std::vector<Lens> result;
  for_each_lens_structure(F, options, [&](const Lens& l) {
    result.push_back(l);
    return true;
  });
  return result;
}

inline std::size_t count_lens_structures(const Functor& F, const EnumerationOptions& options = {}) {
  std::size_t n = 0;
  for_each_lens_structure(F, options, [&](const Lens&) {
    ++n;
    return true;
  });
  return n;
}

inline void check_candidate_feet(const LensSpan& candidate, const LensSquare& sq) {
  check_boundaries(candidate);
  if (!same_category(candidate.left.cod(), sq.span.left.cod()) ||
      !same_category(candidate.right.cod(), sq.span.right.cod()))
    throw BoundaryMismatch("candidate span and square have different feet");
}

/// ⟨get K, get J⟩ into the apex of the square's span.
inline Functor comparison_functor(const LensSpan& candidate, const LensSquare& sq) {
  check_candidate_feet(candidate, sq);
  return pairing(sq.span.left.get, sq.span.right.get, candidate.left.get, candidate.right.get);
}

/// Lift requirements making both triangles commute as lenses:
///   lift_L,e(lift_Ḡ,Le(a)) = lift_K,e(a)   and   lift_L,e(lift_F̄,Le(b)) = lift_J,e(b).
inline std::vector<LiftRequirement> triangle_requirements(const LensSpan& candidate,
                                                          const LensSquare& sq, const Functor& L) {
  std::vector<LiftRequirement> req;
  const Lens& K = candidate.left;
  const Lens& J = candidate.right;
  for (Obj e : L.dom->objects()) {
    for (Mor a : K.cod()->out(K(e))) req.push_back({e, sq.span.left.lift(L(e), a), K.lift(e, a)});
    for (Mor b : J.cod()->out(J(e))) req.push_back({e, sq.span.right.lift(L(e), b), J.lift(e, b)});
  }
  return req;
}

struct ComparisonResult {
  std::optional<Lens> lens;
  /// Lens structures on the comparison functor making both triangles
  /// commute, when exhaustive verification was requested.
  std::optional<std::size_t> structures;
};

/// The unique comparison lens from an independent span compatible with the
/// cospan into a sync-minimal proxy pullback. Each d out of L e is
/// decomposed, shortest first, into chosen lifts of the proxy-pullback legs;
/// lift_L,e(d) is the matching composite of lifts along the candidate legs.
inline ComparisonResult comparison_lens(const LensSpan& candidate, const LensSquare& sq,
                                        bool verify_uniqueness = false,
                                        std::size_t budget = default_budget()) {
  check_candidate_feet(candidate, sq);
  std::vector<std::string> failed;
  if (!is_independent(candidate)) failed.push_back("independent");
  if (!is_compatible_square(LensSquare{candidate, sq.cospan})) failed.push_back("compatible");
  if (!is_sync_minimal(sq.span)) failed.push_back("sync-minimal");
  if (!failed.empty()) throw PreconditionViolated(failed);

  const Lens& K = candidate.left;
  const Lens& J = candidate.right;
  const Lens& Gbar = sq.span.left;
  const Lens& Fbar = sq.span.right;
  const FinCat& D = *sq.span.apex();
  const FinCat& E = *candidate.apex();
  Functor L = comparison_functor(candidate, sq);
  Cofunctor put = Cofunctor::blank(L.dom, L.cod, L.obj);

  // A step is a chosen lift along the left (0) or right (1) leg over `over`.
  struct Step {
    int leg;
    Mor over;
    Mor lift;
  };
  struct Visit {
    Mor parent;
    Step step;
  };

  for (Obj e : E.objects()) {
    Obj start = L(e);
    std::vector<std::optional<Visit>> seen(D.morphism_count());
    Mor id = D.identity(start);
    seen[ix(id)] = Visit{kNoMor, {}};
    std::deque<Mor> queue{id};
    while (!queue.empty()) {
      Mor m = queue.front();
      queue.pop_front();
      Obj here = D.tgt(m);
      std::vector<Step> steps;
      for (Mor a : Gbar.cod()->out(Gbar(here)))
        if (!Gbar.cod()->is_identity(a)) steps.push_back({0, a, Gbar.lift(here, a)});
      for (Mor b : Fbar.cod()->out(Fbar(here)))
        if (!Fbar.cod()->is_identity(b)) steps.push_back({1, b, Fbar.lift(here, b)});
      std::stable_sort(steps.begin(), steps.end(), [&](const Step& s, const Step& t) {
        return std::tie(D.name(s.lift), s.leg) < std::tie(D.name(t.lift), t.leg);
      });
      for (const Step& s : steps) {
        Mor next = D.compose(s.lift, m);
        if (seen[ix(next)]) continue;
        seen[ix(next)] = Visit{m, s};
        queue.push_back(next);
      }
    }
    for (Mor d : D.out(start)) {
      if (!seen[ix(d)]) throw Error("comparison_lens: no decomposition of " + D.name(d));
      std::vector<Step> path;
      for (Mor m = d; seen[ix(m)]->parent != kNoMor; m = seen[ix(m)]->parent)
        path.push_back(seen[ix(m)]->step);
      Mor lifted = E.identity(e);
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        Obj at = E.tgt(lifted);
        Mor l = it->leg == 0 ? K.lift(at, it->over) : J.lift(at, it->over);
        lifted = E.compose(l, lifted);
      }
      put.lift_slot(e, d) = lifted;
    }
  }

  Lens lens{L, std::move(put)};
  Report report = validate_lens(lens);
  if (!report.empty()) throw ValidationError("comparison_lens produced an invalid lens", report);
  if (!(compose_lens(lens, Gbar) == K) || !(compose_lens(lens, Fbar) == J))
    throw Error("comparison_lens: triangles do not commute");

  ComparisonResult result{std::move(lens), std::nullopt};
  if (verify_uniqueness) {
    EnumerationOptions options;
    options.budget = budget;
    options.required = triangle_requirements(candidate, sq, L);
    result.structures = count_lens_structures(L, options);
  }
  return result;
}

enum class Universality { unique, multiple, none };

struct UniversalVerdict {
  Universality kind;
  std::size_t count;
};

inline const char* to_string(Universality u) {
  switch (u) {
    case Universality::unique: return "unique";
    case Universality::multiple: return "multiple";
    case Universality::none: return "none";
  }
  return "?";
}

/// For each candidate span, counts lens structures on its comparison functor
/// that make both triangles commute in Lens.
inline std::vector<UniversalVerdict> verify_universal_property(
    const LensSquare& sq, const std::vector<LensSpan>& candidates,
    std::size_t budget = default_budget()) {
  std::vector<UniversalVerdict> verdicts;
  for (const auto& candidate : candidates) {
    Functor L = comparison_functor(candidate, sq);
    EnumerationOptions options;
    options.budget = budget;
    options.required = triangle_requirements(candidate, sq, L);
    std::size_t n = count_lens_structures(L, options);
    verdicts.push_back({n == 0 ? Universality::none
                        : n == 1 ? Universality::unique
                                 : Universality::multiple,
                        n});
  }
  return verdicts;
}

}  // namespace lenslab
