#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lenslab/comparison.hpp"
#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/free_product.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/lens.hpp"
#include "lenslab/opfibration.hpp"
#include "lenslab/squares.hpp"

namespace lenslab {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_objects = 4;
  std::size_t max_extra_morphisms = 6;  // bound on non-identity morphisms
  bool require_acyclic = false;
  bool require_dopf_leg = false;
  bool require_split_opfib_leg = false;
};

inline void check_config(const GenConfig& cfg) {
  if (cfg.max_objects == 0) throw PreconditionViolated({"max-objects >= 1"});
}

/// Portable generator: mt19937_64 seeded through splitmix64, with its own
/// bounded draws so that streams agree across standard libraries.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return static_cast<std::size_t>(x % bound);
    }
  }

  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

  Rng split() { return Rng(next()); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Independent seed for a numbered sub-stream of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return Rng::mix(seed ^ Rng::mix(stream + 1));
}

inline std::size_t nonidentity_count(const FinCat& c) {
  return c.morphism_count() - c.object_count();
}

inline bool fits(const FinCat& c, std::size_t max_objects, std::size_t max_extra) {
  return c.object_count() <= max_objects && nonidentity_count(c) <= max_extra;
}

inline bool fits(const FinCat& c, const GenConfig& cfg) {
  return fits(c, cfg.max_objects, cfg.max_extra_morphisms);
}

namespace detail {

inline std::string gen_object_name(std::size_t i) { return "X" + std::to_string(i); }

// Free category on a random acyclic graph, optionally quotiented by the
// congruence generated by identifying random parallel paths.
inline CatPtr random_path_category(Rng& rng, std::size_t min_objects, std::size_t max_objects,
                                   std::size_t max_extra) {
  const std::size_t n = min_objects + rng.below(max_objects - min_objects + 1);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[i] = i;
  rng.shuffle(rank);

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto path_count = [&] {
    // Edges run from lower to higher rank; count paths by decreasing rank.
    std::vector<std::size_t> by_rank(n);
    for (std::size_t v = 0; v < n; ++v) by_rank[rank[v]] = v;
    std::vector<std::size_t> from(n, 1);
    std::size_t total = 0;
    for (std::size_t r = n; r-- > 0;) {
      std::size_t v = by_rank[r];
      for (auto [s, t] : edges)
        if (s == v) from[v] += from[t];
      total += from[v] - 1;
    }
    return total;
  };
  if (n >= 2) {
    std::size_t attempts = rng.chance(1, 4) ? rng.below(max_extra + 1) : 3 * (max_extra + 1);
    for (std::size_t k = 0; k < attempts; ++k) {
      std::size_t i = rng.below(n);
      std::size_t j = rng.below(n);
      if (i == j) continue;
      if (rank[i] > rank[j]) std::swap(i, j);
      edges.emplace_back(i, j);
      if (path_count() > max_extra) edges.pop_back();
    }
  }

  struct Path {
    std::size_t src, tgt;
    std::vector<std::size_t> edges;
  };
  std::vector<Path> paths;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Path> queue{{s, s, {}}};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      Path p = queue[q];
      index.emplace(std::make_pair(p.src, p.edges), paths.size());
      paths.push_back(p);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].first == p.tgt) {
          Path next = p;
          next.tgt = edges[e].second;
          next.edges.push_back(e);
          queue.push_back(std::move(next));
        }
    }
  }
  auto compose_paths = [&](std::size_t after, std::size_t before) {
    std::vector<std::size_t> e = paths[before].edges;
    e.insert(e.end(), paths[after].edges.begin(), paths[after].edges.end());
    return index.at({paths[before].src, e});
  };

  const std::size_t m = paths.size();
  std::vector<std::size_t> parent(m);
  for (std::size_t i = 0; i < m; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  auto identify = [&](std::size_t p0, std::size_t q0) {
    std::vector<std::pair<std::size_t, std::size_t>> work{{p0, q0}};
    while (!work.empty()) {
      auto [p, q] = work.back();
      work.pop_back();
      std::size_t rp = find(p), rq = find(q);
      if (rp == rq) continue;
      parent[std::max(rp, rq)] = std::min(rp, rq);
      for (std::size_t r = 0; r < m; ++r) {
        if (paths[r].src == paths[p].tgt) work.emplace_back(compose_paths(r, p), compose_paths(r, q));
        if (paths[r].tgt == paths[p].src) work.emplace_back(compose_paths(p, r), compose_paths(q, r));
      }
    }
  };
  std::size_t rounds = rng.chance(1, 2) ? 1 + rng.below(2) : 0;
  for (std::size_t k = 0; k < rounds; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> parallel;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q)
        if (!paths[p].edges.empty() && paths[p].src == paths[q].src &&
            paths[p].tgt == paths[q].tgt && find(p) != find(q))
          parallel.emplace_back(p, q);
    if (parallel.empty()) break;
    auto [p, q] = parallel[rng.below(parallel.size())];
    identify(p, q);
  }

  CategoryBuilder builder;
  for (std::size_t v = 0; v < n; ++v) builder.add_object(gen_object_name(v));
  std::vector<Mor> mor_of(m, kNoMor);
  std::vector<std::size_t> reps;
  for (std::size_t p = 0; p < m; ++p) {
    if (find(p) != p) continue;
    std::string name;
    if (paths[p].edges.empty()) {
      name = "id_" + gen_object_name(paths[p].src);
    } else {
      for (auto it = paths[p].edges.rbegin(); it != paths[p].edges.rend(); ++it) {
        if (!name.empty()) name += "∘";
        name += "m" + std::to_string(*it);
      }
    }
    mor_of[p] = builder.add_morphism(name, obj_at(paths[p].src), obj_at(paths[p].tgt));
    if (paths[p].edges.empty()) builder.set_identity(obj_at(paths[p].src), mor_of[p]);
    reps.push_back(p);
  }
  for (std::size_t f : reps)
    for (std::size_t g : reps)
      if (paths[g].src == paths[f].tgt)
        builder.set_composite(mor_of[g], mor_of[f], mor_of[find(compose_paths(g, f))]);
  return std::move(builder).build();
}

// Concrete category of functions between small finite sets, generated by a
// few random functions. Fails when the closure outgrows the bound.
inline std::optional<CatPtr> random_function_category(Rng& rng, std::size_t min_objects,
                                                      std::size_t max_objects,
                                                      std::size_t max_extra) {
  const std::size_t n = min_objects + rng.below(max_objects - min_objects + 1);
  std::vector<std::size_t> size(n);
  for (auto& s : size) s = 1 + rng.below(3);

  struct Fn {
    std::size_t src, tgt;
    std::vector<std::size_t> map;
    std::string name;
  };
  std::vector<Fn> fns;
  auto find_fn = [&](std::size_t s, std::size_t t, const std::vector<std::size_t>& map) {
    for (std::size_t i = 0; i < fns.size(); ++i)
      if (fns[i].src == s && fns[i].tgt == t && fns[i].map == map) return i;
    return fns.size();
  };
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> id(size[v]);
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    fns.push_back({v, v, id, "id_" + gen_object_name(v)});
  }
  std::size_t generators = rng.below(std::min<std::size_t>(max_extra, 4) + 1);
  for (std::size_t k = 0; k < generators; ++k) {
    std::size_t s = rng.below(n), t = rng.below(n);
    std::vector<std::size_t> map(size[s]);
    for (auto& x : map) x = rng.below(size[t]);
    if (find_fn(s, t, map) == fns.size())
      fns.push_back({s, t, map, "m" + std::to_string(k)});
  }
  auto apply = [&](const Fn& after, const Fn& before) {
    std::vector<std::size_t> map(before.map.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = after.map[before.map[i]];
    return map;
  };
  for (std::size_t i = 0; i < fns.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (auto [g, f] : {std::pair{i, j}, std::pair{j, i}}) {
        if (fns[g].src != fns[f].tgt) continue;
        auto map = apply(fns[g], fns[f]);
        if (find_fn(fns[f].src, fns[g].tgt, map) != fns.size()) continue;
        fns.push_back({fns[f].src, fns[g].tgt, map, fns[g].name + "∘" + fns[f].name});
        if (fns.size() - n > max_extra) return std::nullopt;
      }

  CategoryBuilder builder;
  for (std::size_t v = 0; v < n; ++v) builder.add_object(gen_object_name(v));
  for (const auto& f : fns) builder.add_morphism(f.name, obj_at(f.src), obj_at(f.tgt));
  for (std::size_t v = 0; v < n; ++v) builder.set_identity(obj_at(v), mor_at(v));
  for (std::size_t g = 0; g < fns.size(); ++g)
    for (std::size_t f = 0; f < fns.size(); ++f)
      if (fns[g].src == fns[f].tgt)
        builder.set_composite(mor_at(g), mor_at(f),
                              mor_at(find_fn(fns[f].src, fns[g].tgt, apply(fns[g], fns[f]))));
  return std::move(builder).build();
}

inline CatPtr random_category(Rng& rng, std::size_t min_objects, std::size_t max_objects,
                              std::size_t max_extra, bool acyclic) {
  min_objects = std::min(min_objects, max_objects);
  if (!acyclic && rng.chance(1, 3))
    if (auto c = random_function_category(rng, min_objects, max_objects, max_extra)) return *c;
  return random_path_category(rng, min_objects, max_objects, max_extra);
}

inline CatPtr random_category(Rng& rng, const GenConfig& cfg, std::size_t min_objects = 1) {
  return random_category(rng, min_objects, cfg.max_objects, cfg.max_extra_morphisms,
                         cfg.require_acyclic);
}

// Randomised backtracking for a functor E → B with object images drawn
// from `obj_choices` and morphism images admitted by `allowed`.
inline std::optional<Functor> random_functor(Rng& rng, const CatPtr& Ep, const CatPtr& Bp,
                                             std::vector<std::vector<Obj>> obj_choices,
                                             const std::function<bool(Mor, Mor)>& allowed,
                                             std::size_t node_limit = 4000) {
  const FinCat& E = *Ep;
  const FinCat& B = *Bp;
  for (auto& c : obj_choices) rng.shuffle(c);
  Functor F{Ep, Bp, std::vector<Obj>(E.object_count(), kNoObj),
            std::vector<Mor>(E.morphism_count(), kNoMor)};
  std::vector<std::tuple<Mor, Mor, Mor>> equations;
  std::vector<std::vector<std::size_t>> involved(E.morphism_count());
  for (Mor f : E.morphisms())
    for (Mor g : E.out(E.tgt(f))) {
      Mor gf = E.compose(g, f);
      for (Mor m : {f, g, gf}) involved[ix(m)].push_back(equations.size());
      equations.emplace_back(g, f, gf);
    }
  std::size_t nodes = 0;
  auto consistent = [&](Mor m) {
    for (std::size_t k : involved[ix(m)]) {
      auto [g, f, gf] = equations[k];
      if (F(g) != kNoMor && F(f) != kNoMor && F(gf) != kNoMor && B.compose(F(g), F(f)) != F(gf))
        return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> assign_mor = [&](std::size_t i) {
    if (i == E.morphism_count()) return true;
    Mor f = mor_at(i);
    Obj s = F(E.src(f)), t = F(E.tgt(f));
    std::vector<Mor> cands;
    if (E.is_identity(f)) {
      if (allowed(f, B.identity(s))) cands.push_back(B.identity(s));
    } else {
      for (Mor g : B.hom(s, t))
        if (allowed(f, g)) cands.push_back(g);
      rng.shuffle(cands);
    }
    for (Mor g : cands) {
      if (++nodes > node_limit) return false;
      F.mor[i] = g;
      if (consistent(f) && assign_mor(i + 1)) return true;
      F.mor[i] = kNoMor;
    }
    return false;
  };
  std::function<bool(std::size_t)> assign_obj = [&](std::size_t i) {
    if (i == E.object_count()) return assign_mor(0);
    for (Obj y : obj_choices[i]) {
      if (++nodes > node_limit) return false;
      F.obj[i] = y;
      if (assign_obj(i + 1)) return true;
    }
    F.obj[i] = kNoObj;
    return false;
  };
  if (!assign_obj(0)) return std::nullopt;
  return F;
}

// A random lens structure among the first few found on F.
inline std::optional<Lens> random_lens_structure(Rng& rng, const Functor& F,
                                                 std::vector<LiftRequirement> required = {}) {
  EnumerationOptions options;
  options.budget = 20000;
  options.limit = 16;
  options.required = std::move(required);
  std::vector<Lens> found;
  try {
    for_each_lens_structure(F, options, [&](const Lens& l) {
      found.push_back(l);
      return true;
    });
  } catch (const BudgetExceeded&) {
  }
  if (found.empty()) return std::nullopt;
  return found[rng.below(found.size())];
}

}  // namespace detail

enum class LensStrategy {
  discrete_opfibration,     // sum of coslices projected to its base
  free_product_projection,  // P1 or P2 of a free product
  product_projection,       // B × X → B lifting to (b, id)
  composite,                // composite of two generated lenses
  rejection,                // random lift table on a random onto functor
};

inline const char* to_string(LensStrategy s) {
  switch (s) {
    case LensStrategy::discrete_opfibration: return "discrete-opfibration";
    case LensStrategy::free_product_projection: return "free-product-projection";
    case LensStrategy::product_projection: return "product-projection";
    case LensStrategy::composite: return "composite";
    case LensStrategy::rejection: return "rejection";
  }
  return "?";
}

namespace detail {

// ⊔_i r_i/B → B for random roots r_i: a discrete opfibration.
inline Lens coslice_sum(Rng& rng, const CatPtr& Bp) {
  const FinCat& B = *Bp;
  std::size_t k = 1 + rng.below(std::min<std::size_t>(2, B.object_count()));
  std::vector<Obj> roots;
  for (std::size_t i = 0; i < k; ++i) roots.push_back(obj_at(rng.below(B.object_count())));

  CategoryBuilder builder;
  std::map<std::pair<std::size_t, Mor>, Obj> obj_of;
  Functor get{nullptr, Bp, {}, {}};
  for (std::size_t i = 0; i < k; ++i)
    for (Mor f : B.out(roots[i])) {
      obj_of[{i, f}] = builder.add_object(gen_object_name(get.obj.size()));
      get.obj.push_back(B.tgt(f));
    }
  std::map<std::tuple<std::size_t, Mor, Mor>, Mor> mor_of;
  std::size_t counter = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (Mor f : B.out(roots[i]))
      for (Mor g : B.out(B.tgt(f))) {
        Obj s = obj_of.at({i, f});
        std::string name = B.is_identity(g) ? "id_" + gen_object_name(ix(s))
                                            : "m" + std::to_string(counter++);
        Mor m = builder.add_morphism(name, s, obj_of.at({i, B.compose(g, f)}));
        if (B.is_identity(g)) builder.set_identity(s, m);
        mor_of[{i, f, g}] = m;
        get.mor.push_back(g);
      }
  for (const auto& [key, m] : mor_of) {
    auto [i, f, g] = key;
    Mor gf = B.compose(g, f);
    for (Mor h : B.out(B.tgt(gf)))
      builder.set_composite(mor_of.at({i, gf, h}), m, mor_of.at({i, f, B.compose(h, g)}));
  }
  get.dom = std::move(builder).build();
  return dopf_to_lens(get);
}

inline std::optional<Lens> try_lens_strategy(Rng& rng, LensStrategy strategy, const CatPtr& B,
                                             const GenConfig& cfg, int depth = 0) {
  switch (strategy) {
    case LensStrategy::discrete_opfibration:
      if (rng.chance(1, 4)) return identity_lens(B);
      return coslice_sum(rng, B);

    case LensStrategy::free_product_projection: {
      if (!is_acyclic(*B)) return std::nullopt;
      CatPtr X = rng.chance(1, 2) ? interval_category() : random_path_category(rng, 1, 2, 1);
      if (rng.chance(1, 2)) return free_product_projections(B, X).left;
      return free_product_projections(X, B).right;
    }

    case LensStrategy::product_projection: {
      CatPtr X = random_category(rng, 1, 2, 2, cfg.require_acyclic);
      CatPtr T = terminal_category();
      if (rng.chance(1, 2))
        return proxy_pullback({lens_to_terminal(B, T), lens_to_terminal(X, T)}).span.left;
      return proxy_pullback({lens_to_terminal(X, T), lens_to_terminal(B, T)}).span.right;
    }

    case LensStrategy::composite: {
      if (depth > 0) return std::nullopt;
      static constexpr LensStrategy parts[] = {LensStrategy::discrete_opfibration,
                                               LensStrategy::product_projection,
                                               LensStrategy::free_product_projection,
                                               LensStrategy::rejection};
      auto second = try_lens_strategy(rng, parts[rng.below(4)], B, cfg, depth + 1);
      if (!second) return std::nullopt;
      auto first = try_lens_strategy(rng, parts[rng.below(4)], second->dom(), cfg, depth + 1);
      if (!first) return std::nullopt;
      return compose_lens(*first, *second);
    }

    case LensStrategy::rejection: {
      const std::size_t nb = B->object_count();
      const std::size_t top = std::max(cfg.max_objects, nb);
      CatPtr E = random_category(rng, std::min(nb + rng.below(3), top), top,
                                 cfg.max_extra_morphisms, cfg.require_acyclic);
      std::vector<std::size_t> order(E->object_count());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.shuffle(order);
      std::vector<std::vector<Obj>> choices(E->object_count());
      for (std::size_t i = 0; i < order.size(); ++i)
        choices[order[i]] = {obj_at(i < nb ? i : rng.below(nb))};
      auto F = random_functor(rng, E, B, std::move(choices), [](Mor, Mor) { return true; });
      if (!F) return std::nullopt;
      return random_lens_structure(rng, *F);
    }
  }
  return std::nullopt;
}

inline bool meets_flags(const Lens& L, const GenConfig& cfg) {
  if (cfg.require_dopf_leg && !is_discrete_opfibration_lens(L)) return false;
  if (cfg.require_split_opfib_leg && !is_split_opfibration(L)) return false;
  if (cfg.require_acyclic && !is_acyclic(*L.dom())) return false;
  return true;
}

inline Lens random_lens(Rng& rng, const GenConfig& cfg, const CatPtr& onto,
                        std::optional<LensStrategy> only = std::nullopt) {
  CatPtr B = onto ? onto : random_category(rng, cfg);
  if (B->object_count() == 0) return identity_lens(B);  // the only lens onto ∅
  std::vector<LensStrategy> strategies;
  if (only) {
    strategies = {*only};
  } else if (cfg.require_dopf_leg) {
    strategies = {LensStrategy::discrete_opfibration};
  } else {
    strategies = {LensStrategy::discrete_opfibration, LensStrategy::free_product_projection,
                  LensStrategy::product_projection, LensStrategy::composite,
                  LensStrategy::rejection,            LensStrategy::rejection,
                  LensStrategy::rejection};
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    LensStrategy s = strategies[rng.below(strategies.size())];
    auto L = try_lens_strategy(rng, s, B, cfg);
    if (L && fits(*L->dom(), cfg) && meets_flags(*L, cfg)) return *L;
  }
  if (!only && fits(*B, cfg)) return identity_lens(B);
  throw GenerationExhausted("gen_lens: no lens found within the sampling budget");
}

}  // namespace detail

inline CatPtr gen_category(const GenConfig& cfg) {
  check_config(cfg);
  Rng rng(derive_seed(cfg.seed, 1));
  return detail::random_category(rng, cfg);
}

/// A lens onto `onto` (or onto a generated category) whose domain respects
/// the configured bounds. Throws GenerationExhausted when sampling fails.
inline Lens gen_lens(const GenConfig& cfg, const CatPtr& onto = nullptr,
                     std::optional<LensStrategy> strategy = std::nullopt) {
  check_config(cfg);
  Rng rng(derive_seed(cfg.seed, 2));
  return detail::random_lens(rng, cfg, onto, strategy);
}

/// F: A → C ← B: G, with any required property placed on F.
inline LensCospan gen_cospan(const GenConfig& cfg) {
  check_config(cfg);
  Rng rng(derive_seed(cfg.seed, 3));
  CatPtr C = detail::random_category(rng, cfg, std::min<std::size_t>(2, cfg.max_objects));
  Lens F = detail::random_lens(rng, cfg, C);
  GenConfig plain = cfg;
  plain.require_dopf_leg = plain.require_split_opfib_leg = false;
  Lens G = detail::random_lens(rng, plain, C);
  return {std::move(F), std::move(G)};
}

/// Bounds for lenses onto `target`: the configured ones, widened to admit
/// `target` itself.
inline GenConfig widened_for(const GenConfig& cfg, const FinCat& target) {
  GenConfig wide = cfg;
  wide.max_objects = std::max(cfg.max_objects, target.object_count() + 2);
  wide.max_extra_morphisms = std::max(cfg.max_extra_morphisms, nonidentity_count(target) + 6);
  wide.require_dopf_leg = wide.require_split_opfib_leg = false;
  return wide;
}

/// A span (Ḡ∘H, F̄∘H) for a generated lens H onto the proxy-pullback apex.
struct FactoredCandidate {
  LensSpan span;
  Lens factor;  // H
};

inline FactoredCandidate gen_factored_candidate(const GenConfig& cfg, const LensCospan& cospan) {
  check_config(cfg);
  Rng rng(derive_seed(cfg.seed, 4));
  LensSquare pp = proxy_pullback(cospan);
  Lens H = detail::random_lens(rng, widened_for(cfg, *pp.span.apex()), pp.span.apex());
  return {{compose_lens(H, pp.span.left), compose_lens(H, pp.span.right)}, std::move(H)};
}

inline LensSpan gen_commuting_candidate(const GenConfig& cfg, const LensCospan& cospan) {
  return gen_factored_candidate(cfg, cospan).span;
}

/// A span (K, J) forming a commuting square with the cospan, sampled
/// without going through the proxy pullback; it need not be compatible or
/// independent.
inline LensSpan gen_adversarial_candidate(const GenConfig& cfg, const LensCospan& cospan) {
  check_config(cfg);
  check_boundaries(cospan);
  Rng rng(derive_seed(cfg.seed, 5));
  const Lens& F = cospan.left;
  const Lens& G = cospan.right;
  const FinCat& B = *G.dom();
  GenConfig plain = cfg;
  plain.require_dopf_leg = plain.require_split_opfib_leg = false;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Lens K = detail::random_lens(rng, widened_for(plain, *F.dom()), F.dom());
    const FinCat& E = *K.dom();
    Functor FK = compose(F.get, K.get);
    std::vector<std::vector<Obj>> choices(E.object_count());
    for (Obj e : E.objects())
      for (Obj y : B.objects())
        if (G(y) == FK(e)) choices[ix(e)].push_back(y);
    auto J = detail::random_functor(rng, K.dom(), G.dom(), std::move(choices),
                                    [&](Mor e, Mor b) { return G(b) == FK(e); });
    if (!J) continue;
    std::vector<LiftRequirement> required;
    for (Obj e : E.objects())
      for (Mor c : F.cod()->out(FK(e)))
        required.push_back({e, G.lift((*J)(e), c), K.lift(e, F.lift(K(e), c))});
    auto Jlens = detail::random_lens_structure(rng, *J, std::move(required));
    if (!Jlens) continue;
    return {std::move(K), std::move(*Jlens)};
  }
  throw GenerationExhausted("gen_adversarial_candidate: no commuting span found");
}

}  // namespace lenslab
