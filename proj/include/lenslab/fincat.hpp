#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "lenslab/errors.hpp"

namespace lenslab {

enum class Obj : std::uint32_t {};
enum class Mor : std::uint32_t {};

inline constexpr Obj kNoObj{std::numeric_limits<std::uint32_t>::max()};
inline constexpr Mor kNoMor{std::numeric_limits<std::uint32_t>::max()};

constexpr std::size_t ix(Obj o) noexcept { return static_cast<std::size_t>(o); }
constexpr std::size_t ix(Mor m) noexcept { return static_cast<std::size_t>(m); }
constexpr Obj obj_at(std::size_t i) noexcept { return Obj{static_cast<std::uint32_t>(i)}; }
constexpr Mor mor_at(std::size_t i) noexcept { return Mor{static_cast<std::uint32_t>(i)}; }

/// A finite category with an explicit composition table.
///
/// Objects and morphisms are dense indices into declaration order; their
/// string identifiers are what files and reports use. Instances are
/// immutable once built and are shared through `CatPtr`.
class FinCat {
 public:
  std::size_t object_count() const noexcept { return object_names_.size(); }
  std::size_t morphism_count() const noexcept { return morphism_names_.size(); }

  auto objects() const {
    return std::views::iota(std::size_t{0}, object_count()) |
           std::views::transform([](std::size_t i) { return obj_at(i); });
  }
  auto morphisms() const {
    return std::views::iota(std::size_t{0}, morphism_count()) |
           std::views::transform([](std::size_t i) { return mor_at(i); });
  }

  const std::string& name(Obj x) const { return object_names_[ix(x)]; }
  const std::string& name(Mor f) const { return morphism_names_[ix(f)]; }

  std::optional<Obj> find_object(std::string_view id) const {
    auto it = object_index_.find(std::string(id));
    if (it == object_index_.end()) return std::nullopt;
    return obj_at(it->second);
  }
  std::optional<Mor> find_morphism(std::string_view id) const {
    auto it = morphism_index_.find(std::string(id));
    if (it == morphism_index_.end()) return std::nullopt;
    return mor_at(it->second);
  }
  Obj object(std::string_view id) const {
    if (auto x = find_object(id)) return *x;
    throw UnknownIdentifier(std::string(id));
  }
  Mor morphism(std::string_view id) const {
    if (auto f = find_morphism(id)) return *f;
    throw UnknownIdentifier(std::string(id));
  }

  Obj src(Mor f) const { return src_[ix(f)]; }
  Obj tgt(Mor f) const { return tgt_[ix(f)]; }
  Mor identity(Obj x) const { return identity_[ix(x)]; }
  bool is_identity(Mor f) const { return src(f) == tgt(f) && identity(src(f)) == f; }

  /// `after ∘ before`, or kNoMor when tgt(before) != src(after).
  Mor compose(Mor after, Mor before) const {
    return table_[ix(after) * morphism_count() + ix(before)];
  }

  /// Morphisms with source x, in declaration order, identity included.
  std::span<const Mor> out(Obj x) const { return out_[ix(x)]; }

  std::vector<Mor> hom(Obj x, Obj y) const {
    std::vector<Mor> result;
    for (Mor f : out(x))
      if (tgt(f) == y) result.push_back(f);
    return result;
  }

  friend bool operator==(const FinCat& a, const FinCat& b) {
    return a.object_names_ == b.object_names_ && a.morphism_names_ == b.morphism_names_ &&
           a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.identity_ == b.identity_ &&
           a.table_ == b.table_;
  }

 private:
  friend class CategoryBuilder;

  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::unordered_map<std::string, std::uint32_t> object_index_;
  std::unordered_map<std::string, std::uint32_t> morphism_index_;
  std::vector<Obj> src_, tgt_;
  std::vector<Mor> identity_;
  std::vector<Mor> table_;
  std::vector<std::vector<Mor>> out_;
};

using CatPtr = std::shared_ptr<const FinCat>;

inline bool same_category(const CatPtr& a, const CatPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Checks the category laws on an already-indexed table.
inline Report check_category_laws(const FinCat& c) {
  Report report;
  auto nm = [&](Mor f) { return c.name(f); };
  for (Obj x : c.objects()) {
    Mor id = c.identity(x);
    if (id == kNoMor) {
      report.push_back({"identity-missing", {c.name(x)}});
    } else if (c.src(id) != x || c.tgt(id) != x) {
      report.push_back({"identity-endpoints", {c.name(x), nm(id)}});
    }
  }
  if (!report.empty()) return report;

  for (Mor f : c.morphisms()) {
    for (Mor g : c.out(c.tgt(f))) {
      Mor gf = c.compose(g, f);
      if (gf == kNoMor) {
        report.push_back({"composition-missing", {nm(g), nm(f)}});
      } else if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)) {
        report.push_back({"composition-endpoints", {nm(g), nm(f), nm(gf)}});
      }
    }
  }
  for (Mor f : c.morphisms()) {
    Mor right = c.compose(f, c.identity(c.src(f)));
    if (right != kNoMor && right != f) report.push_back({"right-identity", {nm(f)}});
    Mor left = c.compose(c.identity(c.tgt(f)), f);
    if (left != kNoMor && left != f) report.push_back({"left-identity", {nm(f)}});
  }
  for (Mor f : c.morphisms()) {
    for (Mor g : c.out(c.tgt(f))) {
      Mor gf = c.compose(g, f);
      if (gf == kNoMor) continue;
      for (Mor h : c.out(c.tgt(g))) {
        Mor hg = c.compose(h, g);
        if (hg == kNoMor) continue;
        Mor lhs = c.compose(h, gf);
        Mor rhs = c.compose(hg, f);
        if (lhs != kNoMor && rhs != kNoMor && lhs != rhs)
          report.push_back({"associativity", {nm(h), nm(g), nm(f)}});
      }
    }
  }
  return report;
}

/// Incremental construction of a FinCat. Structural problems (duplicates,
/// composites on non-composable pairs, conflicting entries) are collected
/// and reported together with the law violations.
class CategoryBuilder {
 public:
  Obj add_object(std::string name) {
    if (cat_.object_index_.count(name)) {
      issues_.push_back({"duplicate-identifier", {name}});
      return obj_at(cat_.object_index_.at(name));
    }
    Obj x = obj_at(cat_.object_names_.size());
    cat_.object_index_.emplace(name, static_cast<std::uint32_t>(ix(x)));
    cat_.object_names_.push_back(std::move(name));
    cat_.identity_.push_back(kNoMor);
    return x;
  }

  Mor add_morphism(std::string name, Obj src, Obj tgt) {
    if (cat_.morphism_index_.count(name)) {
      issues_.push_back({"duplicate-identifier", {name}});
      return mor_at(cat_.morphism_index_.at(name));
    }
    Mor f = mor_at(cat_.morphism_names_.size());
    cat_.morphism_index_.emplace(name, static_cast<std::uint32_t>(ix(f)));
    cat_.morphism_names_.push_back(std::move(name));
    cat_.src_.push_back(src);
    cat_.tgt_.push_back(tgt);
    return f;
  }

  Mor add_identity(Obj x, std::string name) {
    Mor id = add_morphism(std::move(name), x, x);
    set_identity(x, id);
    return id;
  }

  void set_identity(Obj x, Mor id) { cat_.identity_[ix(x)] = id; }

  void set_composite(Mor after, Mor before, Mor result) {
    if (cat_.src_[ix(after)] != cat_.tgt_[ix(before)]) {
      issues_.push_back({"composition-spurious",
                         {cat_.morphism_names_[ix(after)], cat_.morphism_names_[ix(before)]}});
      return;
    }
    composites_.emplace_back(after, before, result);
  }

  void add_issue(Violation v) { issues_.push_back(std::move(v)); }

  std::size_t object_count() const { return cat_.object_names_.size(); }
  std::size_t morphism_count() const { return cat_.morphism_names_.size(); }
  std::optional<Obj> find_object(std::string_view id) const {
    auto it = cat_.object_index_.find(std::string(id));
    if (it == cat_.object_index_.end()) return std::nullopt;
    return obj_at(it->second);
  }
  std::optional<Mor> find_morphism(std::string_view id) const {
    auto it = cat_.morphism_index_.find(std::string(id));
    if (it == cat_.morphism_index_.end()) return std::nullopt;
    return mor_at(it->second);
  }

  /// Finalises the table and returns it alongside every problem found.
  std::pair<FinCat, Report> finish() && {
    const std::size_t m = cat_.morphism_names_.size();
    cat_.table_.assign(m * m, kNoMor);
    Report report = std::move(issues_);
    for (auto [after, before, result] : composites_) {
      Mor& slot = cat_.table_[ix(after) * m + ix(before)];
      if (slot != kNoMor && slot != result) {
        report.push_back({"composition-conflict",
                          {cat_.morphism_names_[ix(after)], cat_.morphism_names_[ix(before)]}});
        continue;
      }
      slot = result;
    }
    cat_.out_.assign(cat_.object_names_.size(), {});
    for (std::size_t i = 0; i < m; ++i) cat_.out_[ix(cat_.src_[i])].push_back(mor_at(i));
    Report laws = check_category_laws(cat_);
    report.insert(report.end(), laws.begin(), laws.end());
    return {std::move(cat_), std::move(report)};
  }

  /// Throws ValidationError unless the result satisfies every category law.
  CatPtr build() && {
    auto [cat, report] = std::move(*this).finish();
    if (!report.empty()) throw ValidationError("invalid category", std::move(report));
    return std::make_shared<const FinCat>(std::move(cat));
  }

 private:
  FinCat cat_;
  std::vector<std::tuple<Mor, Mor, Mor>> composites_;
  Report issues_;
};

// ---------------------------------------------------------------------------
// Identifier-level description, as read from files.

struct MorphismDecl {
  std::string name, src, tgt;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

/// `after ∘ before = result`
struct CompositionDecl {
  std::string after, before, result;
  friend bool operator==(const CompositionDecl&, const CompositionDecl&) = default;
};

struct CategoryData {
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;
  std::vector<CompositionDecl> compose;
};

namespace detail {

inline std::pair<FinCat, Report> resolve_category(const CategoryData& data) {
  CategoryBuilder b;
  Report dangling;
  for (const auto& x : data.objects) b.add_object(x);
  for (const auto& m : data.morphisms) {
    auto s = b.find_object(m.src);
    auto t = b.find_object(m.tgt);
    if (!s) dangling.push_back({"dangling-reference", {m.name, m.src}});
    if (!t) dangling.push_back({"dangling-reference", {m.name, m.tgt}});
    if (s && t) b.add_morphism(m.name, *s, *t);
  }
  for (const auto& [x, id] : data.identities) {
    auto o = b.find_object(x);
    auto f = b.find_morphism(id);
    if (!o) dangling.push_back({"dangling-reference", {x}});
    if (!f) dangling.push_back({"dangling-reference", {id}});
    if (o && f) b.set_identity(*o, *f);
  }
  for (const auto& c : data.compose) {
    auto g = b.find_morphism(c.after);
    auto f = b.find_morphism(c.before);
    auto r = b.find_morphism(c.result);
    for (const auto* id : {&c.after, &c.before, &c.result})
      if (!b.find_morphism(*id)) dangling.push_back({"dangling-reference", {*id}});
    if (g && f && r) b.set_composite(*g, *f, *r);
  }
  if (!dangling.empty()) {
    // Law checks on a partially resolved table would only add noise.
    for (auto& v : dangling) b.add_issue(std::move(v));
    auto [cat, report] = std::move(b).finish();
    Report filtered;
    for (auto& v : report)
      if (v.law == "dangling-reference" || v.law == "duplicate-identifier")
        filtered.push_back(std::move(v));
    return {std::move(cat), std::move(filtered)};
  }
  return std::move(b).finish();
}

}  // namespace detail

/// Report of every violated law of a candidate category; empty iff valid.
inline Report validate_category(const CategoryData& data) {
  return detail::resolve_category(data).second;
}

inline Report validate_category(const FinCat& c) { return check_category_laws(c); }

inline CatPtr make_category(const CategoryData& data) {
  auto [cat, report] = detail::resolve_category(data);
  if (!report.empty()) throw ValidationError("invalid category", std::move(report));
  return std::make_shared<const FinCat>(std::move(cat));
}

inline CategoryData to_data(const FinCat& c) {
  CategoryData data;
  for (Obj x : c.objects()) data.objects.push_back(c.name(x));
  for (Mor f : c.morphisms())
    data.morphisms.push_back({c.name(f), c.name(c.src(f)), c.name(c.tgt(f))});
  for (Obj x : c.objects()) data.identities.emplace_back(c.name(x), c.name(c.identity(x)));
  for (Mor f : c.morphisms())
    for (Mor g : c.out(c.tgt(f)))
      data.compose.push_back({c.name(g), c.name(f), c.name(c.compose(g, f))});
  return data;
}

inline std::span<const Mor> out_set(const FinCat& c, Obj x) { return c.out(x); }

inline std::vector<std::string> out_set(const FinCat& c, std::string_view x) {
  std::vector<std::string> names;
  for (Mor f : c.out(c.object(x))) names.push_back(c.name(f));
  return names;
}

inline bool is_discrete(const FinCat& c) {
  for (Mor f : c.morphisms())
    if (!c.is_identity(f)) return false;
  return true;
}

/// No non-identity endomorphisms and no directed cycles of non-identities.
inline bool is_acyclic(const FinCat& c) {
  const std::size_t n = c.object_count();
  std::vector<std::vector<std::size_t>> succ(n);
  for (Mor f : c.morphisms()) {
    if (c.is_identity(f)) continue;
    if (c.src(f) == c.tgt(f)) return false;
    succ[ix(c.src(f))].push_back(ix(c.tgt(f)));
  }
  // Kahn's algorithm: every vertex is removed iff the graph is a DAG.
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& s : succ)
    for (auto t : s) ++indegree[t];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t removed = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (auto t : succ[v])
      if (--indegree[t] == 0) ready.push_back(t);
  }
  return removed == n;
}

// ---------------------------------------------------------------------------
// Small standard categories.

/// Discrete category on the given object names; identities are `id_<X>`.
inline CatPtr discrete_category(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& x : objects) {
    Obj o = b.add_object(x);
    Mor id = b.add_identity(o, "id_" + x);
    b.set_composite(id, id, id);
  }
  return std::move(b).build();
}

/// The terminal category 𝟙 with object `0`.
inline CatPtr terminal_category() { return discrete_category({"0"}); }

/// The interval category 𝟚: objects `0`, `1` and `u: 0 → 1`.
inline CatPtr interval_category() {
  CategoryBuilder b;
  Obj zero = b.add_object("0");
  Obj one = b.add_object("1");
  Mor id0 = b.add_identity(zero, "id_0");
  Mor id1 = b.add_identity(one, "id_1");
  Mor u = b.add_morphism("u", zero, one);
  b.set_composite(id0, id0, id0);
  b.set_composite(id1, id1, id1);
  b.set_composite(u, id0, u);
  b.set_composite(id1, u, u);
  return std::move(b).build();
}

}  // namespace lenslab
