#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/lens.hpp"

namespace lenslab {

using Json = nlohmann::ordered_json;

/// Malformed JSON, with the 1-based position of the offending byte.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error("syntax error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// Well-formed JSON that does not have the expected shape.
class FormatError : public Error {
 public:
  using Error::Error;
};

enum class Kind { category, functor, lens, span, cospan, square };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::category: return "category";
    case Kind::functor: return "functor";
    case Kind::lens: return "lens";
    case Kind::span: return "span";
    case Kind::cospan: return "cospan";
    case Kind::square: return "square";
  }
  return "?";
}

/// Named categories, functors, lenses, spans, cospans and squares. Each
/// binding records the names of the bindings it is built from: domain and
/// codomain for functors and lenses, legs for spans and cospans, span and
/// cospan for squares.
class Workspace {
 public:
  using Value = std::variant<CatPtr, Functor, Lens, LensSpan, LensCospan, LensSquare>;

  struct Binding {
    std::string name;
    Value value;
    std::vector<std::string> parts;

    Kind kind() const { return static_cast<Kind>(value.index()); }
  };

  const std::vector<Binding>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  bool contains(std::string_view name) const { return lookup(name) != nullptr; }

  const Binding& at(std::string_view name) const {
    if (const Binding* b = lookup(name)) return *b;
    throw UnknownIdentifier(std::string(name));
  }

  template <class T>
  const T& get(std::string_view name) const {
    const Binding& b = at(name);
    if (const T* v = std::get_if<T>(&b.value)) return *v;
    throw Error("'" + std::string(name) + "' is a " + to_string(b.kind()));
  }

  void bind(std::string name, Value value, std::vector<std::string> parts = {}) {
    if (contains(name)) throw Error("duplicate binding '" + name + "'");
    bindings_.push_back({std::move(name), std::move(value), std::move(parts)});
  }

  /// The first binding holding `value` (categories by identity, then by content).
  template <class T>
  std::optional<std::string> find(const T& value) const {
    if constexpr (std::is_same_v<T, CatPtr>) {
      for (const auto& b : bindings_)
        if (const CatPtr* c = std::get_if<CatPtr>(&b.value); c && *c == value) return b.name;
    }
    for (const auto& b : bindings_)
      if (const T* v = std::get_if<T>(&b.value); v && equal(*v, value)) return b.name;
    return std::nullopt;
  }

  Json meta = Json::object();

  /// Same bindings by name, regardless of order.
  friend bool operator==(const Workspace& a, const Workspace& b) {
    if (a.bindings_.size() != b.bindings_.size() || a.meta != b.meta) return false;
    for (const Binding& x : a.bindings_) {
      const Binding* found = b.lookup(x.name);
      if (!found) return false;
      const Binding& y = *found;
      if (x.parts != y.parts || x.value.index() != y.value.index()) return false;
      bool same = std::visit(
          [&](const auto& v) { return equal(v, std::get<std::decay_t<decltype(v)>>(y.value)); },
          x.value);
      if (!same) return false;
    }
    return true;
  }

 private:
  template <class T>
  static bool equal(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, CatPtr>) return same_category(a, b);
    else return a == b;
  }

  const Binding* lookup(std::string_view name) const {
    for (const auto& b : bindings_)
      if (b.name == name) return &b;
    return nullptr;
  }

  std::vector<Binding> bindings_;
};

/// Copies `name` and everything it is built from into `out`, keeping the
/// names; bindings already present are left alone.
inline void include_binding(Workspace& out, const Workspace& ws, const std::string& name) {
  if (out.contains(name)) return;
  const auto& b = ws.at(name);
  for (const auto& p : b.parts) include_binding(out, ws, p);
  out.bind(b.name, b.value, b.parts);
}

// ---------------------------------------------------------------------------
// Conversion to and from JSON values.

inline Json to_json(const FinCat& c) {
  CategoryData d = to_data(c);
  Json j;
  j["objects"] = d.objects;
  j["morphisms"] = Json::array();
  for (const auto& m : d.morphisms) j["morphisms"].push_back({m.name, m.src, m.tgt});
  j["identities"] = Json::object();
  for (const auto& [x, id] : d.identities) j["identities"][x] = id;
  j["compose"] = Json::array();
  for (const auto& c3 : d.compose) j["compose"].push_back({c3.after, c3.before, c3.result});
  return j;
}

namespace detail {

inline Json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Json j = Json::object();
  for (const auto& [k, v] : pairs) j[k] = v;
  return j;
}

}  // namespace detail

inline Json to_json(const Functor& F, const std::string& dom, const std::string& cod) {
  FunctorData d = to_data(F);
  Json j;
  j["dom"] = dom;
  j["cod"] = cod;
  j["obj"] = detail::pairs_to_json(d.obj);
  j["mor"] = detail::pairs_to_json(d.mor);
  return j;
}

inline Json to_json(const Lens& L, const std::string& dom, const std::string& cod) {
  LensData d = to_data(L);
  Json j;
  j["dom"] = dom;
  j["cod"] = cod;
  j["get_obj"] = detail::pairs_to_json(d.get.obj);
  j["get_mor"] = detail::pairs_to_json(d.get.mor);
  j["lift"] = Json::array();
  for (const auto& l : d.lift) {
    Json r;
    r["at"] = l.at;
    r["over"] = l.over;
    r["put"] = l.put;
    j["lift"].push_back(std::move(r));
  }
  return j;
}

inline Json to_json(const Workspace& ws) {
  Json doc = Json::object();
  static constexpr std::pair<Kind, const char*> kSections[] = {
      {Kind::category, "category"}, {Kind::functor, "functor"}, {Kind::lens, "lens"},
      {Kind::span, "span"},         {Kind::cospan, "cospan"},   {Kind::square, "square"}};
  for (auto [kind, section] : kSections)
    for (const auto& b : ws.bindings()) {
      if (b.kind() != kind) continue;
      Json j;
      switch (kind) {
        case Kind::category: j = to_json(*std::get<CatPtr>(b.value)); break;
        case Kind::functor: j = to_json(std::get<Functor>(b.value), b.parts[0], b.parts[1]); break;
        case Kind::lens: j = to_json(std::get<Lens>(b.value), b.parts[0], b.parts[1]); break;
        case Kind::span:
        case Kind::cospan:
          j["left"] = b.parts[0];
          j["right"] = b.parts[1];
          break;
        case Kind::square:
          j["span"] = b.parts[0];
          j["cospan"] = b.parts[1];
          break;
      }
      doc[section][b.name] = std::move(j);
    }
  if (!ws.meta.empty()) doc["meta"] = ws.meta;
  return doc;
}

namespace detail {

inline bool flat(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

inline void pretty(std::string& out, const Json& j, std::size_t indent) {
  if (!j.is_structured()) {
    out += j.dump();
    return;
  }
  const bool object = j.is_object();
  const char* open = object ? "{" : "[";
  const char* close = object ? "}" : "]";
  if (j.empty() || flat(j)) {
    out += open;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ", ";
      first = false;
      if (object) out += Json(it.key()).dump() + ": ";
      out += it->dump();
    }
    out += close;
    return;
  }
  out += open;
  out += "\n";
  std::string pad(indent + 2, ' ');
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (object) out += Json(it.key()).dump() + ": ";
    pretty(out, *it, indent + 2);
  }
  out += "\n" + std::string(indent, ' ') + close;
}

}  // namespace detail

/// Deterministic layout: containers of scalars on one line, everything
/// else expanded with two-space indentation.
inline std::string print(const Json& j) {
  std::string out;
  detail::pretty(out, j, 0);
  out += "\n";
  return out;
}

inline std::string print(const Workspace& ws) { return print(to_json(ws)); }

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw FormatError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<std::pair<std::string, std::string>> string_map(const Json& j, const char* key,
                                                                   const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_object()) throw FormatError(where + ": field '" + key + "' must be an object");
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!it->is_string())
      throw FormatError(where + ": '" + key + "." + it.key() + "' must be a string");
    out.emplace_back(it.key(), it->get<std::string>());
  }
  return out;
}

inline std::vector<std::string> string_tuple(const Json& j, std::size_t n,
                                             const std::string& where) {
  if (!j.is_array() || j.size() != n ||
      !std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_string(); }))
    throw FormatError(where + ": expected an array of " + std::to_string(n) + " strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

inline const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) throw FormatError(where + ": field '" + key + "' must be an array");
  return v;
}

inline CategoryData category_from_json(const Json& j, const std::string& where) {
  CategoryData d;
  for (const auto& x : array_field(j, "objects", where)) {
    if (!x.is_string()) throw FormatError(where + ": objects must be strings");
    d.objects.push_back(x.get<std::string>());
  }
  for (const auto& m : array_field(j, "morphisms", where)) {
    auto t = string_tuple(m, 3, where + ": morphisms");
    d.morphisms.push_back({t[0], t[1], t[2]});
  }
  d.identities = string_map(j, "identities", where);
  for (const auto& c : array_field(j, "compose", where)) {
    auto t = string_tuple(c, 3, where + ": compose");
    d.compose.push_back({t[0], t[1], t[2]});
  }
  return d;
}

inline void throw_if_invalid(const Report& report, const std::string& where) {
  if (!report.empty()) throw ValidationError(where, report);
}

inline void position(std::string_view text, std::size_t byte, std::size_t& line,
                     std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

}  // namespace detail

/// Reads a document into `ws`, validating every binding as it is loaded.
/// Throws SyntaxError, FormatError, UnknownIdentifier or ValidationError.
inline void load(Workspace& ws, std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
    return;
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 0, column = 0;
    detail::position(text, e.byte, line, column);
    std::string what = e.what();
    if (auto p = what.find(": "); p != std::string::npos) what = what.substr(p + 2);
    throw SyntaxError(what, line, column);
  }
  if (!doc.is_object()) throw FormatError("document must be a JSON object");
  static constexpr const char* kSections[] = {"category", "functor", "lens", "span",
                                              "cospan",   "square",  "meta"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find_if(std::begin(kSections), std::end(kSections),
                     [&](const char* s) { return it.key() == s; }) == std::end(kSections))
      throw FormatError("unknown section '" + it.key() + "'");
    if (!it->is_object()) throw FormatError("section '" + it.key() + "' must be an object");
  }
  auto section = [&](const char* name) -> const Json& {
    static const Json empty = Json::object();
    return doc.contains(name) ? doc.at(name) : empty;
  };
  auto check_name = [&](const std::string& name, const std::string& where) {
    if (ws.contains(name)) throw ValidationError(where, {{"duplicate-binding", {name}}});
  };
  auto category_ref = [&](const std::string& name, const std::string& where) {
    if (!ws.contains(name) || ws.at(name).kind() != Kind::category)
      throw ValidationError(where, {{"dangling-reference", {name}}});
    return ws.get<CatPtr>(name);
  };
  auto binding_ref = [&](const std::string& name, Kind kind, const std::string& where) {
    if (!ws.contains(name) || ws.at(name).kind() != kind)
      throw ValidationError(where, {{"dangling-reference", {name}}});
  };

  const Json& cats = section("category");
  for (auto it = cats.begin(); it != cats.end(); ++it) {
    std::string where = "category '" + it.key() + "'";
    check_name(it.key(), where);
    auto [cat, report] = detail::resolve_category(detail::category_from_json(*it, where));
    detail::throw_if_invalid(report, where);
    ws.bind(it.key(), std::make_shared<const FinCat>(std::move(cat)));
  }
  const Json& functors = section("functor");
  for (auto it = functors.begin(); it != functors.end(); ++it) {
    std::string where = "functor '" + it.key() + "'";
    check_name(it.key(), where);
    std::string dom = detail::string_field(*it, "dom", where);
    std::string cod = detail::string_field(*it, "cod", where);
    FunctorData d{detail::string_map(*it, "obj", where), detail::string_map(*it, "mor", where)};
    auto [F, report] = resolve_functor(d, category_ref(dom, where), category_ref(cod, where));
    detail::throw_if_invalid(report, where);
    ws.bind(it.key(), std::move(F), {dom, cod});
  }
  const Json& lenses = section("lens");
  for (auto it = lenses.begin(); it != lenses.end(); ++it) {
    std::string where = "lens '" + it.key() + "'";
    check_name(it.key(), where);
    std::string dom = detail::string_field(*it, "dom", where);
    std::string cod = detail::string_field(*it, "cod", where);
    LensData d{{detail::string_map(*it, "get_obj", where), detail::string_map(*it, "get_mor", where)},
               {}};
    for (const auto& l : detail::array_field(*it, "lift", where)) {
      std::string lw = where + ": lift";
      d.lift.push_back({detail::string_field(l, "at", lw), detail::string_field(l, "over", lw),
                        detail::string_field(l, "put", lw)});
    }
    auto [L, report] = resolve_lens(d, category_ref(dom, where), category_ref(cod, where));
    detail::throw_if_invalid(report, where);
    ws.bind(it.key(), std::move(L), {dom, cod});
  }
  for (Kind kind : {Kind::span, Kind::cospan}) {
    const Json& s = section(to_string(kind));
    for (auto it = s.begin(); it != s.end(); ++it) {
      std::string where = std::string(to_string(kind)) + " '" + it.key() + "'";
      check_name(it.key(), where);
      std::string left = detail::string_field(*it, "left", where);
      std::string right = detail::string_field(*it, "right", where);
      binding_ref(left, Kind::lens, where);
      binding_ref(right, Kind::lens, where);
      const Lens& l = ws.get<Lens>(left);
      const Lens& r = ws.get<Lens>(right);
      if (kind == Kind::span) {
        if (!same_category(l.dom(), r.dom()))
          throw ValidationError(where, {{"boundary-mismatch", {left, right}}});
        ws.bind(it.key(), LensSpan{l, r}, {left, right});
      } else {
        if (!same_category(l.cod(), r.cod()))
          throw ValidationError(where, {{"boundary-mismatch", {left, right}}});
        ws.bind(it.key(), LensCospan{l, r}, {left, right});
      }
    }
  }
  const Json& squares = section("square");
  for (auto it = squares.begin(); it != squares.end(); ++it) {
    std::string where = "square '" + it.key() + "'";
    check_name(it.key(), where);
    std::string span = detail::string_field(*it, "span", where);
    std::string cospan = detail::string_field(*it, "cospan", where);
    binding_ref(span, Kind::span, where);
    binding_ref(cospan, Kind::cospan, where);
    LensSquare sq{ws.get<LensSpan>(span), ws.get<LensCospan>(cospan)};
    try {
      check_boundaries(sq);
    } catch (const BoundaryMismatch&) {
      throw ValidationError(where, {{"boundary-mismatch", {span, cospan}}});
    }
    ws.bind(it.key(), std::move(sq), {span, cospan});
  }
  if (doc.contains("meta")) ws.meta = doc.at("meta");
}

inline Workspace parse(std::string_view text) {
  Workspace ws;
  load(ws, text);
  return ws;
}

}  // namespace lenslab
