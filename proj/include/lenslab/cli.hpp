#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lenslab/comparison.hpp"
#include "lenslab/diagram.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/format.hpp"
#include "lenslab/free_product.hpp"
#include "lenslab/gen.hpp"
#include "lenslab/lens.hpp"
#include "lenslab/opfibration.hpp"
#include "lenslab/pullback.hpp"
#include "lenslab/spans.hpp"
#include "lenslab/squares.hpp"

namespace lenslab {

/// Exit status, human-readable text and a machine-readable record of one
/// command. Constructions and generators also return the produced document.
struct Outcome {
  int exit_code = 0;
  std::string text;
  Json record = Json::object();
  std::optional<Workspace> document;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Json report_json(const Report& report) {
  Json j = Json::array();
  for (const auto& v : report) {
    Json r;
    r["law"] = v.law;
    r["witnesses"] = v.witnesses;
    j.push_back(std::move(r));
  }
  return j;
}

inline Outcome verdict(const std::string& property, const std::string& name, const Report& report) {
  Outcome out;
  out.exit_code = report.empty() ? 0 : 1;
  out.record["property"] = property;
  out.record["subject"] = name;
  out.record["holds"] = report.empty();
  out.record["violations"] = report_json(report);
  out.text = property + " " + name + ": " + (report.empty() ? "holds" : "fails") + "\n";
  for (const auto& v : report) {
    std::ostringstream os;
    os << "  " << v << "\n";
    out.text += os.str();
  }
  return out;
}

// Spans may be named directly or through a square.
inline LensSpan span_arg(const Workspace& ws, const std::string& name) {
  if (ws.at(name).kind() == Kind::square) return ws.get<LensSquare>(name).span;
  return ws.get<LensSpan>(name);
}

inline Report getput_report(const Lens& L) {
  Report report;
  const FinCat& A = *L.dom();
  for (Obj x : A.objects())
    for (Mor a : A.out(x))
      if (L.lift(x, L(a)) != a) report.push_back({"get-put", {A.name(x), A.name(a)}});
  return report;
}

inline Report unique_lift_report(const Functor& F) {
  Report report;
  const FinCat& A = *F.dom;
  const FinCat& B = *F.cod;
  for (Obj x : A.objects())
    for (Mor b : B.out(F(x))) {
      std::size_t n = 0;
      for (Mor a : A.out(x))
        if (F(a) == b) ++n;
      if (n != 1) report.push_back({"unique-lift", {A.name(x), B.name(b), std::to_string(n)}});
    }
  return report;
}

inline Report opcartesian_report(const Lens& L) {
  Report report;
  const FinCat& A = *L.dom();
  const FinCat& B = *L.cod();
  for (Obj x : A.objects())
    for (Mor b : B.out(L(x)))
      if (!is_opcartesian(L.get, L.lift(x, b)))
        report.push_back({"opcartesian", {A.name(x), B.name(b), A.name(L.lift(x, b))}});
  return report;
}

inline Outcome check(const Workspace& ws, const std::string& property, const std::string& name) {
  if (property == "lens") return verdict(property, name, validate_lens(ws.get<Lens>(name)));
  if (property == "cofunctor")
    return verdict(property, name, validate_cofunctor(ws.get<Lens>(name).put));
  if (property == "dopf") {
    if (ws.at(name).kind() == Kind::functor)
      return verdict(property, name, unique_lift_report(ws.get<Functor>(name)));
    return verdict(property, name, getput_report(ws.get<Lens>(name)));
  }
  if (property == "sopf") return verdict(property, name, opcartesian_report(ws.get<Lens>(name)));
  if (property == "commuting")
    return verdict(property, name, commutation_report(ws.get<LensSquare>(name)));
  if (property == "compatible")
    return verdict(property, name, compatibility_report(ws.get<LensSquare>(name)));
  if (property == "sync-minimal") {
    LensSpan span = span_arg(ws, name);
    Report report;
    for (Mor f : non_lift_composites(span))
      report.push_back({"non-lift-composite", {span.apex()->name(f)}});
    return verdict(property, name, report);
  }
  if (property == "independent")
    return verdict(property, name, independence_report(span_arg(ws, name)));
  if (property == "split-independent")
    return verdict(property, name, split_independence_report(ws.get<LensSquare>(name)));
  throw UsageError("unknown property '" + property + "'");
}

inline std::string ensure_category(Workspace& out, const CatPtr& c, const std::string& name) {
  if (auto n = out.find(c)) return *n;
  if (name.empty()) throw Error("no binding for a category the result refers to");
  out.bind(name, c);
  return name;
}

inline std::string ensure_lens(Workspace& out, const Lens& L, const std::string& name,
                               const std::string& dom_name, const std::string& cod_name) {
  if (auto n = out.find(L)) return *n;
  std::string dom = ensure_category(out, L.dom(), dom_name);
  std::string cod = ensure_category(out, L.cod(), cod_name);
  out.bind(name, L, {dom, cod});
  return name;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : sep) + p;
  return s;
}

inline Outcome document_outcome(Workspace doc, std::vector<std::string> produced) {
  Outcome out;
  out.text = print(doc);
  out.record["produced"] = produced;
  out.document = std::move(doc);
  return out;
}

inline Outcome construct(const Workspace& ws, const std::string& what,
                         const std::vector<std::string>& args) {
  auto arity = [&](std::size_t n) {
    if (args.size() != n)
      throw UsageError("construct " + what + " expects " + std::to_string(n) + " argument(s)");
  };
  Workspace doc;
  const std::string base = what == "free-product" ? join(args, "□") : what + "(" + join(args, ",") + ")";

  if (what == "cat-pullback") {
    Functor F, G;
    if (args.size() == 1) {
      const LensCospan& c = ws.get<LensCospan>(args[0]);
      include_binding(doc, ws, args[0]);
      F = c.left.get;
      G = c.right.get;
    } else {
      arity(2);
      for (const auto& a : args) include_binding(doc, ws, a);
      auto as_functor = [&](const std::string& n) {
        return ws.at(n).kind() == Kind::lens ? ws.get<Lens>(n).get : ws.get<Functor>(n);
      };
      F = as_functor(args[0]);
      G = as_functor(args[1]);
    }
    CatPullback pb = cat_pullback(F, G);
    std::string apex = ensure_category(doc, pb.apex, base);
    std::string a = ensure_category(doc, F.dom, base + ".A");
    std::string b = ensure_category(doc, G.dom, base + ".B");
    doc.bind(base + ".left", pb.left, {apex, a});
    doc.bind(base + ".right", pb.right, {apex, b});
    return document_outcome(std::move(doc), {apex, base + ".left", base + ".right"});
  }
  if (what == "proxy-pullback") {
    arity(1);
    const LensCospan& c = ws.get<LensCospan>(args[0]);
    include_binding(doc, ws, args[0]);
    LensSquare sq = proxy_pullback(c);
    std::string apex = ensure_category(doc, sq.span.apex(), base);
    std::string left = ensure_lens(doc, sq.span.left, base + ".left", apex, "");
    std::string right = ensure_lens(doc, sq.span.right, base + ".right", apex, "");
    doc.bind(base + ".span", sq.span, {left, right});
    doc.bind(base + ".square", sq, {base + ".span", args[0]});
    return document_outcome(std::move(doc), {apex, left, right, base + ".span", base + ".square"});
  }
  if (what == "sync-core") {
    arity(1);
    LensSpan span = span_arg(ws, args[0]);
    const auto& b = ws.at(args[0]);
    include_binding(doc, ws, b.kind() == Kind::square ? b.parts[0] : args[0]);
    SyncCore core = sync_minimal_core(span);
    std::string apex = ensure_category(doc, core.core.apex(), base);
    std::string left = ensure_lens(doc, core.core.left, base + ".left", apex, "");
    std::string right = ensure_lens(doc, core.core.right, base + ".right", apex, "");
    doc.bind(base + ".span", core.core, {left, right});
    std::string x = ensure_category(doc, span.apex(), base + ".X");
    doc.bind(base + ".inclusion", core.inclusion, {apex, x});
    return document_outcome(std::move(doc),
                            {apex, left, right, base + ".span", base + ".inclusion"});
  }
  if (what == "free-product") {
    arity(2);
    for (const auto& a : args) include_binding(doc, ws, a);
    FreeProduct fp =
        free_product_with_projections(ws.get<CatPtr>(args[0]), ws.get<CatPtr>(args[1]));
    std::string apex = ensure_category(doc, fp.apex, base);
    std::string p1 = ensure_lens(doc, fp.projections.left, base + ".P1", apex, args[0]);
    std::string p2 = ensure_lens(doc, fp.projections.right, base + ".P2", apex, args[1]);
    doc.bind(base + ".span", fp.projections, {p1, p2});
    return document_outcome(std::move(doc), {apex, p1, p2, base + ".span"});
  }
  if (what == "comparison-lens") {
    arity(2);
    const LensSpan& candidate = ws.get<LensSpan>(args[0]);
    const LensSquare& sq = ws.get<LensSquare>(args[1]);
    include_binding(doc, ws, args[0]);
    include_binding(doc, ws, args[1]);
    ComparisonResult result = comparison_lens(candidate, sq);
    std::string name = ensure_lens(doc, *result.lens, base, "", "");
    return document_outcome(std::move(doc), {name});
  }
  throw UsageError("unknown construction '" + what + "'");
}

inline Outcome verify(const Workspace& ws, const std::vector<std::string>& args) {
  if (args.size() < 2 || args[0] != "universal-property")
    throw UsageError("usage: verify universal-property <square> <candidates...>");
  const LensSquare& sq = ws.get<LensSquare>(args[1]);
  std::vector<LensSpan> candidates;
  for (std::size_t i = 2; i < args.size(); ++i) candidates.push_back(span_arg(ws, args[i]));
  auto verdicts = verify_universal_property(sq, candidates);
  Outcome out;
  out.record["property"] = "universal-property";
  out.record["subject"] = args[1];
  out.record["candidates"] = Json::array();
  bool all_unique = true;
  out.text = "universal-property " + args[1] + ":\n";
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    Json r;
    r["candidate"] = args[i + 2];
    r["verdict"] = to_string(verdicts[i].kind);
    r["structures"] = verdicts[i].count;
    out.record["candidates"].push_back(std::move(r));
    all_unique = all_unique && verdicts[i].kind == Universality::unique;
    out.text += "  " + args[i + 2] + ": " + to_string(verdicts[i].kind) + " (" +
                std::to_string(verdicts[i].count) + " lens structure(s))\n";
  }
  out.record["holds"] = all_unique;
  out.exit_code = all_unique ? 0 : 1;
  return out;
}

inline std::uint64_t parse_number(const std::string& flag, const std::string& value) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size())
    throw UsageError(flag + " expects a non-negative integer, got '" + value + "'");
  return v;
}

inline Outcome generate(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("usage: gen {category|lens|cospan} --seed N ...");
  GenConfig cfg;
  bool seeded = false;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& flag = args[i];
    auto value = [&]() -> const std::string& {
      if (i + 1 >= args.size()) throw UsageError(flag + " expects a value");
      return args[++i];
    };
    if (flag == "--seed") {
      cfg.seed = parse_number(flag, value());
      seeded = true;
    } else if (flag == "--max-objects") {
      cfg.max_objects = parse_number(flag, value());
      if (cfg.max_objects == 0) throw UsageError("--max-objects must be positive");
    } else if (flag == "--max-extra-morphisms") {
      cfg.max_extra_morphisms = parse_number(flag, value());
    } else if (flag == "--acyclic") {
      cfg.require_acyclic = true;
    } else if (flag == "--dopf") {
      cfg.require_dopf_leg = true;
    } else if (flag == "--sopf") {
      cfg.require_split_opfib_leg = true;
    } else {
      throw UsageError("unknown flag '" + flag + "'");
    }
  }
  if (!seeded) throw UsageError("gen requires --seed");

  Workspace doc;
  std::vector<std::string> produced;
  if (args[0] == "category") {
    doc.bind("X", gen_category(cfg));
    produced = {"X"};
  } else if (args[0] == "lens") {
    Lens L = gen_lens(cfg);
    std::string cod = ensure_category(doc, L.cod(), "cod");
    std::string dom = ensure_category(doc, L.dom(), "dom");
    doc.bind("L", L, {dom, cod});
    produced = {"L"};
  } else if (args[0] == "cospan") {
    LensCospan c = gen_cospan(cfg);
    ensure_category(doc, c.left.cod(), "C");
    std::string f = ensure_lens(doc, c.left, "F", "A", "C");
    std::string g = ensure_lens(doc, c.right, "G", "B", "C");
    doc.bind("cospan", c, {f, g});
    produced = {"cospan"};
  } else {
    throw UsageError("unknown generator '" + args[0] + "'");
  }
  doc.meta["generator"] = Rng::kAlgorithm;
  doc.meta["seed"] = cfg.seed;
  doc.meta["max_objects"] = cfg.max_objects;
  doc.meta["max_extra_morphisms"] = cfg.max_extra_morphisms;
  return document_outcome(std::move(doc), produced);
}

inline Outcome dispatch(const Workspace& ws, const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("no command given");
  const std::string& cmd = args[0];
  std::vector<std::string> rest(args.begin() + 1, args.end());
  if (cmd == "validate") {
    if (rest.size() != 1) throw UsageError("usage: validate <name>");
    const auto& b = ws.at(rest[0]);
    Report report;
    switch (b.kind()) {
      case Kind::category: report = validate_category(*std::get<CatPtr>(b.value)); break;
      case Kind::functor: report = validate_functor(std::get<Functor>(b.value)); break;
      case Kind::lens: report = validate_lens(std::get<Lens>(b.value)); break;
      case Kind::span:
      case Kind::cospan:
        for (const auto& p : b.parts) {
          Report r = validate_lens(ws.get<Lens>(p));
          report.insert(report.end(), r.begin(), r.end());
        }
        break;
      case Kind::square: break;  // boundaries and parts were checked at load
    }
    return verdict("valid", rest[0], report);
  }
  if (cmd == "check") {
    if (rest.size() != 2) throw UsageError("usage: check <property> <name>");
    return check(ws, rest[0], rest[1]);
  }
  if (cmd == "construct") {
    if (rest.empty()) throw UsageError("usage: construct <construction> <names...>");
    return construct(ws, rest[0], std::vector<std::string>(rest.begin() + 1, rest.end()));
  }
  if (cmd == "verify") return verify(ws, rest);
  if (cmd == "gen") return generate(rest);
  throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace detail

/// Runs one command. Exit 0: the property holds or the construction
/// succeeded; 1: the property fails (with witnesses); 2: usage, lookup or
/// precondition errors.
inline Outcome execute(const Workspace& ws, const std::vector<std::string>& args) {
  Outcome out;
  try {
    out = detail::dispatch(ws, args);
  } catch (const ValidationError& e) {
    out = Outcome{2, std::string("error: ") + e.what(), Json::object(), std::nullopt};
    out.record["violations"] = detail::report_json(e.report());
  } catch (const PreconditionViolated& e) {
    out = Outcome{2, std::string("error: ") + e.what() + "\n", Json::object(), std::nullopt};
    out.record["failed_preconditions"] = e.failed();
  } catch (const Error& e) {
    out = Outcome{2, std::string("error: ") + e.what() + "\n", Json::object(), std::nullopt};
  }
  Json record;
  record["command"] = detail::join(args, " ");
  record["exit"] = out.exit_code;
  for (auto it = out.record.begin(); it != out.record.end(); ++it) record[it.key()] = *it;
  if (out.exit_code == 2) record["error"] = out.text;
  out.record = std::move(record);
  return out;
}

}  // namespace lenslab
