#pragma once

// JSON input formats and canonical JSON output.
//
//   poset    {"elements": [...], "hasse": [["x", "y"], ...]}   x covered by y
//   program  {"atoms": [...], "rules": [{"head": "p", "pos": [...], "neg": [...]}]}
//   AEL      {"atoms": [...], "sentences": [formula]}
//            formula: "p" | {"atom": "p"} | {"not": f} | {"and": [f...]} |
//                     {"or": [f...]} | {"iff": [f, f]} | {"K": f}
//   wADF     {"arguments": [...], "values": poset, "acceptance": {"arg": expr}}
//            expr: {"const": v} | {"parent": a} | {"glb": [e...]} | {"lub": [e...]} |
//                  {"table": {"parents": [a...], "rows": [{"in": [v...], "out": v}]}}

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aft/encoders/autoepistemic.hpp"
#include "aft/encoders/logic_program.hpp"
#include "aft/encoders/wadf.hpp"
#include "aft/error.hpp"
#include "aft/flower.hpp"
#include "aft/interval.hpp"
#include "aft/poset.hpp"

namespace aft::io {

using nlohmann::json;

enum class InputKind { poset, program, ael, wadf };

inline const char* to_string(InputKind k) {
  switch (k) {
    case InputKind::poset:
      return "poset";
    case InputKind::program:
      return "program";
    case InputKind::ael:
      return "ael";
    case InputKind::wadf:
      return "wadf";
  }
  return "?";
}

/// Parses text, reporting syntax errors with line and column.
inline json parse_text(const std::string& text, const std::string& origin = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n');
    const auto nl = text.rfind('\n', at == 0 ? 0 : at - 1);
    const auto col = at - (nl == std::string::npos || at == 0 ? 0 : nl + 1) + 1;
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_text(text, path);
}

inline InputKind detect_kind(const json& j) {
  if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
  if (j.contains("rules")) return InputKind::program;
  if (j.contains("sentences")) return InputKind::ael;
  if (j.contains("arguments")) return InputKind::wadf;
  if (j.contains("elements")) return InputKind::poset;
  throw ParseError("cannot tell the input kind: expected one of the keys elements, rules, sentences, arguments");
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::size_t index_in(const std::vector<std::string>& names, const std::string& name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ParseError(std::string("unknown ") + what + " \"" + name + "\"");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace detail

inline FinitePoset poset_from_json(const json& j, std::size_t max_elements = kDefaultMaxElements) {
  auto ids = detail::string_list(detail::field(j, "elements"), "elements");
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("hasse")) {
    const auto& h = j.at("hasse");
    if (!h.is_array()) throw ParseError("hasse must be an array of pairs");
    for (const auto& e : h) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("hasse entries must be [lower, upper] pairs of identifiers");
      covers.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return FinitePoset::from_hasse(std::move(ids), covers, max_elements);
}

inline NormalLogicProgram program_from_json(const json& j) {
  auto atoms = detail::string_list(detail::field(j, "atoms"), "atoms");
  const auto& rs = detail::field(j, "rules");
  if (!rs.is_array()) throw ParseError("rules must be an array");
  std::vector<Rule> rules;
  for (const auto& r : rs) {
    const auto& h = detail::field(r, "head");
    if (!h.is_string()) throw ParseError("rule head must be an atom name");
    Rule rule;
    rule.head = detail::index_in(atoms, h.get<std::string>(), "atom");
    auto body = [&](const char* key, std::vector<std::size_t>& out) {
      if (!r.contains(key)) return;
      for (const auto& a : detail::string_list(r.at(key), key)) out.push_back(detail::index_in(atoms, a, "atom"));
    };
    body("pos", rule.pos);
    body("neg", rule.neg);
    rules.push_back(std::move(rule));
  }
  return NormalLogicProgram(std::move(atoms), std::move(rules));
}

inline Formula formula_from_json(const json& j, const std::vector<std::string>& atoms) {
  if (j.is_string()) return Formula::make_atom(detail::index_in(atoms, j.get<std::string>(), "atom"));
  if (!j.is_object() || j.size() != 1) throw ParseError("a formula is an atom name or a one-key object");
  const auto& [key, arg] = *j.items().begin();
  auto list = [&] {
    if (!arg.is_array()) throw ParseError("\"" + key + "\" expects an array of formulas");
    std::vector<Formula> fs;
    for (const auto& x : arg) fs.push_back(formula_from_json(x, atoms));
    return fs;
  };
  if (key == "atom") return formula_from_json(arg, atoms);
  if (key == "not") return Formula::make_not(formula_from_json(arg, atoms));
  if (key == "and") return Formula::make_and(list());
  if (key == "or") return Formula::make_or(list());
  if (key == "K") return Formula::make_k(formula_from_json(arg, atoms));
  if (key == "iff") {
    auto fs = list();
    if (fs.size() != 2) throw ParseError("\"iff\" expects exactly two formulas");
    return Formula::make_iff(std::move(fs[0]), std::move(fs[1]));
  }
  throw ParseError("unknown formula node \"" + key + "\"");
}

inline AelTheory ael_from_json(const json& j) {
  AelTheory t;
  t.atoms = detail::string_list(detail::field(j, "atoms"), "atoms");
  const auto& ss = detail::field(j, "sentences");
  if (!ss.is_array()) throw ParseError("sentences must be an array");
  for (const auto& s : ss) t.sentences.push_back(formula_from_json(s, t.atoms));
  return t;
}

inline AcceptanceExpr expr_from_json(const json& j, const std::vector<std::string>& args, const FinitePoset& values) {
  if (!j.is_object() || j.size() != 1) throw ParseError("an acceptance expression is a one-key object");
  const auto& [key, arg] = *j.items().begin();
  auto value = [&](const json& v) {
    if (!v.is_string()) throw ParseError("acceptance values must be strings");
    if (!values.contains(v.get<std::string>())) throw ParseError("unknown value \"" + v.get<std::string>() + "\"");
    return values.index_of(v.get<std::string>());
  };
  auto list = [&] {
    if (!arg.is_array()) throw ParseError("\"" + key + "\" expects an array of expressions");
    std::vector<AcceptanceExpr> xs;
    for (const auto& x : arg) xs.push_back(expr_from_json(x, args, values));
    return xs;
  };
  if (key == "const") return AcceptanceExpr::constant(value(arg));
  if (key == "parent") {
    if (!arg.is_string()) throw ParseError("\"parent\" expects an argument name");
    return AcceptanceExpr::parent(detail::index_in(args, arg.get<std::string>(), "argument"));
  }
  if (key == "glb") return AcceptanceExpr::meet(list());
  if (key == "lub") return AcceptanceExpr::join(list());
  if (key == "table") {
    std::vector<std::size_t> parents;
    for (const auto& a : detail::string_list(detail::field(arg, "parents"), "parents"))
      parents.push_back(detail::index_in(args, a, "argument"));
    std::map<std::vector<Element>, Element> rows;
    const auto& rs = detail::field(arg, "rows");
    if (!rs.is_array()) throw ParseError("table rows must be an array");
    for (const auto& r : rs) {
      std::vector<Element> in;
      const auto& ins = detail::field(r, "in");
      if (!ins.is_array()) throw ParseError("table row \"in\" must be an array");
      for (const auto& v : ins) in.push_back(value(v));
      if (!rows.emplace(std::move(in), value(detail::field(r, "out"))).second)
        throw ParseError("duplicate table row");
    }
    return AcceptanceExpr::lookup(std::move(parents), std::move(rows));
  }
  throw ParseError("unknown expression node \"" + key + "\"");
}

inline Wadf wadf_from_json(const json& j) {
  auto args = detail::string_list(detail::field(j, "arguments"), "arguments");
  auto values = std::make_shared<const FinitePoset>(poset_from_json(detail::field(j, "values")));
  const auto& acc = detail::field(j, "acceptance");
  if (!acc.is_object()) throw ParseError("acceptance must map each argument to an expression");
  std::vector<AcceptanceExpr> exprs;
  for (const auto& a : args) {
    if (!acc.contains(a)) throw ParseError("argument \"" + a + "\" has no acceptance condition");
    exprs.push_back(expr_from_json(acc.at(a), args, *values));
  }
  for (const auto& [k, v] : acc.items()) detail::index_in(args, k, "argument");
  return Wadf(std::move(args), std::move(values), std::move(exprs));
}

/// Sorted identifiers of a set of elements.
inline json ids_json(const FinitePoset& p, const ElementSet& s) {
  auto ids = p.sorted_ids(s);
  return json(ids);
}

inline json ids_json(const FinitePoset& p, const std::vector<Element>& xs) {
  std::vector<std::string> ids;
  for (auto x : xs) ids.push_back(p.id(x));
  std::sort(ids.begin(), ids.end());
  return json(ids);
}

/// Members are listed in full up to this many.
inline constexpr std::size_t kMaxListedMembers = 64;

inline json approximant_json(const IntervalFramework& fw, const Interval& x) {
  const auto& C = fw.exact();
  json j{{"alb", C.id(x.low)}, {"aub", C.id(x.high)}, {"exact", fw.is_exact(x)}};
  const auto m = fw.members(x);
  j["size"] = m.count();
  if (m.count() <= kMaxListedMembers) j["members"] = ids_json(C, m);
  return j;
}

inline json approximant_json(const FlowerFramework& fw, const Flower& x) {
  const auto& C = fw.exact();
  json j{{"alb", C.id(x.alb)}, {"aub", ids_json(C, x.aub.elements)}, {"exact", fw.is_exact(x)}};
  j["size"] = x.members.count();
  if (x.members.count() <= kMaxListedMembers) j["members"] = ids_json(C, x.members);
  return j;
}

inline json classification_json(const PosetClassification& c) {
  return json{{"has_least", c.has_least},
              {"is_cpo", c.is_cpo},
              {"is_bounded_complete", c.is_bounded_complete},
              {"is_complete_lattice", c.is_complete_lattice}};
}

}  // namespace aft::io
