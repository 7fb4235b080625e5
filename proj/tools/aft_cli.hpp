#pragma once

// Commands behind the `aft` executable. Each returns the process exit code
// and writes its output to the given stream, so tests can drive them
// without spawning processes.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aft/aft.hpp"

namespace aft::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kPreconditionError = 3 };

enum class Format { json, text };

struct RunConfig {
  std::string input;
  std::string space = "flower";
  std::string approximator = "ultimate";
  SemanticsSelection semantics{};
  std::uint64_t seed = 0;
  std::size_t max_elements = kDefaultMaxElements;
  Format format = Format::json;
};

inline SemanticsSelection parse_semantics(const std::string& list) {
  SemanticsSelection s{false, false, false, false};
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "kk") s.kk = true;
    else if (item == "wf") s.wf = true;
    else if (item == "supported") s.supported = true;
    else if (item == "stable") s.stable = true;
    else if (item == "all") s = SemanticsSelection{};
    else throw ParseError("unknown semantics \"" + item + "\" (expected kk, wf, supported, stable or all)");
  }
  return s;
}

/// Solved semantics in a form independent of the approximation space.
/// Approximants are compared through their member sets, which order both
/// spaces by reverse inclusion.
struct Outcome {
  std::shared_ptr<const FinitePoset> exact;
  json doc;
  std::optional<ElementSet> kk, wf;
  std::optional<std::vector<Element>> supported, stable;
};

struct Problem {
  io::InputKind kind;
  ExactOperator op;
  std::optional<NormalLogicProgram> program;
};

inline Problem load_problem(const json& j, std::size_t max_elements) {
  switch (io::detect_kind(j)) {
    case io::InputKind::program: {
      auto p = io::program_from_json(j);
      auto op = lp_operator(p, kDefaultMaxAtoms, max_elements);
      return {io::InputKind::program, std::move(op), std::move(p)};
    }
    case io::InputKind::ael:
      return {io::InputKind::ael, ael_operator(io::ael_from_json(j), max_elements), std::nullopt};
    case io::InputKind::wadf:
      return {io::InputKind::wadf, wadf_operator(io::wadf_from_json(j), max_elements), std::nullopt};
    case io::InputKind::poset:
      break;
  }
  throw ParseError("solve needs a program, an AEL theory or a wADF, not a bare poset");
}

template <ApproximationFramework F>
Outcome summarize(const Approximator<F>& a, const SemanticsSelection& sel) {
  const F& fw = a.space();
  const auto& C = fw.exact();
  Outcome out;
  out.exact = fw.exact_ptr();
  const auto r = compute_semantics(a, sel);
  if (r.kk) {
    out.kk = fw.members(*r.kk);
    out.doc["kk"] = io::approximant_json(fw, *r.kk);
  }
  if (r.wf) {
    out.wf = fw.members(*r.wf);
    out.doc["wf"] = io::approximant_json(fw, *r.wf);
  }
  if (r.supported) {
    out.supported = *r.supported;
    out.doc["supported"] = io::ids_json(C, *r.supported);
  }
  if (r.stable) {
    out.stable = *r.stable;
    out.doc["stable"] = io::ids_json(C, *r.stable);
  }
  return out;
}

inline Outcome solve_problem(const Problem& pb, const std::string& space, const std::string& approximator,
                             const SemanticsSelection& sel) {
  if (space != "interval" && space != "flower")
    throw ParseError("unknown space \"" + space + "\" (expected interval or flower)");
  if (approximator != "ultimate" && approximator != "fitting")
    throw ParseError("unknown approximator \"" + approximator + "\" (expected ultimate or fitting)");
  if (approximator == "fitting" && (!pb.program || space != "interval"))
    throw PreconditionError("the fitting approximator needs a logic program and --space interval");

  Outcome out;
  if (space == "interval") {
    std::optional<IntervalFramework> fw;
    try {
      fw.emplace(pb.op.domain_ptr());
    } catch (const PreconditionError& e) {
      throw PreconditionError(std::string(e.what()) + "; use --space flower");
    }
    out = approximator == "fitting" ? summarize(fitting_approximator(*pb.program, *fw), sel)
                                    : summarize(ultimate_approximator(*fw, pb.op), sel);
  } else {
    out = summarize(ultimate_approximator(FlowerFramework(pb.op.domain_ptr()), pb.op), sel);
  }
  out.doc["input"] = io::to_string(pb.kind);
  out.doc["space"] = space;
  out.doc["approximator"] = approximator;
  out.doc["exact_size"] = pb.op.domain().size();
  return out;
}

inline void write_json(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

inline std::string approximant_text(const json& a) {
  std::string aub;
  if (a["aub"].is_string()) {
    aub = a["aub"].get<std::string>();
  } else {
    for (const auto& id : a["aub"]) aub += (aub.empty() ? "" : ",") + id.get<std::string>();
    aub = "{" + aub + "}";
  }
  std::string s = "alb " + a["alb"].get<std::string>() + ", aub " + aub;
  if (a.value("exact", false)) s += " (exact)";
  return s;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& os) {
  const auto pb = load_problem(io::read_file(cfg.input), cfg.max_elements);
  const auto out = solve_problem(pb, cfg.space, cfg.approximator, cfg.semantics);
  if (cfg.format == Format::json) {
    write_json(os, out.doc);
    return kOk;
  }
  os << out.doc["input"].get<std::string>() << ", " << cfg.space << " space, " << cfg.approximator << " approximator\n";
  for (const char* k : {"kk", "wf"})
    if (out.doc.contains(k)) os << k << ": " << approximant_text(out.doc[k]) << "\n";
  for (const char* k : {"supported", "stable"})
    if (out.doc.contains(k)) os << k << ": " << out.doc[k].dump() << "\n";
  return kOk;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& os) {
  const auto j = io::read_file(cfg.input);
  if (io::detect_kind(j) != io::InputKind::poset) throw ParseError("check expects a poset file");
  auto exact = std::make_shared<const FinitePoset>(io::poset_from_json(j, cfg.max_elements));
  const auto cls = classify(*exact);
  CheckLimits limits;
  limits.seed = cfg.seed;

  json doc{{"elements", exact->size()}, {"classification", io::classification_json(cls)}};
  bool all_pass = true;
  std::vector<std::string> lines;
  if (cls.is_bounded_complete) {
    FlowerFramework fw(exact);
    auto report = check_framework(fw, limits);
    report.append(verify_flower_properties(fw, limits));
    all_pass &= report.passed();
    doc["flower"] = report.to_json();
    lines.push_back(std::string("flower framework axioms: ") + (report.passed() ? "pass" : "fail"));
  }
  if (cls.is_complete_lattice) {
    IntervalFramework fw(exact);
    auto report = check_framework(fw, limits);
    all_pass &= report.passed();
    doc["interval"] = report.to_json();
    lines.push_back(std::string("interval framework axioms: ") + (report.passed() ? "pass" : "fail"));
  }
  if (cfg.format == Format::json) {
    write_json(os, doc);
  } else {
    std::string kind = cls.is_complete_lattice   ? "complete lattice"
                       : cls.is_bounded_complete ? "bounded-complete cpo"
                       : cls.is_cpo              ? "cpo, not bounded-complete"
                                                 : "not a cpo";
    os << kind;
    for (const auto& l : lines) os << "; " << l;
    os << "\n";
    if (!all_pass)
      for (const char* key : {"flower", "interval"})
        if (doc.contains(key))
          for (const auto& r : doc[key])
            if (r["status"] == "fail") os << key << " " << r["axiom"].get<std::string>() << ": " << r.value("counterexample", "") << "\n";
  }
  return all_pass ? kOk : kCheckFailed;
}

inline json relation_json(const std::optional<ElementSet>& a, const std::optional<ElementSet>& b) {
  if (!a || !b) return nullptr;
  return json{{"a_leq_b", b->is_subset_of(*a)}, {"b_leq_a", a->is_subset_of(*b)}, {"equal", *a == *b}};
}

inline json subset_json(const std::optional<std::vector<Element>>& a, const std::optional<std::vector<Element>>& b) {
  if (!a || !b) return nullptr;
  auto sub = [](const std::vector<Element>& x, const std::vector<Element>& y) {
    return std::all_of(x.begin(), x.end(), [&](Element e) { return std::find(y.begin(), y.end(), e) != y.end(); });
  };
  return json{{"a_subset_b", sub(*a, *b)}, {"b_subset_a", sub(*b, *a)}, {"equal", sub(*a, *b) && sub(*b, *a)}};
}

struct CompareConfig {
  RunConfig base;
  std::string a_space = "interval", a_approximator = "ultimate";
  std::string b_space = "flower", b_approximator = "ultimate";
};

inline int cmd_compare(const CompareConfig& cfg, std::ostream& os) {
  const auto pb = load_problem(io::read_file(cfg.base.input), cfg.base.max_elements);
  const auto a = solve_problem(pb, cfg.a_space, cfg.a_approximator, cfg.base.semantics);
  const auto b = solve_problem(pb, cfg.b_space, cfg.b_approximator, cfg.base.semantics);
  json doc{{"a", a.doc}, {"b", b.doc}};
  json rel;
  if (a.kk) rel["kk"] = relation_json(a.kk, b.kk);
  if (a.wf) rel["wf"] = relation_json(a.wf, b.wf);
  if (a.supported) rel["supported"] = subset_json(a.supported, b.supported);
  if (a.stable) rel["stable"] = subset_json(a.stable, b.stable);
  doc["relations"] = rel;
  if (cfg.base.format == Format::json) {
    write_json(os, doc);
    return kOk;
  }
  // Label each side by what differs between the two configurations.
  auto label = [&](const std::string& approximator, const std::string& space) {
    if (cfg.a_space == cfg.b_space) return approximator;
    if (cfg.a_approximator == cfg.b_approximator) return space;
    return approximator + "/" + space;
  };
  const std::string na = label(cfg.a_approximator, cfg.a_space), nb = label(cfg.b_approximator, cfg.b_space);
  auto yes = [](const json& j, const char* k) { return j[k].get<bool>() ? "true" : "false"; };
  for (const char* k : {"kk", "wf"}) {
    if (!rel.contains(k)) continue;
    std::string up = k;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    os << up << "(" << na << ") ≤p " << up << "(" << nb << "): " << yes(rel[k], "a_leq_b");
    if (rel[k]["equal"].get<bool>()) os << " (equal)";
    else if (rel[k]["a_leq_b"].get<bool>()) os << " (strictly less precise)";
    os << "\n";
  }
  for (const char* k : {"supported", "stable"}) {
    if (!rel.contains(k)) continue;
    os << k << "(" << na << ") ⊆ " << k << "(" << nb << "): " << yes(rel[k], "a_subset_b");
    if (rel[k]["equal"].get<bool>()) os << " (equal)";
    os << "\n";
  }
  return kOk;
}

/// Runs f, mapping library errors to exit codes and messages on err.
inline int guarded(const std::function<int()>& f, std::ostream& err) {
  try {
    return f();
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidPoset& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ElementNotFound& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionError;
  }
}

}  // namespace aft::cli
