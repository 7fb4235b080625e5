#pragma once

// Propositional normal logic programs: the immediate consequence operator
// on the powerset of atoms, the four-valued Fitting approximator on
// intervals, and a reference solver that works directly on bit masks.

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "aft/engine.hpp"
#include "aft/error.hpp"
#include "aft/interval.hpp"
#include "aft/poset.hpp"

namespace aft {

struct Rule {
  std::size_t head = 0;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
};

class NormalLogicProgram {
 public:
  using Mask = std::uint64_t;

  NormalLogicProgram(std::vector<std::string> atoms, std::vector<Rule> rules)
      : atoms_(std::move(atoms)), rules_(std::move(rules)) {
    if (atoms_.size() >= 63) throw CapExceeded("too many atoms: " + std::to_string(atoms_.size()));
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (!seen.emplace(atoms_[i], i).second) throw ParseError("duplicate atom: " + atoms_[i]);
    for (const auto& r : rules_) {
      check_atom(r.head);
      Compiled c{r.head, 0, 0};
      for (auto a : r.pos) c.pos |= Mask{1} << check_atom(a);
      for (auto a : r.neg) c.neg |= Mask{1} << check_atom(a);
      compiled_.push_back(c);
    }
  }

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Rule>& rules() const { return rules_; }

  /// Heads of rules whose positive body holds in pos_in and whose negated
  /// atoms are all absent from neg_in.
  Mask consequences(Mask pos_in, Mask neg_in) const {
    Mask out = 0;
    for (const auto& r : compiled_)
      if ((r.pos & ~pos_in) == 0 && (r.neg & neg_in) == 0) out |= Mask{1} << r.head;
    return out;
  }

  Mask immediate_consequence(Mask i) const { return consequences(i, i); }

  std::string format(Mask m) const { return format_subset(atoms_, m); }

  /// The rules in the usual text syntax, e.g. "p :- q, not r. q."
  std::string format_rules() const {
    std::string out;
    for (const auto& r : rules_) {
      if (!out.empty()) out += ' ';
      out += atoms_[r.head];
      std::string body;
      for (auto a : r.pos) body += (body.empty() ? "" : ", ") + atoms_[a];
      for (auto a : r.neg) body += (body.empty() ? "not " : ", not ") + atoms_[a];
      if (!body.empty()) out += " :- " + body;
      out += '.';
    }
    return out;
  }

 private:
  struct Compiled {
    std::size_t head;
    Mask pos, neg;
  };

  std::size_t check_atom(std::size_t a) const {
    if (a >= atoms_.size()) throw ParseError("rule mentions an unknown atom index " + std::to_string(a));
    return a;
  }

  std::vector<std::string> atoms_;
  std::vector<Rule> rules_;
  std::vector<Compiled> compiled_;
};

/// T_P on the subset-ordered powerset of the program's atoms.
inline ExactOperator lp_operator(const NormalLogicProgram& p, std::size_t max_atoms = kDefaultMaxAtoms,
                                 std::size_t max_elements = kDefaultMaxElements) {
  auto lattice =
      std::make_shared<const FinitePoset>(powerset_lattice(p.atoms(), SetOrder::subset, max_atoms, max_elements));
  return ExactOperator(lattice, [&p](Element i) { return static_cast<Element>(p.immediate_consequence(i)); });
}

inline Approximator<IntervalFramework> fitting_approximator(const NormalLogicProgram& p, const IntervalFramework& fw) {
  if (fw.exact().size() != (std::size_t{1} << p.atoms().size()))
    throw PreconditionError("interval space does not match the program's atoms");
  return Approximator<IntervalFramework>(
      fw,
      [p](const Interval& x) {
        return Interval{static_cast<Element>(p.consequences(x.low, x.high)),
                        static_cast<Element>(p.consequences(x.high, x.low))};
      },
      "fitting");
}

struct LpOracleResult {
  std::vector<std::uint64_t> answer_sets;
  std::vector<std::uint64_t> supported_models;
  std::uint64_t wf_lower = 0;
  std::uint64_t wf_upper = 0;
};

/// Answer sets by the Gelfond-Lifschitz reduct, supported models as fixpoints
/// of T_P, and the well-founded model by the alternating fixpoint.
inline LpOracleResult lp_oracle(const NormalLogicProgram& p, std::size_t max_atoms = 12) {
  using Mask = NormalLogicProgram::Mask;
  const std::size_t n = p.atoms().size();
  if (n > max_atoms) throw CapExceeded("reference solver is limited to " + std::to_string(max_atoms) + " atoms");

  // Least model of the reduct P^i: positive rules whose negative body misses i.
  auto least_model_of_reduct = [&](Mask i) {
    Mask m = 0;
    for (;;) {
      Mask next = p.consequences(m, i);
      if (next == m) return m;
      m = next;
    }
  };

  LpOracleResult r;
  for (Mask i = 0; i < (Mask{1} << n); ++i) {
    if (least_model_of_reduct(i) == i) r.answer_sets.push_back(i);
    if (p.immediate_consequence(i) == i) r.supported_models.push_back(i);
  }
  // true atoms grow, possible atoms shrink.
  Mask t = 0, u = (Mask{1} << n) - 1;
  for (;;) {
    Mask nt = least_model_of_reduct(u);
    Mask nu = least_model_of_reduct(nt);
    if (nt == t && nu == u) break;
    t = nt;
    u = nu;
  }
  r.wf_lower = t;
  r.wf_upper = u;
  return r;
}

}  // namespace aft
