#pragma once

// Autoepistemic theories whose modal atoms K(phi) have objective arguments.
// Belief states are sets of interpretations ordered by superset, so the
// least state admits every interpretation.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aft/engine.hpp"
#include "aft/error.hpp"
#include "aft/poset.hpp"

namespace aft {

struct Formula {
  enum class Kind { atom, negation, conjunction, disjunction, equivalence, knows };

  Kind kind = Kind::atom;
  std::size_t atom = 0;
  std::vector<Formula> args;

  static Formula make_atom(std::size_t a) { return {Kind::atom, a, {}}; }
  static Formula make_not(Formula f) { return {Kind::negation, 0, {std::move(f)}}; }
  static Formula make_and(std::vector<Formula> fs) { return {Kind::conjunction, 0, std::move(fs)}; }
  static Formula make_or(std::vector<Formula> fs) { return {Kind::disjunction, 0, std::move(fs)}; }
  static Formula make_iff(Formula a, Formula b) { return {Kind::equivalence, 0, {std::move(a), std::move(b)}}; }
  static Formula make_k(Formula f) { return {Kind::knows, 0, {std::move(f)}}; }

  bool is_objective() const {
    if (kind == Kind::knows) return false;
    for (const auto& a : args)
      if (!a.is_objective()) return false;
    return true;
  }
};

struct AelTheory {
  std::vector<std::string> atoms;
  std::vector<Formula> sentences;
};

/// Names an interpretation by its true atoms, e.g. "{q,r}".
inline std::vector<std::string> interpretation_names(const std::vector<std::string>& atoms) {
  std::vector<std::string> names;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << atoms.size()); ++i) names.push_back(format_subset(atoms, i));
  return names;
}

namespace detail {

/// Bit i is set when interpretation i satisfies the objective formula f.
inline std::uint64_t models_of(const Formula& f, std::size_t n_atoms) {
  const std::size_t n = std::size_t{1} << n_atoms;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  switch (f.kind) {
    case Formula::Kind::atom: {
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (i >> f.atom & 1U) m |= std::uint64_t{1} << i;
      return m;
    }
    case Formula::Kind::negation:
      return all & ~models_of(f.args.at(0), n_atoms);
    case Formula::Kind::conjunction: {
      std::uint64_t m = all;
      for (const auto& a : f.args) m &= models_of(a, n_atoms);
      return m;
    }
    case Formula::Kind::disjunction: {
      std::uint64_t m = 0;
      for (const auto& a : f.args) m |= models_of(a, n_atoms);
      return m;
    }
    case Formula::Kind::equivalence:
      return all & ~(models_of(f.args.at(0), n_atoms) ^ models_of(f.args.at(1), n_atoms));
    case Formula::Kind::knows:
      break;
  }
  throw PreconditionError("modal atom inside an objective formula");
}

/// Collects the objective arguments of modal atoms, rejecting nesting.
inline void collect_modal(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::knows) {
    if (!f.args.at(0).is_objective()) throw ParseError("nested K is not supported");
    out.push_back(&f.args[0]);
    return;
  }
  for (const auto& a : f.args) collect_modal(a, out);
}

/// Interpretations satisfying f when modal atoms take the given truth values.
inline std::uint64_t models_given(const Formula& f, std::size_t n_atoms, const std::vector<bool>& known,
                                  std::size_t& next_modal) {
  const std::size_t n = std::size_t{1} << n_atoms;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  switch (f.kind) {
    case Formula::Kind::knows:
      return known[next_modal++] ? all : 0;
    case Formula::Kind::atom:
      return models_of(f, n_atoms);
    case Formula::Kind::negation:
      return all & ~models_given(f.args.at(0), n_atoms, known, next_modal);
    case Formula::Kind::conjunction: {
      std::uint64_t m = all;
      for (const auto& a : f.args) m &= models_given(a, n_atoms, known, next_modal);
      return m;
    }
    case Formula::Kind::disjunction: {
      std::uint64_t m = 0;
      for (const auto& a : f.args) m |= models_given(a, n_atoms, known, next_modal);
      return m;
    }
    case Formula::Kind::equivalence: {
      const auto a = models_given(f.args.at(0), n_atoms, known, next_modal);
      const auto b = models_given(f.args.at(1), n_atoms, known, next_modal);
      return all & ~(a ^ b);
    }
  }
  return 0;
}

}  // namespace detail

/// The belief-state lattice: subsets of interpretations, superset order.
inline std::shared_ptr<const FinitePoset> belief_state_lattice(const std::vector<std::string>& atoms,
                                                               std::size_t max_elements = kDefaultMaxElements) {
  if (atoms.size() > 4) throw CapExceeded("belief states are supported for at most 4 atoms");
  return std::make_shared<const FinitePoset>(
      powerset_lattice(interpretation_names(atoms), SetOrder::superset, kDefaultMaxAtoms, max_elements));
}

/// X maps to the interpretations satisfying every sentence, where K(phi)
/// holds iff phi is true in every interpretation of X.
inline ExactOperator ael_operator(const AelTheory& t, std::size_t max_elements = kDefaultMaxElements) {
  const std::size_t n = t.atoms.size();
  std::vector<const Formula*> modal;
  for (const auto& s : t.sentences) detail::collect_modal(s, modal);
  std::vector<std::uint64_t> modal_models;
  for (const auto* f : modal) modal_models.push_back(detail::models_of(*f, n));
  auto lattice = belief_state_lattice(t.atoms, max_elements);
  return ExactOperator(lattice, [&](Element x) {
    std::vector<bool> known(modal.size());
    for (std::size_t k = 0; k < modal.size(); ++k) known[k] = (x & ~modal_models[k]) == 0;
    std::uint64_t out = lattice->size() == 0 ? 0 : lattice->size() - 1;
    std::size_t next = 0;
    for (const auto& s : t.sentences) out &= detail::models_given(s, n, known, next);
    return static_cast<Element>(out);
  });
}

}  // namespace aft
