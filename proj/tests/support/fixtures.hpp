#pragma once

// Bridges between the brute-force oracles and library types, plus the
// structures from the worked examples.

#include <memory>
#include <string>
#include <vector>

#include "aft/aft.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  return ids;
}

inline aft::FinitePoset to_poset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
  auto ids = numbered_ids(n);
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : covers) named.emplace_back(ids[a], ids[b]);
  return aft::FinitePoset::from_hasse(ids, named);
}

inline aft::ElementSet to_set(const aft::FinitePoset& p, oracle::Mask m) {
  aft::ElementSet s = p.empty_set();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (oracle::has(m, i)) s.set(i);
  return s;
}

inline oracle::Mask to_mask(const aft::ElementSet& s) {
  oracle::Mask m = 0;
  for (auto i = s.find_first(); i != aft::ElementSet::npos; i = s.find_next(i)) m |= oracle::bit(i);
  return m;
}

inline aft::FinitePoset fig1() { return aft::FinitePoset::from_hasse({"bot", "a", "b"}, {{"bot", "a"}, {"bot", "b"}}); }

inline aft::FinitePoset fig1_top() {
  return aft::FinitePoset::from_hasse({"bot", "a", "b", "top"},
                                      {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

inline aft::FinitePoset wadf_values() {
  return aft::FinitePoset::from_hasse(
      {"indifferent", "tendency-accept", "tendency-reject", "accept", "borderline", "reject"},
      {{"indifferent", "tendency-accept"},
       {"indifferent", "tendency-reject"},
       {"tendency-accept", "accept"},
       {"tendency-accept", "borderline"},
       {"tendency-reject", "borderline"},
       {"tendency-reject", "reject"}});
}

/// q <-> not K p, r <-> not K q over atoms p, q, r.
inline aft::AelTheory example1() {
  using F = aft::Formula;
  return {{"p", "q", "r"},
          {F::make_iff(F::make_atom(1), F::make_not(F::make_k(F::make_atom(0)))),
           F::make_iff(F::make_atom(2), F::make_not(F::make_k(F::make_atom(1))))}};
}

inline std::vector<oracle::Formula> example1_oracle() {
  using O = oracle::Formula;
  auto atom = [](std::size_t a) { return O{O::atom, a, {}}; };
  auto neg_k = [&](std::size_t a) { return O{O::neg, 0, {O{O::know, 0, {atom(a)}}}}; };
  return {O{O::iff, 0, {atom(1), neg_k(0)}}, O{O::iff, 0, {atom(2), neg_k(1)}}};
}

inline aft::Wadf example2() {
  auto values = std::make_shared<const aft::FinitePoset>(wadf_values());
  using E = aft::AcceptanceExpr;
  return aft::Wadf({"significance", "methodology", "status"}, values,
                   {E::constant(values->index_of("accept")), E::constant(values->index_of("borderline")),
                    E::meet({E::parent(0), E::parent(1)})});
}

inline aft::NormalLogicProgram to_program(const oracle::Program& p) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < p.atoms; ++i) atoms.push_back("a" + std::to_string(i));
  std::vector<aft::Rule> rules;
  for (const auto& r : p.rules) {
    aft::Rule rule{r.head, {}, {}};
    for (std::size_t i = 0; i < p.atoms; ++i) {
      if (oracle::has(r.pos, i)) rule.pos.push_back(i);
      if (oracle::has(r.neg, i)) rule.neg.push_back(i);
    }
    rules.push_back(rule);
  }
  return aft::NormalLogicProgram(atoms, rules);
}

inline std::vector<aft::Element> as_elements(const std::vector<oracle::Mask>& ms) {
  return {ms.begin(), ms.end()};
}

/// The data directory, configured at build time.
inline std::string data_path(const std::string& file) { return std::string(AFT_DATA_DIR) + "/" + file; }

}  // namespace fixtures
