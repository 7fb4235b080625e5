#pragma once

// Monotone inductions and least fixpoints on finite cpos.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "aft/error.hpp"
#include "aft/poset.hpp"

namespace aft {

/// Iterates x_{i+1} = op(x_i) from start until op(x) == x.
///
/// Works over any finite order given by leq; every step must be increasing,
/// otherwise the operator is not monotone (or start is not a post-fixpoint)
/// and MonotonicityError is thrown. If trace is given, every visited value
/// is appended to it.
template <class T, class Op, class Leq>
T iterate_to_fixpoint(T start, Op&& op, Leq&& leq, std::vector<T>* trace = nullptr) {
  T x = std::move(start);
  for (;;) {
    if (trace) trace->push_back(x);
    T next = op(x);
    if (next == x) return x;
    if (!leq(x, next)) throw MonotonicityError("iteration is not increasing: operator is not monotone");
    x = std::move(next);
  }
}

/// A total self-map on the elements of a finite poset. Monotonicity is not
/// enforced at construction; lfp() detects violations along the iteration and
/// monotonicity_violation() checks all pairs on request.
class MonotoneOperator {
 public:
  MonotoneOperator(const FinitePoset& domain, std::vector<Element> table)
      : domain_(&domain), table_(std::move(table)) {
    if (table_.size() != domain.size()) throw PreconditionError("operator table is not total on its domain");
    for (Element y : table_) domain.check(y);
  }

  MonotoneOperator(const FinitePoset& domain, const std::function<Element(Element)>& f)
      : MonotoneOperator(domain, tabulate(domain, f)) {}

  Element operator()(Element x) const {
    domain_->check(x);
    return table_[x];
  }

  const FinitePoset& domain() const { return *domain_; }

  /// A pair x <= y with op(x) not <= op(y), if one exists.
  std::optional<std::pair<Element, Element>> monotonicity_violation() const {
    for (Element x = 0; x < domain_->size(); ++x)
      for (Element y : members_of(domain_->up(x)))
        if (!domain_->leq(table_[x], table_[y])) return std::pair{x, y};
    return std::nullopt;
  }

  bool is_monotone() const { return !monotonicity_violation(); }

 private:
  static std::vector<Element> tabulate(const FinitePoset& d, const std::function<Element(Element)>& f) {
    std::vector<Element> t(d.size());
    for (Element x = 0; x < d.size(); ++x) t[x] = f(x);
    return t;
  }

  const FinitePoset* domain_;
  std::vector<Element> table_;
};

struct InductionTrace {
  std::vector<Element> steps;

  Element limit() const { return steps.back(); }
};

/// Picks x_{i+1} given (x_i, op(x_i)); must satisfy x_i <= x_{i+1} <= op(x_i).
using InductionStrategy = std::function<Element(Element current, Element image)>;

inline bool is_prefixpoint(const MonotoneOperator& op, Element x) { return op.domain().leq(op(x), x); }
inline bool is_postfixpoint(const MonotoneOperator& op, Element x) { return op.domain().leq(x, op(x)); }

inline Element require_least(const FinitePoset& p) {
  auto bot = p.least();
  if (!bot) throw PreconditionError("domain has no least element");
  return *bot;
}

/// Least fixpoint by iteration from the least element.
inline Element lfp(const MonotoneOperator& op) {
  const auto& d = op.domain();
  return iterate_to_fixpoint(
      require_least(d), [&](Element x) { return op(x); }, [&](Element a, Element b) { return d.leq(a, b); });
}

/// A monotone induction driven by strategy (default: x_{i+1} = op(x_i)).
///
/// Stops when the current element is a pre-fixpoint (terminal) or when the
/// strategy makes no progress; in the latter case the trace is not terminal.
inline InductionTrace run_monotone_induction(const MonotoneOperator& op, const InductionStrategy& strategy = {}) {
  const auto& d = op.domain();
  InductionTrace trace;
  Element x = require_least(d);
  trace.steps.push_back(x);
  for (;;) {
    const Element image = op(x);
    if (d.leq(image, x)) return trace;
    if (!d.leq(x, image)) throw MonotonicityError("induction step " + d.id(x) + " is not a post-fixpoint");
    const Element next = strategy ? strategy(x, image) : image;
    if (!d.leq(x, next) || !d.leq(next, image))
      throw InvalidRefinement("strategy chose " + d.id(next) + ", which is not between " + d.id(x) + " and " +
                              d.id(image));
    if (next == x) return trace;
    x = next;
    trace.steps.push_back(x);
  }
}

/// A trace is terminal when its limit is a pre-fixpoint.
inline bool is_terminal(const MonotoneOperator& op, const InductionTrace& trace) {
  return !trace.steps.empty() && is_prefixpoint(op, trace.limit());
}

/// Seeded strategy choosing uniformly among the elements strictly above the
/// current one and below its image.
inline InductionStrategy random_induction_strategy(const FinitePoset& domain, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [&domain, rng](Element x, Element image) {
    ElementSet between = domain.up(x) & domain.down(image);
    between.reset(x);
    auto options = members_of(between);
    if (options.empty()) return x;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(*rng)];
  };
}

}  // namespace aft
