#pragma once

// Approximators over an approximation framework and the fixpoints derived
// from them: Kripke-Kleene, well-founded, supported and stable.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aft/error.hpp"
#include "aft/fixpoint.hpp"
#include "aft/flower.hpp"
#include "aft/framework.hpp"
#include "aft/interval.hpp"
#include "aft/poset.hpp"

namespace aft {

/// An arbitrary (not necessarily monotone) total map on an exact space.
class ExactOperator {
 public:
  ExactOperator(std::shared_ptr<const FinitePoset> domain, std::vector<Element> table)
      : domain_(std::move(domain)), table_(std::move(table)) {
    if (table_.size() != domain_->size()) throw PreconditionError("operator table is not total on its domain");
    for (Element y : table_) domain_->check(y);
  }

  ExactOperator(std::shared_ptr<const FinitePoset> domain, const std::function<Element(Element)>& f)
      : domain_(std::move(domain)) {
    table_.resize(domain_->size());
    for (Element x = 0; x < table_.size(); ++x) {
      table_[x] = f(x);
      domain_->check(table_[x]);
    }
  }

  Element operator()(Element x) const {
    domain_->check(x);
    return table_[x];
  }

  const FinitePoset& domain() const { return *domain_; }
  const std::shared_ptr<const FinitePoset>& domain_ptr() const { return domain_; }
  const std::vector<Element>& table() const { return table_; }

  /// The image of a set of elements.
  ElementSet image(const ElementSet& s) const {
    ElementSet out = domain_->empty_set();
    for_each_member(s, [&](Element x) { out.set(table_[x]); });
    return out;
  }

  /// A pair x <= y with O(x) not <= O(y), if any.
  std::optional<std::pair<Element, Element>> monotonicity_violation() const {
    for (Element x = 0; x < domain_->size(); ++x)
      for (Element y : members_of(domain_->up(x)))
        if (!domain_->leq(table_[x], table_[y])) return std::pair{x, y};
    return std::nullopt;
  }

 private:
  std::shared_ptr<const FinitePoset> domain_;
  std::vector<Element> table_;
};

template <ApproximationFramework F>
class Approximator {
 public:
  using A = typename F::Approximant;
  using Map = std::function<A(const A&)>;

  Approximator(F space, Map map, std::string name = "approximator")
      : space_(std::move(space)), map_(std::move(map)), name_(std::move(name)) {}

  A operator()(const A& x) const { return map_(x); }
  const F& space() const { return space_; }
  const std::string& name() const { return name_; }

 private:
  F space_;
  Map map_;
  std::string name_;
};

inline void require_same_space(const FinitePoset& a, const FinitePoset& b) {
  if (&a != &b && a.ids() != b.ids()) throw PreconditionError("approximator and operator act on different exact spaces");
}

/// (glb O[x1,x2], lub O[x1,x2]).
inline Approximator<IntervalFramework> ultimate_approximator(const IntervalFramework& fw, const ExactOperator& o) {
  require_same_space(fw.exact(), o.domain());
  return Approximator<IntervalFramework>(
      fw,
      [fw, o](const Interval& x) {
        const ElementSet img = o.image(fw.members(x));
        return Interval{*fw.exact().glb(img), *fw.exact().lub(img)};
      },
      "ultimate");
}

/// The flower closure of the image of the flower.
inline Approximator<FlowerFramework> ultimate_approximator(const FlowerFramework& fw, const ExactOperator& o) {
  require_same_space(fw.exact(), o.domain());
  return Approximator<FlowerFramework>(
      fw, [fw, o](const Flower& x) { return fw.flower_closure(o.image(x.members)); }, "ultimate");
}

/// Approximants to check a property over: every one when enumerable,
/// otherwise a seeded sample plus the least and the exact approximants.
template <ApproximationFramework F>
std::pair<std::vector<typename F::Approximant>, bool> approximants_for_check(const F& fw, const CheckLimits& limits) {
  try {
    return {fw.enumerate_approximants(limits.max_approximants), true};
  } catch (const CapExceeded&) {
  }
  std::vector<typename F::Approximant> out;
  out.push_back(fw.least());
  for (Element e = 0; e < fw.exact().size() && out.size() < limits.samples; ++e) out.push_back(fw.exact_approximant(e));
  std::mt19937_64 rng(limits.seed);
  for (std::size_t i = 0; i < limits.samples; ++i) out.push_back(fw.sample_approximant(rng));
  return {std::move(out), false};
}

/// Whether x ~ e implies a(x) ~ o(e), over all (or sampled) approximants.
template <ApproximationFramework F>
AxiomResult approximates_operator(const Approximator<F>& a, const ExactOperator& o, const CheckLimits& limits = {}) {
  const F& fw = a.space();
  require_same_space(fw.exact(), o.domain());
  auto [xs, full] = approximants_for_check(fw, limits);
  AxiomCheck c("approximates_operator", !full);
  for (const auto& x : xs) {
    const auto ax = a(x);
    for_each_member(fw.members(x), [&](Element e) {
      c.expect(fw.approximates(ax, o(e)), [&] {
        return fw.format(x) + " approximates " + fw.exact().id(e) + " but its image " + fw.format(ax) +
               " does not approximate " + fw.exact().id(o(e));
      });
    });
    if (c.failed()) break;
  }
  return std::move(c).done();
}

/// Whether a is precision-monotone, over all (or sampled) comparable pairs.
template <ApproximationFramework F>
AxiomResult approximator_monotonicity(const Approximator<F>& a, const CheckLimits& limits = {}) {
  const F& fw = a.space();
  auto [xs, full] = approximants_for_check(fw, limits);
  std::vector<typename F::Approximant> images;
  images.reserve(xs.size());
  for (const auto& x : xs) images.push_back(a(x));
  AxiomCheck c("approximator_monotone", !full);
  for (std::size_t i = 0; i < xs.size() && !c.failed(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (fw.precision_leq(xs[i], xs[j]))
        c.expect(fw.precision_leq(images[i], images[j]),
                 [&] { return fw.format(xs[i]) + " <=p " + fw.format(xs[j]) + " but images are not"; });
  return std::move(c).done();
}

/// a <=p b pointwise.
template <ApproximationFramework F>
AxiomResult approximator_precision_leq(const Approximator<F>& a, const Approximator<F>& b,
                                       const CheckLimits& limits = {}) {
  const F& fw = a.space();
  auto [xs, full] = approximants_for_check(fw, limits);
  AxiomCheck c("approximator_precision", !full);
  for (const auto& x : xs) {
    const auto ax = a(x), bx = b(x);
    c.expect(fw.precision_leq(ax, bx), [&] {
      return "at " + fw.format(x) + ": " + a.name() + " gives " + fw.format(ax) + ", " + b.name() + " gives " +
             fw.format(bx);
    });
    if (c.failed()) break;
  }
  return std::move(c).done();
}

template <ApproximationFramework F>
bool is_reliable(const Approximator<F>& a, const typename F::Approximant& x) {
  return a.space().precision_leq(x, a(x));
}

template <ApproximationFramework F>
typename F::Approximant kripke_kleene(const Approximator<F>& a) {
  const F& fw = a.space();
  return iterate_to_fixpoint(
      fw.least(), [&](const auto& x) { return a(x); },
      [&](const auto& x, const auto& y) { return fw.precision_leq(x, y); });
}

/// Least fixpoint of l -> alb(a(recompose(l, aub x))) in L, from the bottom.
template <ApproximationFramework F>
Element stable_lower(const Approximator<F>& a, const typename F::Approximant& x) {
  const F& fw = a.space();
  const auto& C = fw.exact();
  const auto u = fw.aub(x);
  return iterate_to_fixpoint(
      fw.bottom(),
      [&](Element l) {
        auto y = fw.recompose(l, u);
        if (!y)
          throw PreconditionError("lower stable map leaves the approximants below " + fw.format_upper(u) + " at " +
                                  C.id(l));
        return fw.alb(a(*y));
      },
      [&](Element p, Element q) { return C.leq(p, q); });
}

/// Least fixpoint of u -> aub(a(recompose(alb x, u))) in U. Iteration starts
/// at the least AUB that is still compatible with alb x.
template <ApproximationFramework F>
typename F::Upper stable_upper(const Approximator<F>& a, const typename F::Approximant& x,
                               std::vector<typename F::Upper>* trace = nullptr) {
  const F& fw = a.space();
  const Element l = fw.alb(x);
  return iterate_to_fixpoint(
      fw.upper_floor(l),
      [&](const typename F::Upper& u) {
        auto y = fw.recompose(l, u);
        if (!y) throw PreconditionError("upper stable map is undefined at " + fw.format_upper(u));
        return typename F::Upper(fw.aub(a(*y)));
      },
      [&](const auto& p, const auto& q) { return fw.upper_leq(p, q); }, trace);
}

template <ApproximationFramework F>
bool is_prudent(const Approximator<F>& a, const typename F::Approximant& x) {
  try {
    return a.space().exact().leq(a.space().alb(x), stable_lower(a, x));
  } catch (const PreconditionError&) {
    return false;
  }
}

/// (lfp of the lower map, lfp of the upper map), recomposed. x must be reliable.
template <ApproximationFramework F>
typename F::Approximant stable_revision(const Approximator<F>& a, const typename F::Approximant& x) {
  const F& fw = a.space();
  if (!is_reliable(a, x)) throw PreconditionError("stable revision needs a reliable approximant: " + fw.format(x));
  const Element l = stable_lower(a, x);
  const auto u = stable_upper(a, x);
  auto y = fw.recompose(l, u);
  if (!y)
    throw PreconditionError("stable revision of " + fw.format(x) + " is inconsistent: " + fw.exact().id(l) +
                            " is not below " + fw.format_upper(u));
  return *y;
}

template <ApproximationFramework F>
typename F::Approximant well_founded(const Approximator<F>& a) {
  const F& fw = a.space();
  return iterate_to_fixpoint(
      fw.least(), [&](const auto& x) { return stable_revision(a, x); },
      [&](const auto& x, const auto& y) { return fw.precision_leq(x, y); });
}

/// Exact elements e with a(e) = e, in index order.
template <ApproximationFramework F>
std::vector<Element> supported_fixpoints(const Approximator<F>& a) {
  const F& fw = a.space();
  std::vector<Element> out;
  for (Element e = 0; e < fw.exact().size(); ++e) {
    const auto x = fw.exact_approximant(e);
    if (a(x) == x) out.push_back(e);
  }
  return out;
}

/// Exact elements fixed by stable revision. Such elements are also fixed by
/// a, so only the supported ones are examined.
template <ApproximationFramework F>
std::vector<Element> stable_fixpoints(const Approximator<F>& a) {
  const F& fw = a.space();
  std::vector<Element> out;
  for (Element e : supported_fixpoints(a)) {
    const auto x = fw.exact_approximant(e);
    std::optional<typename F::Approximant> y;
    try {
      y = stable_revision(a, x);
    } catch (const PreconditionError&) {
      continue;
    }
    if (*y == x) out.push_back(e);
  }
  return out;
}

template <ApproximationFramework F>
struct SemanticsResult {
  std::optional<typename F::Approximant> kk;
  std::optional<typename F::Approximant> wf;
  std::optional<std::vector<Element>> supported;
  std::optional<std::vector<Element>> stable;
};

struct SemanticsSelection {
  bool kk = true, wf = true, supported = true, stable = true;
};

template <ApproximationFramework F>
SemanticsResult<F> compute_semantics(const Approximator<F>& a, SemanticsSelection sel = {}) {
  SemanticsResult<F> r;
  if (sel.kk) r.kk = kripke_kleene(a);
  if (sel.wf) r.wf = well_founded(a);
  if (sel.supported) r.supported = supported_fixpoints(a);
  if (sel.stable) r.stable = stable_fixpoints(a);
  return r;
}

/// x <=p y <=p a(x).
template <ApproximationFramework F>
bool is_application_refinement(const Approximator<F>& a, const typename F::Approximant& x,
                               const typename F::Approximant& y) {
  const F& fw = a.space();
  return fw.precision_leq(x, y) && fw.precision_leq(y, a(x));
}

/// y = (alb x, u) with u ≼ aub x and y <=p a(y). The only candidate u is
/// y's own AUB.
template <ApproximationFramework F>
bool is_grounding_refinement(const Approximator<F>& a, const typename F::Approximant& x,
                             const typename F::Approximant& y) {
  const F& fw = a.space();
  if (!(fw.alb(y) == fw.alb(x))) return false;
  const auto u = fw.aub(y);
  if (!fw.upper_leq(u, fw.aub(x))) return false;
  auto r = fw.recompose(fw.alb(x), u);
  return r && *r == y && fw.precision_leq(y, a(y));
}

/// Terminal: a fixes x and no grounding refinement is strict. The least u
/// making (alb x, u) a grounding refinement is the upper stable map's lfp.
template <ApproximationFramework F>
bool is_terminal_wf(const Approximator<F>& a, const typename F::Approximant& x) {
  const F& fw = a.space();
  if (!(a(x) == x)) return false;
  auto g = fw.recompose(fw.alb(x), stable_upper(a, x));
  return g && *g == x;
}

template <ApproximationFramework F>
using RefinementStrategy = std::function<typename F::Approximant(const Approximator<F>&, const typename F::Approximant&)>;

template <ApproximationFramework F>
struct WfTrace {
  std::vector<typename F::Approximant> steps;
  bool terminal = false;

  const typename F::Approximant& limit() const { return steps.back(); }
};

/// Apply a while it gains precision, then ground.
template <ApproximationFramework F>
RefinementStrategy<F> alternating_strategy() {
  return [](const Approximator<F>& a, const typename F::Approximant& x) {
    const F& fw = a.space();
    auto ax = a(x);
    if (!(ax == x)) return ax;
    return *fw.recompose(fw.alb(x), stable_upper(a, x));
  };
}

/// Seeded strategy picking uniformly among a pool of strict refinements:
/// a(x), its one-sided variants, intermediate lower and upper bounds, and
/// the strongest grounding refinement.
template <ApproximationFramework F>
RefinementStrategy<F> random_strategy(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const Approximator<F>& a, const typename F::Approximant& x) {
    using A = typename F::Approximant;
    const F& fw = a.space();
    const auto& C = fw.exact();
    const A ax = a(x);
    std::vector<A> pool;
    auto offer = [&](std::optional<A> y) {
      if (!y || *y == x) return;
      if (is_application_refinement(a, x, *y) || is_grounding_refinement(a, x, *y)) pool.push_back(std::move(*y));
    };
    offer(ax);
    offer(fw.recompose(fw.alb(x), fw.aub(ax)));
    offer(fw.recompose(fw.alb(ax), fw.aub(x)));
    auto between = members_of(C.up(fw.alb(x)) & C.down(fw.alb(ax)));
    if (!between.empty()) {
      const Element l = between[std::uniform_int_distribution<std::size_t>(0, between.size() - 1)(*rng)];
      offer(fw.recompose(l, fw.aub(x)));
      offer(fw.recompose(l, fw.aub(ax)));
    }
    auto inside = members_of(fw.members(x));
    const Element r = inside[std::uniform_int_distribution<std::size_t>(0, inside.size() - 1)(*rng)];
    const std::vector<typename F::Upper> parts{typename F::Upper(fw.aub(ax)), fw.upper_floor(r)};
    const auto u = fw.upper_lub(parts);
    offer(fw.recompose(fw.alb(x), u));
    offer(fw.recompose(fw.alb(ax), u));
    if (ax == x) offer(fw.recompose(fw.alb(x), stable_upper(a, x)));
    if (pool.empty()) return x;
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(*rng)];
  };
}

/// A well-founded induction from the least approximant. Every step must be a
/// strict application or grounding refinement; the run ends at a terminal
/// approximant or when the strategy stops making progress.
template <ApproximationFramework F>
WfTrace<F> run_wf_induction(const Approximator<F>& a, const RefinementStrategy<F>& strategy = alternating_strategy<F>()) {
  const F& fw = a.space();
  WfTrace<F> trace;
  auto x = fw.least();
  trace.steps.push_back(x);
  for (;;) {
    if (is_terminal_wf(a, x)) {
      trace.terminal = true;
      return trace;
    }
    auto y = strategy(a, x);
    if (y == x) return trace;
    if (!is_application_refinement(a, x, y) && !is_grounding_refinement(a, x, y))
      throw InvalidRefinement(fw.format(y) + " is not a refinement of " + fw.format(x));
    if (!fw.precision_leq(x, y)) throw InvalidRefinement(fw.format(y) + " loses precision over " + fw.format(x));
    x = std::move(y);
    trace.steps.push_back(x);
  }
}

}  // namespace aft
