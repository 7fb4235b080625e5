#pragma once

// Comparing approximation spaces. A coarse space is below a fine one when
// a monotone zeta from fine to coarse satisfies x1 <=p x2 iff x1 <=p zeta(x2).
// Approximators move between the spaces by composing with zeta and with the
// embedding of coarse approximants into the fine space.

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aft/engine.hpp"
#include "aft/error.hpp"
#include "aft/flower.hpp"
#include "aft/framework.hpp"
#include "aft/interval.hpp"

namespace aft {

template <ApproximationFramework Coarse, ApproximationFramework Fine>
struct SpacePrecisionWitness {
  using A1 = typename Coarse::Approximant;
  using A2 = typename Fine::Approximant;

  Coarse coarse;
  Fine fine;
  std::function<A1(const A2&)> zeta;
  std::function<A2(const A1&)> embed;
};

using IntervalFlowerWitness = SpacePrecisionWitness<IntervalFramework, FlowerFramework>;

/// zeta(X) = [glb X, lub X]; [x1, x2] embeds as the flower of its members.
inline IntervalFlowerWitness interval_flower_witness(std::shared_ptr<const FinitePoset> exact) {
  IntervalFramework coarse(exact);
  FlowerFramework fine(exact);
  auto zeta = [exact](const Flower& x) { return Interval{*exact->glb(x.members), *exact->lub(x.members)}; };
  auto embed = [fine](const Interval& x) { return *fine.recompose(x.low, fine.upper_floor(x.high)); };
  return {std::move(coarse), std::move(fine), zeta, embed};
}

inline IntervalFlowerWitness interval_flower_witness(FinitePoset exact) {
  return interval_flower_witness(std::make_shared<const FinitePoset>(std::move(exact)));
}

template <ApproximationFramework F>
SpacePrecisionWitness<F, F> identity_witness(const F& fw) {
  using A = typename F::Approximant;
  return {fw, fw, [](const A& x) { return x; }, [](const A& x) { return x; }};
}

/// Verifies the defining biconditional, monotonicity of zeta, that zeta
/// inverts the embedding, and that exactness survives the embedding.
template <class C, class F>
Report check_space_precision(const SpacePrecisionWitness<C, F>& w, const CheckLimits& limits = {}) {
  Report report;
  auto [xs1, full1] = approximants_for_check(w.coarse, limits);
  auto [xs2, full2] = approximants_for_check(w.fine, limits);
  const bool sampled = !(full1 && full2);
  std::vector<typename C::Approximant> zetas;
  for (const auto& y : xs2) zetas.push_back(w.zeta(y));

  {
    AxiomCheck c("precision.biconditional", sampled);
    for (const auto& x : xs1) {
      const auto ex = w.embed(x);
      for (std::size_t j = 0; j < xs2.size(); ++j)
        c.expect(w.fine.precision_leq(ex, xs2[j]) == w.coarse.precision_leq(x, zetas[j]), [&] {
          return w.coarse.format(x) + " vs " + w.fine.format(xs2[j]) + " (zeta = " + w.coarse.format(zetas[j]) + ")";
        });
      if (c.failed()) break;
    }
    report.results.push_back(std::move(c).done());
  }
  {
    AxiomCheck c("precision.zeta_monotone", sampled);
    for (std::size_t i = 0; i < xs2.size() && !c.failed(); ++i)
      for (std::size_t j = 0; j < xs2.size(); ++j)
        if (w.fine.precision_leq(xs2[i], xs2[j]))
          c.expect(w.coarse.precision_leq(zetas[i], zetas[j]),
                   [&] { return w.fine.format(xs2[i]) + " <=p " + w.fine.format(xs2[j]); });
    report.results.push_back(std::move(c).done());
  }
  {
    AxiomCheck c("precision.embedding", sampled);
    for (const auto& x : xs1) {
      const auto ex = w.embed(x);
      c.expect(w.zeta(ex) == x, [&] { return "zeta does not invert the embedding at " + w.coarse.format(x); });
      c.expect(!w.coarse.is_exact(x) || w.fine.is_exact(ex),
               [&] { return "exact " + w.coarse.format(x) + " embeds as inexact " + w.fine.format(ex); });
    }
    report.results.push_back(std::move(c).done());
  }
  return report;
}

/// embed ∘ a1 ∘ zeta.
template <class C, class F>
Approximator<F> induce_fine(const Approximator<C>& a1, const SpacePrecisionWitness<C, F>& w) {
  return Approximator<F>(
      w.fine, [a1, w](const typename F::Approximant& x) { return w.embed(a1(w.zeta(x))); }, a1.name() + "∘zeta");
}

/// zeta ∘ a2 ∘ embed.
template <class C, class F>
Approximator<C> induce_coarse(const Approximator<F>& a2, const SpacePrecisionWitness<C, F>& w) {
  return Approximator<C>(
      w.coarse, [a2, w](const typename C::Approximant& x) { return w.zeta(a2(w.embed(x))); }, "zeta∘" + a2.name());
}

/// Pointwise equality of two approximators on the same space.
template <ApproximationFramework F>
AxiomResult approximators_equal(const Approximator<F>& a, const Approximator<F>& b, const CheckLimits& limits = {}) {
  const F& fw = a.space();
  auto [xs, full] = approximants_for_check(fw, limits);
  AxiomCheck c("approximators_equal", !full);
  for (const auto& x : xs) {
    const auto ax = a(x), bx = b(x);
    c.expect(ax == bx, [&] {
      return "at " + fw.format(x) + ": " + a.name() + " gives " + fw.format(ax) + ", " + b.name() + " gives " +
             fw.format(bx);
    });
    if (c.failed()) break;
  }
  return std::move(c).done();
}

/// Kripke-Kleene iteration of a2 started from the embedded KK of a coarse
/// approximator instead of from the least approximant.
template <class C, class F>
typename F::Approximant warm_start_kripke_kleene(const Approximator<F>& a2, const SpacePrecisionWitness<C, F>& w,
                                                 const typename C::Approximant& coarse_kk) {
  const F& fw = a2.space();
  return iterate_to_fixpoint(
      w.embed(coarse_kk), [&](const auto& x) { return a2(x); },
      [&](const auto& x, const auto& y) { return fw.precision_leq(x, y); });
}

/// For a2 = embed ∘ a1 ∘ zeta: fixpoints of a2 and of its stable revision
/// are the embedded fixpoints of a1 and of its stable revision, KK and WF
/// coincide across the spaces, and reliable-and-prudent approximants stay so.
template <class C, class F>
Report verify_fine_transfer(const SpacePrecisionWitness<C, F>& w, const Approximator<C>& a1,
                            const CheckLimits& limits = {}) {
  Report report;
  const auto a2 = induce_fine(a1, w);
  auto [xs, full] = approximants_for_check(w.coarse, limits);
  {
    // Every value of a2 lies in the image of the embedding, so its fixpoints
    // are found among embedded approximants.
    AxiomCheck fix("transfer.fixpoints", !full);
    AxiomCheck stable("transfer.stable_fixpoints", !full);
    AxiomCheck rp("transfer.reliable_prudent", !full);
    for (const auto& x : xs) {
      const auto ex = w.embed(x);
      const bool f1 = a1(x) == x;
      fix.expect(f1 == (a2(ex) == ex), [&] { return "fixpoint status differs at " + w.coarse.format(x); });
      if (f1) {
        const bool s1 = stable_revision(a1, x) == x;
        const bool s2 = stable_revision(a2, ex) == ex;
        stable.expect(s1 == s2, [&] { return "stable fixpoint status differs at " + w.coarse.format(x); });
      }
      if (is_reliable(a1, x) && is_prudent(a1, x))
        rp.expect(is_reliable(a2, ex) && is_prudent(a2, ex),
                  [&] { return w.coarse.format(x) + " loses reliability or prudence when embedded"; });
    }
    report.results.push_back(std::move(fix).done());
    report.results.push_back(std::move(stable).done());
    report.results.push_back(std::move(rp).done());
  }
  {
    AxiomCheck c("transfer.kk_equal", false);
    const auto k1 = kripke_kleene(a1);
    const auto k2 = kripke_kleene(a2);
    c.expect(w.embed(k1) == k2, [&] { return w.coarse.format(k1) + " vs " + w.fine.format(k2); });
    report.results.push_back(std::move(c).done());
  }
  {
    AxiomCheck c("transfer.wf_equal", false);
    const auto k1 = well_founded(a1);
    const auto k2 = well_founded(a2);
    c.expect(w.embed(k1) == k2, [&] { return w.coarse.format(k1) + " vs " + w.fine.format(k2); });
    report.results.push_back(std::move(c).done());
  }
  return report;
}

/// For a1 = zeta ∘ a2 ∘ embed: KK(a1) <=p KK(a2), WF(a1) <=p WF(a2),
/// SUP(a1) ⊆ SUP(a2) and ST(a1) ⊆ ST(a2).
template <class C, class F>
Report verify_coarse_transfer(const SpacePrecisionWitness<C, F>& w, const Approximator<F>& a2) {
  Report report;
  const auto a1 = induce_coarse(a2, w);
  auto cross = [&](const char* name, const typename C::Approximant& x1, const typename F::Approximant& x2) {
    AxiomCheck c(name, false);
    c.expect(w.coarse.precision_leq(x1, w.zeta(x2)), [&] { return w.coarse.format(x1) + " vs " + w.fine.format(x2); });
    report.results.push_back(std::move(c).done());
  };
  cross("transfer.kk_leq", kripke_kleene(a1), kripke_kleene(a2));
  cross("transfer.wf_leq", well_founded(a1), well_founded(a2));
  auto subset = [&](const char* name, const std::vector<Element>& s1, const std::vector<Element>& s2) {
    AxiomCheck c(name, false);
    for (Element e : s1)
      c.expect(std::find(s2.begin(), s2.end(), e) != s2.end(),
               [&] { return w.coarse.exact().id(e) + " is missing from the finer space"; });
    report.results.push_back(std::move(c).done());
  };
  subset("transfer.supported_subset", supported_fixpoints(a1), supported_fixpoints(a2));
  subset("transfer.stable_subset", stable_fixpoints(a1), stable_fixpoints(a2));
  return report;
}

/// Same-space transfer for a <=p b: KK, WF, SUP and ST all move up.
template <ApproximationFramework F>
Report verify_precision_transfer(const Approximator<F>& a, const Approximator<F>& b) {
  Report report;
  const F& fw = a.space();
  auto leq = [&](const char* name, const typename F::Approximant& x, const typename F::Approximant& y) {
    AxiomCheck c(name, false);
    c.expect(fw.precision_leq(x, y), [&] { return fw.format(x) + " vs " + fw.format(y); });
    report.results.push_back(std::move(c).done());
  };
  leq("transfer.kk_leq", kripke_kleene(a), kripke_kleene(b));
  leq("transfer.wf_leq", well_founded(a), well_founded(b));
  auto subset = [&](const char* name, const std::vector<Element>& s1, const std::vector<Element>& s2) {
    AxiomCheck c(name, false);
    for (Element e : s1)
      c.expect(std::find(s2.begin(), s2.end(), e) != s2.end(),
               [&] { return fw.exact().id(e) + " is missing for " + b.name(); });
    report.results.push_back(std::move(c).done());
  };
  subset("transfer.supported_subset", supported_fixpoints(a), supported_fixpoints(b));
  subset("transfer.stable_subset", stable_fixpoints(a), stable_fixpoints(b));
  return report;
}

}  // namespace aft
