#pragma once

// Consistent pairs (x1, x2), x1 <= x2, over a complete lattice.

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "aft/error.hpp"
#include "aft/framework.hpp"
#include "aft/poset.hpp"

namespace aft {

struct Interval {
  Element low = 0;
  Element high = 0;

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Explains why p is not a complete lattice, or returns nullopt.
inline std::optional<std::string> complete_lattice_defect(const FinitePoset& p) {
  if (p.size() == 0) return "the exact space is empty";
  if (!p.least()) return "the exact space has no least element (lub of the empty set is missing)";
  if (auto pr = pair_without_glb(p)) return "{" + p.id(pr->first) + "," + p.id(pr->second) + "} has no glb";
  if (!p.greatest()) return "the exact space has no greatest element (lub of the whole space is missing)";
  return std::nullopt;
}

class IntervalFramework {
 public:
  using Approximant = Interval;
  using Upper = Element;

  explicit IntervalFramework(std::shared_ptr<const FinitePoset> exact) : exact_(std::move(exact)) {
    if (auto defect = complete_lattice_defect(*exact_))
      throw PreconditionError("exact space is not a complete lattice: " + *defect);
    bottom_ = *exact_->least();
    top_ = *exact_->greatest();
  }
  explicit IntervalFramework(FinitePoset exact)
      : IntervalFramework(std::make_shared<const FinitePoset>(std::move(exact))) {}

  const FinitePoset& exact() const { return *exact_; }
  const std::shared_ptr<const FinitePoset>& exact_ptr() const { return exact_; }

  Element bottom() const { return bottom_; }
  Element top() const { return top_; }
  Element upper_bottom() const { return bottom_; }

  bool upper_leq(Element a, Element b) const { return exact_->leq(a, b); }
  bool lower_upper_leq(Element l, Element u) const { return exact_->leq(l, u); }

  Element upper_glb(std::span<const Element> us) const { return *exact_->glb(exact_->set_of(us)); }
  Element upper_lub(std::span<const Element> us) const { return *exact_->lub(exact_->set_of(us)); }
  Element upper_floor(Element l) const { return l; }

  Element alb(const Interval& x) const { return x.low; }
  Element aub(const Interval& x) const { return x.high; }

  std::optional<Interval> recompose(Element l, Element u) const {
    if (!exact_->leq(l, u)) return std::nullopt;
    return Interval{l, u};
  }

  /// (x1, x2) <=p (y1, y2) iff x1 <= y1 and y2 <= x2.
  bool precision_leq(const Interval& x, const Interval& y) const {
    return exact_->leq(x.low, y.low) && exact_->leq(y.high, x.high);
  }

  /// (x1, x2) <=t (y1, y2) iff x1 <= y1 and x2 <= y2.
  bool truth_leq(const Interval& x, const Interval& y) const {
    return exact_->leq(x.low, y.low) && exact_->leq(x.high, y.high);
  }

  bool approximates(const Interval& x, Element e) const { return exact_->leq(x.low, e) && exact_->leq(e, x.high); }
  ElementSet members(const Interval& x) const { return exact_->up(x.low) & exact_->down(x.high); }

  Interval least() const { return {bottom_, top_}; }
  Interval exact_approximant(Element e) const {
    exact_->check(e);
    return {e, e};
  }
  bool is_exact(const Interval& x) const { return x.low == x.high; }
  std::optional<Element> exact_value(const Interval& x) const {
    return is_exact(x) ? std::optional<Element>(x.low) : std::nullopt;
  }

  /// (lub of lows, glb of highs) when consistent.
  std::optional<Interval> lub(std::span<const Interval> xs) const {
    ElementSet lows = exact_->empty_set(), highs = exact_->empty_set();
    for (const auto& x : xs) {
      lows.set(x.low);
      highs.set(x.high);
    }
    const Element lo = *exact_->lub(lows);
    const Element hi = *exact_->glb(highs);
    return recompose(lo, hi);
  }

  std::vector<Element> enumerate_upper(std::size_t cap) const {
    if (exact_->size() > cap) throw CapExceeded("too many AUBs to enumerate");
    std::vector<Element> out(exact_->size());
    for (Element i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }

  std::vector<Interval> enumerate_approximants(std::size_t cap) const {
    std::vector<Interval> out;
    for (Element l = 0; l < exact_->size(); ++l)
      for (Element u : members_of(exact_->up(l))) {
        if (out.size() >= cap) throw CapExceeded("too many intervals to enumerate");
        out.push_back({l, u});
      }
    return out;
  }

  Element sample_upper(std::mt19937_64& rng) const {
    return std::uniform_int_distribution<Element>(0, exact_->size() - 1)(rng);
  }

  Interval sample_approximant(std::mt19937_64& rng) const {
    const Element l = sample_upper(rng);
    auto above = members_of(exact_->up(l));
    return {l, above[std::uniform_int_distribution<std::size_t>(0, above.size() - 1)(rng)]};
  }

  std::string format(const Interval& x) const { return "[" + exact_->id(x.low) + ", " + exact_->id(x.high) + "]"; }
  std::string format_upper(Element u) const { return exact_->id(u); }

 private:
  std::shared_ptr<const FinitePoset> exact_;
  Element bottom_ = 0;
  Element top_ = 0;
};

static_assert(ApproximationFramework<IntervalFramework>);

inline IntervalFramework build_interval_framework(FinitePoset exact) { return IntervalFramework(std::move(exact)); }

}  // namespace aft
