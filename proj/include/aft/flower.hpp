#pragma once

// Flowers: nonempty convex subsets of a bounded-complete cpo that contain
// their own glb. A flower decomposes into its glb (ALB, an exact element)
// and the antichain of its maximal elements (AUB), and is recovered as
// up(alb) ∩ down(aub). Precision is reverse inclusion.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "aft/error.hpp"
#include "aft/framework.hpp"
#include "aft/poset.hpp"

namespace aft {

/// A nonempty antichain of exact elements: an AUB of the flower space.
struct Antichain {
  ElementSet elements;

  friend bool operator==(const Antichain&, const Antichain&) = default;
  friend bool operator<(const Antichain& a, const Antichain& b) { return a.elements < b.elements; }
};

struct Flower {
  Element alb = 0;
  Antichain aub;
  ElementSet members;

  friend bool operator==(const Flower& a, const Flower& b) { return a.members == b.members; }
};

/// Explains why p is not a bounded-complete cpo, or returns nullopt.
inline std::optional<std::string> bounded_complete_defect(const FinitePoset& p) {
  if (p.size() == 0) return "the exact space is empty";
  if (!p.least()) return "the exact space has no least element";
  if (auto pr = pair_without_glb(p))
    return "the nonempty subset {" + p.id(pr->first) + "," + p.id(pr->second) + "} has no glb";
  return std::nullopt;
}

class FlowerFramework {
 public:
  using Approximant = Flower;
  using Upper = Antichain;

  /// Flowers are only enumerated over exact posets up to this size.
  static constexpr std::size_t kMaxEnumeratedExact = 12;

  explicit FlowerFramework(std::shared_ptr<const FinitePoset> exact) : exact_(std::move(exact)) {
    if (auto defect = bounded_complete_defect(*exact_))
      throw PreconditionError("exact space is not a bounded-complete cpo: " + *defect);
    bottom_ = *exact_->least();
    top_ = Antichain{exact_->max_set(exact_->full_set())};
  }
  explicit FlowerFramework(FinitePoset exact)
      : FlowerFramework(std::make_shared<const FinitePoset>(std::move(exact))) {}

  const FinitePoset& exact() const { return *exact_; }
  const std::shared_ptr<const FinitePoset>& exact_ptr() const { return exact_; }

  Element bottom() const { return bottom_; }
  const Antichain& top() const { return top_; }
  Antichain upper_bottom() const { return Antichain{exact_->singleton(bottom_)}; }

  /// U1 ≼ U2 iff down(U1) ⊆ down(U2).
  bool upper_leq(const Antichain& a, const Antichain& b) const {
    bool ok = true;
    for_each_member(a.elements, [&](Element x) { ok = ok && (exact_->up(x) & b.elements).any(); });
    return ok;
  }

  /// l ≼ U iff l lies below some member of U.
  bool lower_upper_leq(Element l, const Antichain& u) const { return (exact_->up(l) & u.elements).any(); }

  /// max of the intersection of the down-sets; top for the empty set.
  Antichain upper_glb(std::span<const Antichain> us) const {
    if (us.empty()) return top_;
    ElementSet meet = exact_->full_set();
    for (const auto& u : us) meet &= exact_->lower_closure(u.elements);
    return Antichain{exact_->max_set(meet)};
  }

  /// max of the union of the down-sets; {bottom} for the empty set.
  Antichain upper_lub(std::span<const Antichain> us) const {
    ElementSet join = exact_->singleton(bottom_);
    for (const auto& u : us) join |= u.elements;
    return Antichain{exact_->max_set(join)};
  }

  Antichain upper_floor(Element l) const { return Antichain{exact_->singleton(l)}; }

  Element alb(const Flower& x) const { return x.alb; }
  const Antichain& aub(const Flower& x) const { return x.aub; }

  /// up(l) ∩ down(U), defined when l ≼ U.
  std::optional<Flower> recompose(Element l, const Antichain& u) const {
    if (!lower_upper_leq(l, u)) return std::nullopt;
    ElementSet m = exact_->up(l) & exact_->lower_closure(u.elements);
    return Flower{l, Antichain{exact_->max_set(m)}, std::move(m)};
  }

  bool precision_leq(const Flower& x, const Flower& y) const { return y.members.is_subset_of(x.members); }

  bool approximates(const Flower& x, Element e) const {
    exact_->check(e);
    return x.members.test(e);
  }
  ElementSet members(const Flower& x) const { return x.members; }

  Flower least() const { return *recompose(bottom_, top_); }

  Flower exact_approximant(Element e) const {
    exact_->check(e);
    return Flower{e, Antichain{exact_->singleton(e)}, exact_->singleton(e)};
  }
  bool is_exact(const Flower& x) const { return x.members.count() == 1; }
  std::optional<Element> exact_value(const Flower& x) const {
    return is_exact(x) ? std::optional<Element>(x.alb) : std::nullopt;
  }

  bool is_flower(const ElementSet& s) const {
    if (s.none() || !exact_->is_convex(s)) return false;
    auto g = exact_->glb(s);
    return g && s.test(*g);
  }

  /// The flower with exactly these members; s must be a flower.
  Flower from_members(ElementSet s) const {
    if (!is_flower(s)) throw PreconditionError(exact_->format_set(s) + " is not a flower");
    const Element g = *exact_->glb(s);
    Antichain top{exact_->max_set(s)};
    return Flower{g, std::move(top), std::move(s)};
  }

  /// The least flower containing the nonempty set s:
  /// {x | glb(s) <= x <= m for some maximal m of s}.
  Flower flower_closure(const ElementSet& s) const {
    if (s.none()) throw PreconditionError("flower closure of the empty set");
    const Element g = *exact_->glb(s);
    Antichain top{exact_->max_set(s)};
    ElementSet m = exact_->up(g) & exact_->lower_closure(top.elements);
    return Flower{g, std::move(top), std::move(m)};
  }

  /// Least upper bound in <flowers, ⊇>: the intersection, if it is a flower.
  /// Every flower inside a convex set I lies in up(l) ∩ I for its glb l, so
  /// a largest one exists exactly when I has a least element.
  std::optional<Flower> lub(std::span<const Flower> xs) const {
    if (xs.empty()) return least();
    ElementSet meet = exact_->full_set();
    for (const auto& x : xs) meet &= x.members;
    if (!is_flower(meet)) return std::nullopt;
    return from_members(std::move(meet));
  }

  /// Nonempty antichains inside s, in a fixed order.
  std::vector<Antichain> antichains_within(const ElementSet& s, std::size_t cap) const {
    std::vector<Antichain> out;
    ElementSet current = exact_->empty_set();
    // allowed holds candidates above the last chosen index that are
    // incomparable with everything chosen so far.
    std::function<void(const ElementSet&)> rec = [&](const ElementSet& allowed) {
      for (auto i = allowed.find_first(); i != ElementSet::npos; i = allowed.find_next(i)) {
        current.set(i);
        if (out.size() >= cap) throw CapExceeded("too many antichains to enumerate");
        out.push_back(Antichain{current});
        ElementSet next = allowed & ~(exact_->up(i) | exact_->down(i));
        for (auto j = next.find_first(); j != ElementSet::npos && j <= i; j = next.find_next(j)) next.reset(j);
        rec(next);
        current.reset(i);
      }
    };
    rec(s);
    return out;
  }

  std::vector<Antichain> enumerate_upper(std::size_t cap) const {
    if (exact_->size() > kMaxEnumeratedExact) throw CapExceeded("flower spaces are enumerated only up to 12 exact elements");
    return antichains_within(exact_->full_set(), cap);
  }

  /// Flowers are in bijection with pairs (l, A), A a nonempty antichain in up(l).
  std::vector<Flower> enumerate_approximants(std::size_t cap) const {
    if (exact_->size() > kMaxEnumeratedExact) throw CapExceeded("flower spaces are enumerated only up to 12 exact elements");
    std::vector<Flower> out;
    for (Element l = 0; l < exact_->size(); ++l)
      for (auto& a : antichains_within(exact_->up(l), cap)) {
        if (out.size() >= cap) throw CapExceeded("too many flowers to enumerate");
        out.push_back(*recompose(l, a));
      }
    return out;
  }

  Antichain sample_antichain_within(const ElementSet& s, std::mt19937_64& rng) const {
    auto pool = members_of(s);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t want = std::uniform_int_distribution<std::size_t>(1, pool.size())(rng);
    ElementSet chosen = exact_->empty_set();
    ElementSet blocked = exact_->empty_set();
    std::size_t taken = 0;
    for (Element x : pool) {
      if (taken == want) break;
      if (blocked.test(x)) continue;
      chosen.set(x);
      blocked |= exact_->up(x) | exact_->down(x);
      ++taken;
    }
    return Antichain{chosen};
  }

  Antichain sample_upper(std::mt19937_64& rng) const { return sample_antichain_within(exact_->full_set(), rng); }

  Flower sample_approximant(std::mt19937_64& rng) const {
    const Element l = std::uniform_int_distribution<Element>(0, exact_->size() - 1)(rng);
    return *recompose(l, sample_antichain_within(exact_->up(l), rng));
  }

  /// "⟨alb | {aub members}⟩"
  std::string format(const Flower& x) const {
    return "⟨" + exact_->id(x.alb) + " | " + exact_->format_set(x.aub.elements) + "⟩";
  }
  std::string format_upper(const Antichain& u) const { return exact_->format_set(u.elements); }
  std::string format_members(const Flower& x) const { return exact_->format_set(x.members); }

 private:
  std::shared_ptr<const FinitePoset> exact_;
  Element bottom_ = 0;
  Antichain top_;
};

static_assert(ApproximationFramework<FlowerFramework>);

inline FlowerFramework build_flower_framework(FinitePoset exact) { return FlowerFramework(std::move(exact)); }

/// An element of L_f ∪ U_f.
using FlowerBound = std::variant<Element, Antichain>;

/// An order on L_f ∪ U_f; the flower composition order is the default.
using CompositionOrder = std::function<bool(const FlowerBound&, const FlowerBound&)>;

/// b1 ≼ b2 iff down(b1) ⊆ down(b2), and b1 ∈ L_f or b2 ∈ U_f.
inline bool composition_leq(const FlowerFramework& fw, const FlowerBound& b1, const FlowerBound& b2) {
  const auto& C = fw.exact();
  auto down = [&](const FlowerBound& b) {
    return std::holds_alternative<Element>(b) ? C.down(std::get<Element>(b))
                                              : C.lower_closure(std::get<Antichain>(b).elements);
  };
  const bool side = std::holds_alternative<Element>(b1) || std::holds_alternative<Antichain>(b2);
  return side && down(b1).is_subset_of(down(b2));
}

inline CompositionOrder flower_composition_order(const FlowerFramework& fw) {
  return [&fw](const FlowerBound& a, const FlowerBound& b) { return composition_leq(fw, a, b); };
}

/// Exhaustively checks the four flower properties (chain, weak and abstract
/// interlattice lub, interlattice glb) directly on sets, plus that the given
/// composition order is a partial order on L_f ∪ U_f. All lubs and glbs are
/// found by search over the enumerated spaces under `order`.
inline Report verify_flower_properties(const FlowerFramework& fw, const CompositionOrder& order,
                                         const CheckLimits& limits = {}) {
  const auto& C = fw.exact();
  Report report;
  std::vector<Antichain> uppers;
  std::vector<Flower> flowers;
  try {
    uppers = fw.enumerate_upper(limits.max_upper);
    flowers = fw.enumerate_approximants(limits.max_approximants);
  } catch (const CapExceeded&) {
    report.results.push_back({"enumeration", CheckStatus::sampled, std::nullopt, "exact space too large to enumerate"});
    return report;
  }
  std::mt19937_64 rng(limits.seed);
  auto fu = [&](const Antichain& u) { return C.format_set(u.elements); };
  auto leq_lu = [&](Element l, const Antichain& u) { return order(FlowerBound{l}, FlowerBound{u}); };
  auto leq_ll = [&](Element a, Element b) { return order(FlowerBound{a}, FlowerBound{b}); };
  auto leq_uu = [&](const Antichain& a, const Antichain& b) { return order(FlowerBound{a}, FlowerBound{b}); };

  // Least upper bound of s within L_f under the given order.
  auto lub_l = [&](const ElementSet& s) -> std::optional<Element> {
    std::vector<Element> ubs;
    for (Element x = 0; x < C.size(); ++x) {
      bool ub = true;
      for_each_member(s, [&](Element y) { ub = ub && leq_ll(y, x); });
      if (ub) ubs.push_back(x);
    }
    for (Element c : ubs)
      if (std::all_of(ubs.begin(), ubs.end(), [&](Element o) { return leq_ll(c, o); })) return c;
    return std::nullopt;
  };
  // Greatest lower bound of s within U_f under the given order.
  auto glb_u = [&](const std::vector<Antichain>& s) -> std::optional<Antichain> {
    std::vector<const Antichain*> lbs;
    for (const auto& u : uppers)
      if (std::all_of(s.begin(), s.end(), [&](const Antichain& v) { return leq_uu(u, v); })) lbs.push_back(&u);
    for (auto* c : lbs)
      if (std::all_of(lbs.begin(), lbs.end(), [&](const Antichain* o) { return leq_uu(*o, *c); })) return *c;
    return std::nullopt;
  };

  {
    AxiomCheck c("flower.composition_order", false);
    std::vector<FlowerBound> all;
    for (Element x = 0; x < C.size(); ++x) all.emplace_back(x);
    for (const auto& u : uppers) all.emplace_back(u);
    auto show = [&](const FlowerBound& b) {
      return std::holds_alternative<Element>(b) ? C.id(std::get<Element>(b)) : fu(std::get<Antichain>(b));
    };
    for (std::size_t i = 0; i < all.size() && !c.failed(); ++i) {
      c.expect(order(all[i], all[i]), [&] { return "not reflexive at " + show(all[i]); });
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i != j && order(all[i], all[j]))
          c.expect(!order(all[j], all[i]), [&] { return show(all[i]) + " and " + show(all[j]) + " are equivalent"; });
        if (!order(all[i], all[j])) continue;
        for (std::size_t k = 0; k < all.size(); ++k)
          if (order(all[j], all[k]))
            c.expect(order(all[i], all[k]),
                     [&] { return "not transitive: " + show(all[i]) + ", " + show(all[j]) + ", " + show(all[k]); });
      }
    }
    report.results.push_back(std::move(c).done());
  }

  {
    AxiomCheck c("flower.chain_lub", false);
    for (const auto& chain : enumerate_chains(C, limits.max_chains))
      for (const auto& u : uppers) {
        bool below = true;
        for_each_member(chain, [&](Element l) { below = below && leq_lu(l, u); });
        if (!below) continue;
        auto j = lub_l(chain);
        c.expect(j && leq_lu(*j, u), [&] { return "chain " + C.format_set(chain) + " under " + fu(u); });
      }
    report.results.push_back(std::move(c).done());
  }

  {
    AxiomCheck c("flower.weak_lub", false);
    for (const auto& x : flowers)
      for (Element l = 0; l < C.size(); ++l) {
        if (!leq_lu(l, x.aub)) continue;
        ElementSet pair = C.set_of({l, x.alb});
        auto j = lub_l(pair);
        c.expect(j && leq_lu(*j, x.aub), [&] { return C.id(l) + " with flower " + C.format_set(x.members); });
      }
    report.results.push_back(std::move(c).done());
  }

  {
    AxiomCheck c("flower.shared_aub_lub", false);
    std::map<Antichain, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < flowers.size(); ++i) groups[flowers[i].aub].push_back(i);
    bool exhaustive = true;
    for (const auto& [u, group] : groups)
      exhaustive &= for_each_subset<std::size_t>(group, limits, rng, [&](const std::vector<std::size_t>& s) {
        if (c.failed()) return;
        ElementSet albs = C.empty_set();
        for (auto i : s) albs.set(flowers[i].alb);
        auto lalb = lub_l(albs);
        // lub among all flowers under reverse inclusion, by search.
        std::vector<const Flower*> ubs;
        for (const auto& f : flowers)
          if (std::all_of(s.begin(), s.end(), [&](std::size_t i) { return f.members.is_subset_of(flowers[i].members); }))
            ubs.push_back(&f);
        const Flower* least = nullptr;
        for (auto* f : ubs)
          if (std::all_of(ubs.begin(), ubs.end(), [&](const Flower* o) { return o->members.is_subset_of(f->members); }))
            least = f;
        c.expect(lalb && least && least->alb == *lalb && least->aub == u, [&] {
          std::string d = "flowers sharing AUB " + fu(u) + ":";
          for (auto i : s) d += " " + C.format_set(flowers[i].members);
          return d;
        });
      });
    auto r = std::move(c).done();
    if (r.status == CheckStatus::pass && !exhaustive) r.status = CheckStatus::sampled;
    report.results.push_back(std::move(r));
  }

  {
    AxiomCheck c("flower.glb", false);
    std::vector<std::size_t> idx(uppers.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto check = [&](const std::vector<std::size_t>& s) {
      if (c.failed()) return;
      std::vector<Antichain> us;
      for (auto i : s) us.push_back(uppers[i]);
      auto g = glb_u(us);
      for (Element l = 0; l < C.size(); ++l) {
        const bool below_all = std::all_of(us.begin(), us.end(), [&](const Antichain& u) { return leq_lu(l, u); });
        if (!below_all) continue;
        c.expect(g && leq_lu(l, *g), [&] {
          std::string d = C.id(l) + " below each of";
          for (const auto& u : us) d += " " + fu(u);
          return d + " but not their glb";
        });
      }
    };
    check({});
    const bool full = for_each_subset<std::size_t>(idx, limits, rng, check);
    auto r = std::move(c).done();
    // Binary glbs fold to glbs of any finite set, so pairs settle the rest.
    if (!full) r.note = "pairwise reduction";
    report.results.push_back(std::move(r));
  }
  return report;
}

inline Report verify_flower_properties(const FlowerFramework& fw, const CheckLimits& limits = {}) {
  return verify_flower_properties(fw, flower_composition_order(fw), limits);
}

}  // namespace aft
