#pragma once

// Explicit finite partial orders and the order-theoretic primitives used by
// every other part of the library.
//
// Elements are dense indices 0..size()-1 with an opaque string identifier
// each. The order is stored transitively closed as one up-set and one
// down-set bitset per element, so all primitives reduce to bitset algebra.
//
// Only finite posets are represented. In that setting every subset is
// closed (finite chains contain their bounds) and a poset is a cpo exactly
// when it has a least element; classify() relies on both facts.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "aft/error.hpp"

namespace aft {

using Element = std::size_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultMaxElements = 4096;
inline constexpr std::size_t kDefaultMaxAtoms = 16;

/// Calls f(e) for every member of s, in increasing index order.
template <class F>
void for_each_member(const ElementSet& s, F&& f) {
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) f(Element{i});
}

inline std::vector<Element> members_of(const ElementSet& s) {
  std::vector<Element> out;
  out.reserve(s.count());
  for_each_member(s, [&](Element e) { out.push_back(e); });
  return out;
}

struct PosetClassification {
  bool has_least = false;
  bool is_cpo = false;
  bool is_bounded_complete = false;
  bool is_complete_lattice = false;

  friend bool operator==(const PosetClassification&, const PosetClassification&) = default;
};

class FinitePoset {
 public:
  FinitePoset() = default;

  /// Builds a poset from a covering relation: each pair (x, y) states x <= y.
  /// The reflexive-transitive closure is taken; cycles are rejected.
  static FinitePoset from_hasse(std::vector<std::string> ids,
                                const std::vector<std::pair<std::string, std::string>>& covers,
                                std::size_t max_elements = kDefaultMaxElements) {
    FinitePoset p(std::move(ids), max_elements);
    const std::size_t n = p.size();
    std::vector<ElementSet> up(n, ElementSet(n));
    for (Element i = 0; i < n; ++i) up[i].set(i);
    for (const auto& [lo, hi] : covers) up[p.index_of(lo)].set(p.index_of(hi));
    // Warshall on bit rows.
    for (Element k = 0; k < n; ++k)
      for (Element i = 0; i < n; ++i)
        if (up[i].test(k)) up[i] |= up[k];
    p.install(std::move(up));
    return p;
  }

  /// Builds a poset from a predicate that must already be a partial order.
  /// Reflexivity and transitivity are verified unless validate is false
  /// (built-in constructions whose order is correct by construction).
  static FinitePoset from_relation(std::vector<std::string> ids,
                                   const std::function<bool(Element, Element)>& leq,
                                   std::size_t max_elements = kDefaultMaxElements, bool validate = true) {
    FinitePoset p(std::move(ids), max_elements);
    const std::size_t n = p.size();
    std::vector<ElementSet> up(n, ElementSet(n));
    for (Element i = 0; i < n; ++i)
      for (Element j = 0; j < n; ++j)
        if (leq(i, j)) up[i].set(j);
    if (validate) {
      for (Element i = 0; i < n; ++i)
        if (!up[i].test(i)) throw InvalidPoset("relation is not reflexive at " + p.ids_[i]);
      for (Element i = 0; i < n; ++i)
        for_each_member(up[i], [&](Element j) {
          if (!up[j].is_subset_of(up[i]))
            throw InvalidPoset("relation is not transitive through " + p.ids_[j]);
        });
    }
    p.install(std::move(up));
    return p;
  }

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  const std::string& id(Element x) const {
    check(x);
    return ids_[x];
  }

  Element index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw ElementNotFound(std::string(id));
    return it->second;
  }

  bool contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

  void check(Element x) const {
    if (x >= size()) throw ElementNotFound("#" + std::to_string(x));
  }

  void check(const ElementSet& s) const {
    if (s.size() != size())
      throw ElementNotFound("set over " + std::to_string(s.size()) + " elements used with a poset of " +
                            std::to_string(size()));
  }

  bool leq(Element x, Element y) const {
    check(x);
    check(y);
    return up_[x].test(y);
  }
  bool lt(Element x, Element y) const { return x != y && leq(x, y); }
  bool leq(std::string_view x, std::string_view y) const { return leq(index_of(x), index_of(y)); }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }

  /// {y | x <= y}
  const ElementSet& up(Element x) const {
    check(x);
    return up_[x];
  }
  /// {y | y <= x}
  const ElementSet& down(Element x) const {
    check(x);
    return down_[x];
  }

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const {
    ElementSet s(size());
    s.set();
    return s;
  }
  ElementSet singleton(Element x) const {
    check(x);
    ElementSet s(size());
    s.set(x);
    return s;
  }
  ElementSet set_of(std::span<const Element> xs) const {
    ElementSet s(size());
    for (Element x : xs) {
      check(x);
      s.set(x);
    }
    return s;
  }
  ElementSet set_of(std::initializer_list<Element> xs) const {
    return set_of(std::span<const Element>(xs.begin(), xs.size()));
  }
  ElementSet set_of_ids(std::span<const std::string> names) const {
    ElementSet s(size());
    for (const auto& n : names) s.set(index_of(n));
    return s;
  }
  ElementSet set_of_ids(std::initializer_list<std::string> names) const {
    return set_of_ids(std::span<const std::string>(names.begin(), names.size()));
  }

  ElementSet upper_bounds(const ElementSet& s) const {
    check(s);
    ElementSet ub = full_set();
    for_each_member(s, [&](Element x) { ub &= up_[x]; });
    return ub;
  }

  ElementSet lower_bounds(const ElementSet& s) const {
    check(s);
    ElementSet lb = full_set();
    for_each_member(s, [&](Element x) { lb &= down_[x]; });
    return lb;
  }

  /// Least upper bound; lub of the empty set is the least element.
  std::optional<Element> lub(const ElementSet& s) const { return least_of(upper_bounds(s)); }

  /// Greatest lower bound; glb of the empty set is the greatest element.
  std::optional<Element> glb(const ElementSet& s) const { return greatest_of(lower_bounds(s)); }

  std::optional<Element> lub(Element x, Element y) const { return lub(set_of({x, y})); }
  std::optional<Element> glb(Element x, Element y) const { return glb(set_of({x, y})); }

  /// The least member of s, if s has one.
  std::optional<Element> least_of(const ElementSet& s) const {
    check(s);
    for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
      if (s.is_subset_of(up_[i])) return Element{i};
    return std::nullopt;
  }

  std::optional<Element> greatest_of(const ElementSet& s) const {
    check(s);
    for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
      if (s.is_subset_of(down_[i])) return Element{i};
    return std::nullopt;
  }

  std::optional<Element> least() const { return least_; }
  std::optional<Element> greatest() const { return greatest_; }

  /// Members of s with no strictly smaller member in s.
  ElementSet min_set(const ElementSet& s) const {
    check(s);
    ElementSet out(size());
    for_each_member(s, [&](Element x) {
      if ((down_[x] & s).count() == 1) out.set(x);
    });
    return out;
  }

  /// Members of s with no strictly larger member in s.
  ElementSet max_set(const ElementSet& s) const {
    check(s);
    ElementSet out(size());
    for_each_member(s, [&](Element x) {
      if ((up_[x] & s).count() == 1) out.set(x);
    });
    return out;
  }

  bool is_chain(const ElementSet& s) const {
    check(s);
    bool ok = true;
    for_each_member(s, [&](Element x) {
      if (ok && !s.is_subset_of(up_[x] | down_[x])) ok = false;
    });
    return ok;
  }

  bool is_antichain(const ElementSet& s) const {
    check(s);
    bool ok = true;
    for_each_member(s, [&](Element x) {
      if (ok && ((up_[x] | down_[x]) & s).count() != 1) ok = false;
    });
    return ok;
  }

  /// x <= y <= z with x, z in s forces y in s; equivalently up(s) & down(s) is s.
  bool is_convex(const ElementSet& s) const {
    return (upper_closure(s) & lower_closure(s)).is_subset_of(s);
  }

  ElementSet lower_closure(const ElementSet& s) const {
    check(s);
    ElementSet out(size());
    for_each_member(s, [&](Element x) { out |= down_[x]; });
    return out;
  }

  ElementSet upper_closure(const ElementSet& s) const {
    check(s);
    ElementSet out(size());
    for_each_member(s, [&](Element x) { out |= up_[x]; });
    return out;
  }

  /// Identifiers of the members of s, sorted, as "{a,b}".
  std::string format_set(const ElementSet& s) const {
    check(s);
    std::vector<std::string> names;
    for_each_member(s, [&](Element x) { names.push_back(ids_[x]); });
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ",";
      out += names[i];
    }
    return out + "}";
  }

  std::vector<std::string> sorted_ids(const ElementSet& s) const {
    check(s);
    std::vector<std::string> names;
    for_each_member(s, [&](Element x) { names.push_back(ids_[x]); });
    std::sort(names.begin(), names.end());
    return names;
  }

  /// Number of elements on a longest chain.
  std::size_t height() const {
    // Elements sorted by down-set size form a linear extension.
    std::vector<Element> order(size());
    for (Element i = 0; i < size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](Element a, Element b) { return down_[a].count() < down_[b].count(); });
    std::vector<std::size_t> depth(size(), 1);
    std::size_t best = 0;
    for (Element x : order) {
      for_each_member(down_[x], [&](Element y) {
        if (y != x) depth[x] = std::max(depth[x], depth[y] + 1);
      });
      best = std::max(best, depth[x]);
    }
    return best;
  }

  /// Covering pairs (x, y): x < y with nothing strictly between.
  std::vector<std::pair<Element, Element>> hasse() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element x = 0; x < size(); ++x)
      for (Element y : members_of(max_set_excluding(x)))
        out.emplace_back(x, y);
    return out;
  }

 private:
  FinitePoset(std::vector<std::string> ids, std::size_t max_elements) : ids_(std::move(ids)) {
    if (ids_.size() > max_elements)
      throw CapExceeded("poset has " + std::to_string(ids_.size()) + " elements, cap is " +
                        std::to_string(max_elements));
    for (Element i = 0; i < ids_.size(); ++i)
      if (!index_.emplace(ids_[i], i).second) throw InvalidPoset("duplicate identifier: " + ids_[i]);
  }

  void install(std::vector<ElementSet> up) {
    const std::size_t n = size();
    std::vector<ElementSet> down(n, ElementSet(n));
    for (Element i = 0; i < n; ++i)
      for_each_member(up[i], [&](Element j) { down[j].set(i); });
    for (Element i = 0; i < n; ++i)
      if ((up[i] & down[i]).count() != 1) {
        auto both = up[i] & down[i];
        both.reset(i);
        throw InvalidPoset("order contains a cycle through " + ids_[i] + " and " + ids_[both.find_first()]);
      }
    up_ = std::move(up);
    down_ = std::move(down);
    least_ = least_of(full_set());
    greatest_ = greatest_of(full_set());
  }

  // Minimal strict upper bounds of x: its upper covers.
  ElementSet max_set_excluding(Element x) const {
    ElementSet strict = up_[x];
    strict.reset(x);
    return min_set(strict);
  }

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Element> index_;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
  std::optional<Element> least_;
  std::optional<Element> greatest_;
};

/// Order-theoretic class of a finite poset.
///
/// Finite shortcut: is_cpo coincides with having a least element, and
/// bounded-completeness reduces to every pair having a glb (glb of a larger
/// nonempty set folds pairwise).
inline PosetClassification classify(const FinitePoset& p) {
  PosetClassification c;
  c.has_least = p.least().has_value();
  c.is_cpo = c.has_least;
  bool pairwise_glb = true;
  for (Element x = 0; x < p.size() && pairwise_glb; ++x)
    for (Element y = x + 1; y < p.size(); ++y)
      if (!p.glb(x, y)) {
        pairwise_glb = false;
        break;
      }
  c.is_bounded_complete = c.is_cpo && pairwise_glb;
  c.is_complete_lattice = c.is_bounded_complete && p.greatest().has_value();
  return c;
}

/// A nonempty subset without a glb, if any; used in precondition messages.
inline std::optional<std::pair<Element, Element>> pair_without_glb(const FinitePoset& p) {
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = x + 1; y < p.size(); ++y)
      if (!p.glb(x, y)) return std::pair{x, y};
  return std::nullopt;
}

enum class SetOrder { subset, superset };

/// "{a,b}" for the atoms selected by mask, in the given atom order.
inline std::string format_subset(std::span<const std::string> atoms, std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (mask >> i & 1U) {
      if (!first) out += ",";
      out += atoms[i];
      first = false;
    }
  return out + "}";
}

/// All subsets of atoms. Element index i is the subset with bit mask i.
inline FinitePoset powerset_lattice(std::span<const std::string> atoms, SetOrder order,
                                    std::size_t max_atoms = kDefaultMaxAtoms,
                                    std::size_t max_elements = kDefaultMaxElements) {
  if (atoms.size() > max_atoms || atoms.size() >= 63)
    throw CapExceeded("powerset over " + std::to_string(atoms.size()) + " atoms, cap is " +
                      std::to_string(max_atoms));
  const std::uint64_t n = std::uint64_t{1} << atoms.size();
  if (n > max_elements)
    throw CapExceeded("powerset has " + std::to_string(n) + " elements, cap is " + std::to_string(max_elements));
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::uint64_t m = 0; m < n; ++m) ids.push_back(format_subset(atoms, m));
  const bool sub = order == SetOrder::subset;
  return FinitePoset::from_relation(
      std::move(ids),
      [sub](Element i, Element j) { return sub ? (i & ~j) == 0 : (j & ~i) == 0; }, max_elements, false);
}

/// Tuples ordered pointwise. With factors f_0..f_{k-1}, the tuple (i_0, ..., i_{k-1})
/// has index sum(i_j * stride_j), the last factor varying fastest.
inline FinitePoset product_poset(std::span<const FinitePoset> factors,
                                 std::size_t max_elements = kDefaultMaxElements) {
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() == 0) {
      total = 0;
      break;
    }
    if (total > max_elements / f.size())
      throw CapExceeded("product poset exceeds the cap of " + std::to_string(max_elements) + " elements");
    total *= f.size();
  }
  if (total > max_elements)
    throw CapExceeded("product poset exceeds the cap of " + std::to_string(max_elements) + " elements");

  auto decode = [&](Element idx) {
    std::vector<Element> t(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      t[k] = idx % factors[k].size();
      idx /= factors[k].size();
    }
    return t;
  };

  std::vector<std::string> ids;
  ids.reserve(total);
  for (Element i = 0; i < total; ++i) {
    auto t = decode(i);
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += ",";
      s += factors[k].id(t[k]);
    }
    ids.push_back(s + ")");
  }
  std::vector<std::vector<Element>> tuples(total);
  for (Element i = 0; i < total; ++i) tuples[i] = decode(i);
  return FinitePoset::from_relation(
      std::move(ids),
      [&](Element a, Element b) {
        for (std::size_t k = 0; k < factors.size(); ++k)
          if (!factors[k].leq(tuples[a][k], tuples[b][k])) return false;
        return true;
      },
      max_elements, false);
}

}  // namespace aft
