#pragma once

// Weighted abstract dialectical frameworks with acceptance conditions given
// as expression trees over the values of parent arguments.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aft/engine.hpp"
#include "aft/error.hpp"
#include "aft/poset.hpp"

namespace aft {

struct AcceptanceExpr {
  enum class Kind { constant, parent, glb, lub, table };

  Kind kind = Kind::constant;
  Element value = 0;         // constant
  std::size_t argument = 0;  // parent
  std::vector<AcceptanceExpr> args;  // glb, lub
  std::vector<std::size_t> table_parents;
  std::map<std::vector<Element>, Element> table;

  static AcceptanceExpr constant(Element v) { return {Kind::constant, v, 0, {}, {}, {}}; }
  static AcceptanceExpr parent(std::size_t a) { return {Kind::parent, 0, a, {}, {}, {}}; }
  static AcceptanceExpr meet(std::vector<AcceptanceExpr> xs) { return {Kind::glb, 0, 0, std::move(xs), {}, {}}; }
  static AcceptanceExpr join(std::vector<AcceptanceExpr> xs) { return {Kind::lub, 0, 0, std::move(xs), {}, {}}; }
  static AcceptanceExpr lookup(std::vector<std::size_t> parents, std::map<std::vector<Element>, Element> rows) {
    return {Kind::table, 0, 0, {}, std::move(parents), std::move(rows)};
  }

  /// True when built only from constants, parents and glb.
  bool is_glb_only() const {
    if (kind == Kind::lub || kind == Kind::table) return false;
    for (const auto& a : args)
      if (!a.is_glb_only()) return false;
    return true;
  }
};

class Wadf {
 public:
  Wadf(std::vector<std::string> arguments, std::shared_ptr<const FinitePoset> values,
       std::vector<AcceptanceExpr> acceptance)
      : arguments_(std::move(arguments)), values_(std::move(values)), acceptance_(std::move(acceptance)) {
    if (acceptance_.size() != arguments_.size())
      throw ParseError("every argument needs exactly one acceptance condition");
    for (std::size_t i = 0; i < acceptance_.size(); ++i) validate(acceptance_[i], arguments_[i]);
  }

  const std::vector<std::string>& arguments() const { return arguments_; }
  const FinitePoset& values() const { return *values_; }
  const std::vector<AcceptanceExpr>& acceptance() const { return acceptance_; }

  std::size_t index_of(const std::string& arg) const {
    for (std::size_t i = 0; i < arguments_.size(); ++i)
      if (arguments_[i] == arg) return i;
    throw ElementNotFound(arg);
  }

  /// Value of expression e for argument `owner` under the assignment v.
  Element evaluate(const AcceptanceExpr& e, const std::vector<Element>& v, std::size_t owner) const {
    using K = AcceptanceExpr::Kind;
    switch (e.kind) {
      case K::constant:
        return e.value;
      case K::parent:
        return v[e.argument];
      case K::glb:
      case K::lub: {
        ElementSet s = values_->empty_set();
        for (const auto& a : e.args) s.set(evaluate(a, v, owner));
        auto r = e.kind == K::glb ? values_->glb(s) : values_->lub(s);
        if (!r)
          throw EvaluationError(std::string(e.kind == K::glb ? "glb" : "lub") + " of " + values_->format_set(s) +
                                " is undefined in the acceptance condition of " + arguments_[owner]);
        return *r;
      }
      case K::table: {
        std::vector<Element> key;
        for (auto p : e.table_parents) key.push_back(v[p]);
        return e.table.at(key);
      }
    }
    return 0;
  }

 private:
  void validate(const AcceptanceExpr& e, const std::string& owner) const {
    using K = AcceptanceExpr::Kind;
    switch (e.kind) {
      case K::constant:
        values_->check(e.value);
        break;
      case K::parent:
        if (e.argument >= arguments_.size()) throw ParseError("unknown parent in the condition of " + owner);
        break;
      case K::glb:
      case K::lub:
        for (const auto& a : e.args) validate(a, owner);
        break;
      case K::table: {
        std::size_t expected = 1;
        for (auto p : e.table_parents) {
          if (p >= arguments_.size()) throw ParseError("unknown parent in the table of " + owner);
          expected *= values_->size();
        }
        for (const auto& [key, out] : e.table) {
          if (key.size() != e.table_parents.size()) throw ParseError("table row of the wrong width for " + owner);
          for (auto k : key) values_->check(k);
          values_->check(out);
        }
        if (e.table.size() != expected) throw ParseError("the table for " + owner + " is not total");
        break;
      }
    }
  }

  std::vector<std::string> arguments_;
  std::shared_ptr<const FinitePoset> values_;
  std::vector<AcceptanceExpr> acceptance_;
};

/// Assignments are tuples in the product of the value poset, one factor per
/// argument; each argument takes the value of its acceptance condition.
inline ExactOperator wadf_operator(const Wadf& w, std::size_t max_elements = kDefaultMaxElements) {
  const std::vector<FinitePoset> factors(w.arguments().size(), w.values());
  auto space = std::make_shared<const FinitePoset>(product_poset(factors, max_elements));
  const std::size_t k = w.arguments().size(), base = w.values().size();
  auto decode = [k, base](Element idx) {
    std::vector<Element> t(k);
    for (std::size_t i = k; i-- > 0;) {
      t[i] = idx % base;
      idx /= base;
    }
    return t;
  };
  return ExactOperator(space, [&](Element x) {
    const auto v = decode(x);
    Element out = 0;
    for (std::size_t i = 0; i < k; ++i) out = out * base + w.evaluate(w.acceptance()[i], v, i);
    return out;
  });
}

}  // namespace aft
