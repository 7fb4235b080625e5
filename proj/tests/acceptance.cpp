// Acceptance run: one PASS/FAIL line per criterion, with its wall time
// against the allowed budget. Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aft/aft.hpp"
#include "support/fixtures.hpp"
#include "support/mutations.hpp"
#include "support/oracles.hpp"

using namespace aft;

namespace {

// Collects the first few problems found while checking one criterion.
class Findings {
 public:
  void fail(const std::string& what) {
    ++count_;
    if (shown_.size() < 5) shown_.push_back(what);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void report(const Report& r, const std::string& where) {
    for (const auto& x : r.results)
      if (x.status == CheckStatus::fail) fail(where + ": " + x.axiom + ": " + x.counterexample.value_or(""));
  }
  bool ok() const { return count_ == 0; }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& shown() const { return shown_; }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> shown_;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<std::string(Findings&)> body;  // returns a short summary
};

std::string failures_of(const Report& r) {
  std::string out;
  for (const auto& x : r.results)
    if (x.status == CheckStatus::fail) out += x.axiom + " ";
  return out;
}

// Belief-state mask {I | I(q) = T, I(r) = F}, found by enumerating the
// eight interpretations of p, q, r (bit 0 = p, bit 1 = q, bit 2 = r).
Element q_known_r_false() {
  Element m = 0;
  for (unsigned i = 0; i < 8; ++i)
    if ((i & 0b010) && !(i & 0b100)) m |= 1u << i;
  return m;
}

// -------------------------------------------------------------- criteria

std::string example1_interval(Findings& f) {
  const auto op = ael_operator(fixtures::example1());
  const IntervalFramework fw(op.domain_ptr());
  const auto u = ultimate_approximator(fw, op);
  const auto& L = fw.exact();
  const Interval stuck{*L.least(), *L.greatest()};
  const auto kk = kripke_kleene(u), wf = well_founded(u);
  f.expect(kk == stuck, "KK = " + fw.format(kk));
  f.expect(wf == stuck, "WF = " + fw.format(wf));
  return "KK = WF = (bottom, top) over " + std::to_string(L.size()) + " belief states";
}

std::string example1_flower(Findings& f) {
  const auto op = ael_operator(fixtures::example1());
  const FlowerFramework fw(op.domain_ptr());
  const auto u = ultimate_approximator(fw, op);
  const auto wf = well_founded(u);
  f.expect(fw.is_exact(wf), "WF is not exact: " + fw.format(wf));
  f.expect(fw.exact_value(wf) == q_known_r_false(), "WF = " + fw.format(wf));
  return "WF exact at " + fw.exact().id(q_known_r_false());
}

std::string example2(Findings& f) {
  const auto w = fixtures::example2();
  const auto op = wadf_operator(w);
  const FlowerFramework fw(op.domain_ptr());
  const auto kk = kripke_kleene(ultimate_approximator(fw, op));
  const auto value = fw.exact_value(kk);
  f.expect(value.has_value(), "KK is not exact: " + fw.format(kk));
  std::string status;
  if (value) {
    const auto& id = fw.exact().id(*value);
    status = id.substr(id.rfind(',') + 1);
    status.pop_back();
    f.expect(status == "tendency-accept", "status = " + status);
  }
  try {
    IntervalFramework rejected(op.domain_ptr());
    f.fail("interval space accepted the product of the value poset");
  } catch (const PreconditionError& e) {
    f.expect(std::string(e.what()).find("greatest") != std::string::npos, e.what());
  }
  try {
    IntervalFramework rejected(w.values());
    f.fail("interval space accepted the value poset");
  } catch (const PreconditionError&) {
  }
  return "status = " + status + "; interval space rejected";
}

std::string fig1(Findings& f) {
  const FlowerFramework fw(fixtures::fig1());
  const auto& C = fw.exact();
  std::set<std::string> flowers, uppers;
  for (const auto& x : fw.enumerate_approximants(100)) flowers.insert(fw.format_members(x));
  for (const auto& u : fw.enumerate_upper(100)) uppers.insert(fw.format_upper(u));
  f.expect(flowers == std::set<std::string>{"{bot}", "{a}", "{b}", "{a,bot}", "{b,bot}", "{a,b,bot}"},
           "flowers differ");
  f.expect(C.size() == 3, "L_f has " + std::to_string(C.size()) + " elements");
  f.expect(uppers == std::set<std::string>{"{bot}", "{a}", "{b}", "{a,b}"}, "U_f differs");

  const Antichain ab{C.set_of_ids({"a", "b"})}, a_only{C.set_of_ids({"a"})};
  const auto r = fw.recompose(C.index_of("a"), ab);
  f.expect(r && r->members == C.set_of_ids({"a"}), "recompose(a, {a,b}) is not {a}");

  const std::vector<FlowerBound> chain{C.index_of("bot"), C.index_of("a"), a_only, ab};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    f.expect(composition_leq(fw, chain[i], chain[i + 1]), "chain link " + std::to_string(i) + " missing");
    f.expect(!composition_leq(fw, chain[i + 1], chain[i]), "chain link " + std::to_string(i) + " not strict");
  }
  return "6 flowers, 3 ALBs, 4 AUBs, chain bot < a < {a} < {a,b}";
}

std::string axiom_suite(Findings& f) {
  std::size_t spaces = 0;
  auto check = [&](const FlowerFramework& fw, const std::string& where) {
    f.report(check_framework(fw), where);
    f.report(verify_flower_properties(fw), where);
    ++spaces;
  };
  check(FlowerFramework(fixtures::fig1()), "fig1");
  {
    const IntervalFramework iv(fixtures::fig1_top());
    f.report(check_framework(iv), "fig1+top intervals");
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 1 + seed % 7;
    check(FlowerFramework(fixtures::to_poset(n, oracle::random_bounded_complete(n, rng))),
          "random cpo seed " + std::to_string(seed));
  }

  // Every mutation must be reported with a counterexample.
  std::size_t caught = 0;
  auto expect_caught = [&](const Report& r, const std::string& axiom, const std::string& name) {
    const auto* x = r.find(axiom);
    const bool hit = x && x->status == CheckStatus::fail && x->counterexample.has_value();
    f.expect(hit, "mutation not caught: " + name + " (failed: " + failures_of(r) + ")");
    caught += hit ? 1 : 0;
  };
  const FlowerFramework base(fixtures::fig1());
  expect_caught(verify_flower_properties(base, mutations::without_side_condition(base)), "flower.composition_order",
                "order without side condition");
  expect_caught(verify_flower_properties(base, mutations::membership_only(base)), "flower.chain_lub",
                "membership-only order");
  expect_caught(check_framework(mutations::ShiftedRecompose(fixtures::wadf_values())),
                "composition.recompose_decompose", "shifted recompose");
  expect_caught(check_framework(mutations::CappedIntervalRecompose(fixtures::fig1_top())),
                "composition.recompose_decompose", "widened interval recompose");
  expect_caught(check_framework(mutations::TotalPrecision(fixtures::fig1())), "structure", "total precision order");
  expect_caught(check_framework(mutations::BlindApproximates(fixtures::fig1())), "approximates.exactness",
                "empty approximation relation");
  {
    const auto r = check_framework(mutations::ReversedPrecision(fixtures::fig1()));
    const bool hit = !r.passed();
    f.expect(hit, "mutation not caught: reversed precision order");
    caught += hit ? 1 : 0;
  }
  return std::to_string(spaces) + " spaces pass; " + std::to_string(caught) + "/7 mutations caught";
}

struct LpCorpus {
  std::vector<oracle::Program> programs;
  std::size_t exhaustive = 0;
};

LpCorpus lp_corpus() {
  LpCorpus c;
  c.programs = oracle::exhaustive_programs();
  c.exhaustive = c.programs.size();
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(seed);
    c.programs.push_back(oracle::random_program(1 + seed % 5, 8, rng));
  }
  return c;
}

std::string lp_equivalence(Findings& f) {
  const auto corpus = lp_corpus();
  for (const auto& prog : corpus.programs) {
    const auto p = fixtures::to_program(prog);
    const auto op = lp_operator(p);
    const IntervalFramework fw(op.domain_ptr());
    const auto a = fitting_approximator(p, fw);
    const auto st = stable_fixpoints(a), sup = supported_fixpoints(a);
    const auto wf = well_founded(a);
    const auto reference = lp_oracle(p);
    const auto [t, u] = oracle::well_founded(prog);
    const std::string where = p.format_rules() + ": ";
    f.expect(st == fixtures::as_elements(oracle::answer_sets(prog)), where + "stable fixpoints differ from answer sets");
    f.expect(st == fixtures::as_elements(reference.answer_sets), where + "stable fixpoints differ from reduct check");
    f.expect(sup == fixtures::as_elements(oracle::supported_models(prog)), where + "supported models differ");
    f.expect(wf == Interval{static_cast<Element>(t), static_cast<Element>(u)}, where + "WF differs from unfounded sets");
    f.expect(wf == Interval{static_cast<Element>(reference.wf_lower), static_cast<Element>(reference.wf_upper)},
             where + "WF differs from the alternating fixpoint");
  }
  return std::to_string(corpus.exhaustive) + " exhaustive + " + std::to_string(corpus.programs.size() - corpus.exhaustive) +
         " random programs, " + std::to_string(f.count()) + " mismatches";
}

template <class Witness, class Op, class Coarse>
void hierarchy_checks(Findings& f, const Witness& w, const Op& op, const Approximator<Coarse>& coarse_a,
                      const std::string& where) {
  const auto flower_ult = ultimate_approximator(w.fine, op);
  f.report(verify_fine_transfer(w, coarse_a), where + " fine");
  f.report(verify_coarse_transfer(w, flower_ult), where + " coarse");
  const auto eq = approximators_equal(induce_coarse(flower_ult, w), ultimate_approximator(w.coarse, op));
  f.expect(eq.status != CheckStatus::fail, where + ": zeta of flower ultimate differs: " + eq.counterexample.value_or(""));
}

std::string precision_transfer(Findings& f) {
  const auto corpus = lp_corpus();
  std::size_t instances = 0;
  for (const auto& prog : corpus.programs) {
    const auto p = fixtures::to_program(prog);
    const auto op = lp_operator(p);
    const auto w = interval_flower_witness(op.domain_ptr());
    const auto fitting = fitting_approximator(p, w.coarse);
    const auto ultimate = ultimate_approximator(w.coarse, op);
    const std::string where = p.format_rules();
    f.report(verify_precision_transfer(fitting, ultimate), where);
    hierarchy_checks(f, w, op, fitting, where);
    ++instances;
  }
  const auto op = ael_operator(fixtures::example1());
  const auto w = interval_flower_witness(op.domain_ptr());
  hierarchy_checks(f, w, op, ultimate_approximator(w.coarse, op), "Example 1");
  f.report(check_space_precision(w), "Example 1 witness");
  ++instances;
  return std::to_string(instances) + " instances, " + std::to_string(f.count()) + " violations";
}

template <ApproximationFramework F>
void confluence_on(Findings& f, const Approximator<F>& a, std::uint64_t seed_base, const std::string& where,
                   std::size_t& runs) {
  const auto wf = well_founded(a);
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto t = run_wf_induction(a, random_strategy<F>(seed_base + k));
    f.expect(t.terminal, where + ": strategy " + std::to_string(k) + " stalled");
    f.expect(t.limit() == wf, where + ": strategy " + std::to_string(k) + " ends at " + a.space().format(t.limit()));
    ++runs;
  }
}

std::string confluence(Findings& f) {
  std::size_t runs = 0;
  {
    const auto op = ael_operator(fixtures::example1());
    const FlowerFramework fw(op.domain_ptr());
    confluence_on(f, ultimate_approximator(fw, op), 0, "Example 1", runs);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed + 10'000);
    const auto p = fixtures::to_program(oracle::random_program(2 + seed % 3, 6, rng));
    const auto op = lp_operator(p);
    const IntervalFramework iv(op.domain_ptr());
    confluence_on(f, fitting_approximator(p, iv), seed * 1000, p.format_rules() + " fitting", runs);
    confluence_on(f, ultimate_approximator(iv, op), seed * 1000 + 100, p.format_rules() + " ultimate", runs);
    confluence_on(f, ultimate_approximator(FlowerFramework(op.domain_ptr()), op), seed * 1000 + 200,
                  p.format_rules() + " flower", runs);
  }
  return std::to_string(runs) + " inductions, " + std::to_string(f.count()) + " deviations";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Example 1, interval ultimate: KK = WF = (bottom, top)", 10, example1_interval},
      {2, "Example 1, flower ultimate: exact WF with q known and r false", 60, example1_flower},
      {3, "Example 2: status tendency-accept, interval space rejected", 1, example2},
      {4, "Fig. 1 flowers, bounds, recompose and chain", 1, fig1},
      {5, "Framework axioms on Fig. 1 and 200 random cpos, mutations caught", 120, axiom_suite},
      {6, "Logic programs: Fitting semantics match reference solvers", 300, lp_equivalence},
      {7, "Precision transfer across approximators and spaces", 300, precision_transfer},
      {8, "Confluence of random well-founded inductions", 300, confluence},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Findings f;
    std::string summary;
    const auto start = std::chrono::steady_clock::now();
    try {
      summary = c.body(f);
    } catch (const std::exception& e) {
      f.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = f.ok() && in_time;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, c.budget_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << timing << "]";
    if (!summary.empty()) std::cout << " - " << summary;
    std::cout << "\n";
    if (!in_time) std::cout << "    over the time budget\n";
    for (const auto& s : f.shown()) std::cout << "    " << s << "\n";
  }
  return all ? 0 : 1;
}
