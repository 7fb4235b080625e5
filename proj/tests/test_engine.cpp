#include <gtest/gtest.h>

#include <random>
#include <set>

#include "aft/aft.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace aft;

namespace {

NormalLogicProgram program(std::vector<std::string> atoms, std::vector<Rule> rules) {
  return NormalLogicProgram(std::move(atoms), std::move(rules));
}

struct LpSetup {
  NormalLogicProgram p;
  ExactOperator op;
  IntervalFramework fw;
  explicit LpSetup(NormalLogicProgram prog) : p(std::move(prog)), op(lp_operator(p)), fw(op.domain_ptr()) {}
  Approximator<IntervalFramework> fitting() const { return fitting_approximator(p, fw); }
  Approximator<IntervalFramework> ultimate() const { return ultimate_approximator(fw, op); }
};

// Example 1 belief states: interpretation i is the atom mask (p = bit 0,
// q = bit 1, r = bit 2), and a belief state is the mask of its
// interpretations.
constexpr Element kAllBeliefs = 255;
constexpr Element kNoBeliefs = 0;
constexpr Element kQNotR = (1u << 0b010) | (1u << 0b011);  // {q}, {p,q}
constexpr Element kQAndR = (1u << 0b110) | (1u << 0b111);  // {q,r}, {p,q,r}

}  // namespace

// --------------------------------------------------------------- operators

TEST(ExactOperator, TableAndMonotonicity) {
  auto chain = std::make_shared<const FinitePoset>(FinitePoset::from_hasse({"0", "1"}, {{"0", "1"}}));
  const ExactOperator flip(chain, std::vector<Element>{1, 0});
  ASSERT_TRUE(flip.monotonicity_violation().has_value());
  EXPECT_EQ(flip(0), 1u);
  EXPECT_THROW(ExactOperator(chain, std::vector<Element>{0}), PreconditionError);
  EXPECT_THROW(ExactOperator(chain, std::vector<Element>{0, 7}), ElementNotFound);
  EXPECT_FALSE(ExactOperator(chain, std::vector<Element>{0, 1}).monotonicity_violation().has_value());
}

TEST(Approximators, FittingApproximatesTp) {
  const LpSetup s(program({"p", "q"}, {{0, {}, {1}}, {1, {}, {0}}}));
  const auto f = s.fitting();
  EXPECT_EQ(approximates_operator(f, s.op).status, CheckStatus::pass);
  EXPECT_EQ(approximator_monotonicity(f).status, CheckStatus::pass);
  EXPECT_EQ(approximator_precision_leq(f, s.ultimate()).status, CheckStatus::pass);
}

TEST(Approximators, ConstantOperatorUltimate) {
  // p :- p. p :- not p. makes T_P constantly {p}.
  const LpSetup s(program({"p"}, {{0, {0}, {}}, {0, {}, {0}}}));
  const auto u = s.ultimate();
  EXPECT_EQ(kripke_kleene(u), (Interval{1, 1}));
  EXPECT_EQ(supported_fixpoints(u), (std::vector<Element>{1}));
  EXPECT_EQ(stable_fixpoints(u), (std::vector<Element>{1}));
  // Fitting has no stable model here: {p} is not the least model of its reduct.
  EXPECT_TRUE(stable_fixpoints(s.fitting()).empty());
}

TEST(Approximators, RejectsMismatchedSpaces) {
  const LpSetup s(program({"p"}, {}));
  const IntervalFramework other(powerset_lattice(std::vector<std::string>{"p", "q"}, SetOrder::subset));
  EXPECT_THROW(fitting_approximator(s.p, other), PreconditionError);
  EXPECT_THROW(ultimate_approximator(other, s.op), PreconditionError);
}

// ------------------------------------------------------- logic programs

TEST(LogicPrograms, EvenLoop) {
  const LpSetup s(program({"p", "q"}, {{0, {}, {1}}, {1, {}, {0}}}));
  const auto f = s.fitting();
  const Interval least{0, 3};
  EXPECT_EQ(stable_revision(f, least), least);
  EXPECT_EQ(kripke_kleene(f), least);
  EXPECT_EQ(well_founded(f), least);
  EXPECT_EQ(supported_fixpoints(f), (std::vector<Element>{1, 2}));
  EXPECT_EQ(stable_fixpoints(f), (std::vector<Element>{1, 2}));
}

TEST(LogicPrograms, OddLoopAndSelfSupport) {
  const LpSetup odd(program({"p"}, {{0, {}, {0}}}));
  EXPECT_EQ(well_founded(odd.fitting()), (Interval{0, 1}));
  EXPECT_TRUE(stable_fixpoints(odd.fitting()).empty());

  const LpSetup self(program({"p"}, {{0, {0}, {}}}));
  EXPECT_EQ(supported_fixpoints(self.fitting()), (std::vector<Element>{0, 1}));
  EXPECT_EQ(stable_fixpoints(self.fitting()), (std::vector<Element>{0}));
  EXPECT_EQ(well_founded(self.fitting()), (Interval{0, 0}));

  const LpSetup fact(program({"p"}, {{0, {}, {}}}));
  EXPECT_EQ(well_founded(fact.fitting()), (Interval{1, 1}));
  EXPECT_EQ(well_founded(fact.ultimate()), (Interval{1, 1}));
}

TEST(LogicPrograms, StableRevisionPreconditions) {
  const LpSetup s(program({"p", "q"}, {{0, {}, {1}}, {1, {}, {0}}}));
  const auto f = s.fitting();
  // ({p}, {p}) maps to ({p}, {p}) and is reliable; ({p,q}, {p,q}) maps to (∅, ∅).
  EXPECT_TRUE(is_reliable(f, Interval{1, 1}));
  EXPECT_FALSE(is_reliable(f, Interval{3, 3}));
  EXPECT_THROW(stable_revision(f, Interval{3, 3}), PreconditionError);
  EXPECT_TRUE(is_prudent(f, Interval{0, 3}));
}

TEST(LogicPrograms, ComputeSemanticsSelection) {
  const LpSetup s(program({"p"}, {{0, {}, {0}}}));
  const auto r = compute_semantics(s.fitting(), SemanticsSelection{.kk = true, .wf = false, .supported = false, .stable = true});
  EXPECT_TRUE(r.kk.has_value());
  EXPECT_FALSE(r.wf.has_value());
  EXPECT_FALSE(r.supported.has_value());
  ASSERT_TRUE(r.stable.has_value());
  EXPECT_TRUE(r.stable->empty());
}

class LpOracleProperty : public ::testing::TestWithParam<std::uint64_t> {};

// Fitting semantics against independent brute-force definitions.
TEST_P(LpOracleProperty, FittingMatchesOracle) {
  std::mt19937_64 rng(GetParam());
  const std::size_t atoms = 1 + GetParam() % 5;
  const auto prog = oracle::random_program(atoms, 6, rng);
  const LpSetup s(fixtures::to_program(prog));
  const auto f = s.fitting();

  EXPECT_EQ(stable_fixpoints(f), fixtures::as_elements(oracle::answer_sets(prog))) << s.p.format_rules();
  EXPECT_EQ(supported_fixpoints(f), fixtures::as_elements(oracle::supported_models(prog))) << s.p.format_rules();
  const auto [t, u] = oracle::well_founded(prog);
  EXPECT_EQ(well_founded(f), (Interval{static_cast<Element>(t), static_cast<Element>(u)})) << s.p.format_rules();

  const auto lib = lp_oracle(s.p);
  EXPECT_EQ(fixtures::as_elements(lib.answer_sets), fixtures::as_elements(oracle::answer_sets(prog)));
  EXPECT_EQ(lib.wf_lower, t);
  EXPECT_EQ(lib.wf_upper, u);
}

TEST_P(LpOracleProperty, FittingIsLessPreciseThanUltimate) {
  std::mt19937_64 rng(GetParam() + 500);
  const auto prog = oracle::random_program(1 + GetParam() % 4, 5, rng);
  const LpSetup s(fixtures::to_program(prog));
  const auto r = verify_precision_transfer(s.fitting(), s.ultimate());
  for (const auto& x : r.results) EXPECT_NE(x.status, CheckStatus::fail) << x.axiom << ": " << x.counterexample.value_or("");
}

TEST_P(LpOracleProperty, RandomInductionsConverge) {
  std::mt19937_64 rng(GetParam() + 900);
  const auto prog = oracle::random_program(1 + GetParam() % 4, 5, rng);
  const LpSetup s(fixtures::to_program(prog));
  for (const auto& a : {s.fitting(), s.ultimate()}) {
    const auto wf = well_founded(a);
    for (std::uint64_t k = 0; k < 5; ++k) {
      const auto t = run_wf_induction(a, random_strategy<IntervalFramework>(GetParam() * 31 + k));
      ASSERT_TRUE(t.terminal);
      EXPECT_EQ(t.limit(), wf);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LpOracleProperty, ::testing::Range<std::uint64_t>(0, 60));

// ------------------------------------------------------------- Example 1

TEST(Example1, IntervalUltimateIsStuck) {
  const auto op = ael_operator(fixtures::example1());
  const IntervalFramework fw(op.domain_ptr());
  const auto u = ultimate_approximator(fw, op);
  const Interval stuck{kAllBeliefs, kNoBeliefs};
  EXPECT_EQ(fw.least(), stuck);
  EXPECT_EQ(kripke_kleene(u), stuck);
  EXPECT_EQ(well_founded(u), stuck);
  EXPECT_EQ(stable_fixpoints(u), (std::vector<Element>{kQNotR}));
}

TEST(Example1, OperatorMatchesOracle) {
  const auto op = ael_operator(fixtures::example1());
  const auto theory = fixtures::example1_oracle();
  std::vector<Element> fixed;
  for (oracle::Mask m = 0; m < 256; ++m) {
    const auto next = oracle::mask_from_belief(oracle::ael_step(theory, 3, oracle::belief_from_mask(m)));
    ASSERT_EQ(op(static_cast<Element>(m)), next);
    if (next == m) fixed.push_back(static_cast<Element>(m));
  }
  EXPECT_EQ(fixed, (std::vector<Element>{kQNotR}));
  EXPECT_TRUE(op.monotonicity_violation().has_value());
}

TEST(Example1, FlowerUltimateFindsTheIntendedModel) {
  const auto op = ael_operator(fixtures::example1());
  const FlowerFramework fw(op.domain_ptr());
  const auto u = ultimate_approximator(fw, op);
  const auto wf = well_founded(u);
  EXPECT_EQ(fw.exact_value(wf), kQNotR);
  EXPECT_EQ(fw.exact_value(kripke_kleene(u)), kQNotR);
  EXPECT_EQ(supported_fixpoints(u), (std::vector<Element>{kQNotR}));
  EXPECT_EQ(stable_fixpoints(u), (std::vector<Element>{kQNotR}));

  // Stable revision of the least flower keeps the ALB and narrows the AUB to
  // the two belief states in which p is not known: one with r, one without.
  const auto& C = fw.exact();
  const auto revised = stable_revision(u, fw.least());
  EXPECT_EQ(revised.alb, C.least());
  EXPECT_EQ(revised.aub.elements, C.set_of(std::vector<Element>{kQAndR, kQNotR}));
  EXPECT_TRUE(fw.precision_leq(fw.least(), revised));
  EXPECT_FALSE(revised == fw.least());
}

TEST(Example1, InductionsConverge) {
  const auto op = ael_operator(fixtures::example1());
  const FlowerFramework fw(op.domain_ptr());
  const auto u = ultimate_approximator(fw, op);
  const auto wf = well_founded(u);

  const auto t = run_wf_induction(u);
  ASSERT_TRUE(t.terminal);
  EXPECT_EQ(t.limit(), wf);
  EXPECT_TRUE(is_terminal_wf(u, wf));
  EXPECT_FALSE(is_terminal_wf(u, fw.least()));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = run_wf_induction(u, random_strategy<FlowerFramework>(seed));
    ASSERT_TRUE(r.terminal) << seed;
    EXPECT_EQ(r.limit(), wf) << seed;
  }

}

TEST(LogicPrograms, InductionRejectsNonRefinements) {
  // p :- not q. The least interval is not terminal, and jumping to {q} is
  // neither an application nor a grounding refinement of it.
  const LpSetup s(program({"p", "q"}, {{0, {}, {1}}}));
  const RefinementStrategy<IntervalFramework> jump = [](const auto&, const Interval&) { return Interval{2, 2}; };
  EXPECT_THROW(run_wf_induction(s.fitting(), jump), InvalidRefinement);
  const RefinementStrategy<IntervalFramework> idle = [](const auto&, const Interval& x) { return x; };
  EXPECT_FALSE(run_wf_induction(s.fitting(), idle).terminal);
}

// ------------------------------------------------------------- Example 2

TEST(Example2, FlowerKripkeKleeneAcceptsTendency) {
  const auto w = fixtures::example2();
  const auto op = wadf_operator(w);
  const FlowerFramework fw(op.domain_ptr());
  const auto u = ultimate_approximator(fw, op);
  const auto kk = kripke_kleene(u);
  ASSERT_TRUE(fw.is_exact(kk));
  EXPECT_EQ(fw.exact().id(*fw.exact_value(kk)), "(accept,borderline,tendency-accept)");
  EXPECT_FALSE(op.monotonicity_violation().has_value());
  EXPECT_THROW(IntervalFramework{op.domain_ptr()}, PreconditionError);
}
