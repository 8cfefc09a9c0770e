#include <gtest/gtest.h>

#include <algorithm>

#include "herbrand/herbrand.hpp"
#include "support/fixtures.hpp"
#include "support/soundness.hpp"

using namespace herbrand;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

std::string condition_of(const Formula& prev, const RuleStep& s, Mode mode = Mode::Heijenoort) {
  SkolemRegistry reg;
  try {
    check_step(prev, s, reg, mode);
  } catch (const KernelError& e) {
    return e.condition();
  }
  return "accepted";
}

}  // namespace

TEST(GammaQuant, OuterAndInnerApplications) {
  const Formula prev = F("t < t | ~(forall z. t < z)");
  SkolemRegistry reg;
  const Formula r1 = check_step(
      prev, RuleStep::gamma(Path{{1}}, Quantifier::Exists, Term::var("x"), F("~(forall z. x < z)"), Term::var("t")),
      reg, Mode::Heijenoort);
  EXPECT_EQ(r1, F("t < t | exists x. ~(forall z. x < z)"));
  const Formula r2 = check_step(
      prev, RuleStep::gamma(Path{{1, 0}}, Quantifier::Forall, Term::var("x"), F("forall z. x < z"), Term::var("t")),
      reg, Mode::Heijenoort);
  EXPECT_EQ(r2, F("t < t | ~(forall x. forall z. x < z)"));
}

TEST(GammaQuant, SideConditions) {
  const Formula prev = F("t < t | ~(forall z. t < z)");
  // Witness mentions a variable bound in the scope.
  EXPECT_EQ(condition_of(prev, RuleStep::gamma(Path{{1}}, Quantifier::Exists, Term::var("x"),
                                               F("~(forall z. x < z)"), Term::var("z"))),
            "gamma-witness-capture");
  // Node is not the instance.
  EXPECT_EQ(condition_of(prev, RuleStep::gamma(Path{{1}}, Quantifier::Exists, Term::var("x"),
                                               F("~(forall z. x < z)"), Term::var("s"))),
            "instance-mismatch");
  // Wrong quantifier kind: forall at a positive position is a delta.
  EXPECT_EQ(condition_of(prev, RuleStep::gamma(Path{{1}}, Quantifier::Forall, Term::var("x"),
                                               F("~(forall z. x < z)"), Term::var("t"))),
            "not-gamma");
  // Under a quantifier the new one is not accessible.
  const Formula inner = F("forall z. p(t) | q(z)");
  EXPECT_EQ(condition_of(inner, RuleStep::gamma(Path{{0, 0}}, Quantifier::Exists, Term::var("x"), F("p(x)"),
                                                Term::var("t"))),
            "gamma-accessible");
  EXPECT_EQ(condition_of(prev, RuleStep::gamma(Path{{1}}, Quantifier::Exists, Term::var("x"),
                                               F("~(forall z. x < z)"), Term::gamma("t"))),
            "restricted-gamma-term");
}

TEST(DeltaMinus, SideConditions) {
  const Formula prev = F("p(y) | ~p(c())");
  SkolemRegistry reg;
  EXPECT_EQ(check_step(prev, RuleStep::delta_minus(Path{{0}}, Quantifier::Forall, Term::var("y")), reg,
                       Mode::Heijenoort),
            F("(forall y. p(y)) | ~p(c())"));
  EXPECT_EQ(condition_of(F("p(y) | q(y)"), RuleStep::delta_minus(Path{{0}}, Quantifier::Forall, Term::var("y"))),
            "delta-eigenvariable-free");
  EXPECT_EQ(condition_of(prev, RuleStep::delta_minus(Path{{0}}, Quantifier::Exists, Term::var("y"))), "not-delta");
}

TEST(DeltaPP, ReusesSymbolForVariantLines) {
  const Formula prev = F("~((?x0 < sk_m(?x0,?y0) & ?y0 < sk_m(?x0,?y0)) & (?x1 < sk_m(?x1,?y1) & ?y1 < sk_m(?x1,?y1)))");
  SkolemRegistry reg;
  const Formula s1 = check_step(prev,
                                RuleStep::deltapp(Path{{0, 0}}, Quantifier::Exists, Term::var("m"), F("?x0 < m & ?y0 < m")),
                                reg, Mode::FreeVariable);
  const Formula s2 = check_step(
      s1, RuleStep::deltapp(Path{{0, 1}}, Quantifier::Exists, Term::var("m1"), F("?x1 < m1 & ?y1 < m1")), reg,
      Mode::FreeVariable);
  EXPECT_EQ(s2, F("~((exists m. ?x0 < m & ?y0 < m) & (exists m1. ?x1 < m1 & ?y1 < m1))"));
  EXPECT_EQ(reg.size(), 1U);
}

TEST(DeltaPP, WrongSymbolIsRejected) {
  const Formula prev = F("~(?x0 < sk_n(?x0) )");
  EXPECT_EQ(condition_of(prev, RuleStep::deltapp(Path{{0}}, Quantifier::Exists, Term::var("m"), F("?x0 < m")),
                         Mode::FreeVariable),
            "deltapp-instance");
}

TEST(Simplification, SideConditions) {
  const Formula prev = F("(exists x. p(x)) | (exists y. p(y))");
  SkolemRegistry reg;
  EXPECT_EQ(check_step(prev, RuleStep::simplification(Path{}, Side::Left, Rule::GammaSimplification), reg,
                       Mode::Heijenoort),
            F("exists x. p(x)"));
  EXPECT_EQ(condition_of(F("p(a) | p(b)"), RuleStep::simplification(Path{}, Side::Left)), "simplification-variant");
  EXPECT_EQ(condition_of(F("p(a) & p(a)"), RuleStep::simplification(Path{}, Side::Left)), "simplification-operator");
  EXPECT_EQ(condition_of(F("p(a) | p(a)"), RuleStep::simplification(Path{}, Side::Left, Rule::GammaSimplification)),
            "gamma-simplification-kind");
  EXPECT_EQ(condition_of(F("~((exists x. p(x)) & (exists y. p(y)))"),
                         RuleStep::simplification(Path{{0}}, Side::Left, Rule::GammaSimplification)),
            "gamma-simplification-kind");
}

TEST(Rename, SideConditions) {
  const Formula prev = F("forall x. p(x, y)");
  SkolemRegistry reg;
  EXPECT_EQ(check_step(prev, RuleStep::rename(Path{}, Term::var("x"), Term::var("z")), reg, Mode::Heijenoort),
            F("forall z. p(z, y)"));
  EXPECT_EQ(condition_of(prev, RuleStep::rename(Path{}, Term::var("x"), Term::var("y"))), "rename-capture");
  EXPECT_EQ(condition_of(prev, RuleStep::rename(Path{}, Term::var("w"), Term::var("z"))), "rename-shape");
}

TEST(Kernel, ModeAndPathConditions) {
  const Formula prev = F("p(a) | p(a)");
  EXPECT_EQ(condition_of(prev, RuleStep::passage(Path{}, 3, PassageDir::Prenex)), "mode-rule");
  EXPECT_EQ(condition_of(prev, RuleStep::simplification(Path{{0, 0, 0}}, Side::Left)), "invalid-path");
  EXPECT_EQ(condition_of(F("~(p(a) & p(a))"), RuleStep::simplification(Path{{0}}, Side::Left, Rule::NonGenSimplification),
                         Mode::HerbrandOriginal),
            "nongen-context");
}

TEST(Passage, FalseLemmaPrenexStep) {
  EXPECT_EQ(apply_passage(F(fixtures::kFalseLemmaB), Path{{0}}, 6, PassageDir::Prenex),
            F("(exists a. (~(exists b. p(b)) | q(a))) | ((exists x. p(x)) & ~(exists y. q(y)))"));
}

TEST(Passage, SimpleInstances) {
  EXPECT_EQ(apply_passage(F("~(forall x. p(x))"), Path{}, 1, PassageDir::Prenex), F("exists x. ~p(x)"));
  EXPECT_EQ(apply_passage(F(fixtures::kPropertyCOne), Path{}, 6, PassageDir::Antiprenex),
            F("(~(exists b. p(b))) | exists a. p(a)"));
}

TEST(Passage, RoundTripsAndConditions) {
  const Formula f = F("(forall x. p(x)) | q(c())");
  const Formula g = apply_passage(f, Path{}, 3, PassageDir::Prenex);
  EXPECT_EQ(g, F("forall x. p(x) | q(c())"));
  EXPECT_EQ(apply_passage(g, Path{}, 3, PassageDir::Antiprenex), f);
  // Prenex renames a bound variable free in the other operand.
  EXPECT_EQ(apply_passage(F("(forall x. p(x)) | q(x)"), Path{}, 3, PassageDir::Prenex),
            F("forall x_1. p(x_1) | q(x)"));
  try {
    apply_passage(F("forall x. p(x) | q(x)"), Path{}, 3, PassageDir::Antiprenex);
    FAIL();
  } catch (const KernelError& e) {
    EXPECT_EQ(e.condition(), "passage-variable-free");
  }
  try {
    apply_passage(F("p(a) | q(a)"), Path{}, 3, PassageDir::Prenex);
    FAIL();
  } catch (const KernelError& e) {
    EXPECT_EQ(e.condition(), "passage-shape");
  }
}

TEST(Derivation, EmptyIsAccepted) {
  Derivation d;
  d.axiom = F("p(a) | ~p(a)");
  d.end = d.axiom;
  EXPECT_TRUE(check_derivation(d).accepted);
}

TEST(Derivation, NonTautologicalAxiomRejected) {
  Derivation d;
  d.axiom = F("p(a) | ~p(b)");
  const DerivationReport r = check_derivation(d);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.condition, "axiom-not-tautology");
}

TEST(Derivation, EndMismatch) {
  Derivation d;
  d.axiom = F("p(a) | ~p(a)");
  d.end = F("p(b) | ~p(b)");
  EXPECT_EQ(check_derivation(d).condition, "end-mismatch");
}

TEST(Derivation, ConstructedUpperBoundAccepted) {
  const Construction c = construct_derivation(F(fixtures::kUpperBound), 4, parse_selection(fixtures::kUpperBoundSelection));
  const DerivationReport r = check_derivation(c.derivation);
  EXPECT_TRUE(r.accepted) << r.condition << ": " << r.detail;
  EXPECT_EQ(*r.final_formula, F(fixtures::kUpperBound));
}

TEST(Derivation, DeltaStepWithVariableFreeInContextRejected) {
  Construction c = construct_derivation(F(fixtures::kUpperBound), 4, parse_selection(fixtures::kUpperBoundSelection));
  auto& steps = c.derivation.steps;
  const Term named = Term::named(parse_term("sk_m(sk_v,sk_w)"));
  auto it = std::find_if(steps.begin(), steps.end(), [&](const RuleStep& s) {
    return s.rule == Rule::DeltaMinusQuant && s.var && *s.var == named;
  });
  ASSERT_NE(it, steps.end());
  RuleStep moved = *it;
  steps.erase(it);
  steps.insert(steps.begin(), moved);
  const DerivationReport r = check_derivation(c.derivation);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.condition, "delta-eigenvariable-free");
  EXPECT_EQ(r.failed_step, 0U);
}

class SingleStepSoundness : public ::testing::TestWithParam<Rule> {};

TEST_P(SingleStepSoundness, ValidPremiseGivesValidConclusion) {
  const gen::SoundnessStats st = gen::soundness_trials(GetParam(), 60, 1000 + static_cast<unsigned>(GetParam()));
  EXPECT_GE(st.applications, 60U);
  EXPECT_EQ(st.failures, 0U) << (st.examples.empty() ? "" : st.examples.front());
  EXPECT_GT(st.valid_premises, 0U);
}

INSTANTIATE_TEST_SUITE_P(AllRules, SingleStepSoundness, ::testing::ValuesIn(gen::all_rules()),
                         [](const ::testing::TestParamInfo<Rule>& info) {
                           std::string n = rule_name(info.param);
                           for (char& ch : n)
                             if (ch == '-' || ch == '+') ch = '_';
                           return n;
                         });
