#include <gtest/gtest.h>

#include "herbrand/herbrand.hpp"
#include "support/fixtures.hpp"

using namespace herbrand;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

std::size_t count_rule(const Derivation& d, Rule r) {
  return static_cast<std::size_t>(
      std::count_if(d.steps.begin(), d.steps.end(), [&](const RuleStep& s) { return s.rule == r; }));
}

}  // namespace

TEST(PropertyC, PropertyCOne) {
  const Formula a = F(fixtures::kPropertyCOne);
  EXPECT_TRUE(property_c(a, 2, true).holds());
  EXPECT_EQ(property_c(a, 2, false).verdict, Verdict::Fails);
  EXPECT_TRUE(property_c(a, 3, false).holds());
  EXPECT_EQ(min_order(a, true, 4), 2U);
  EXPECT_EQ(min_order(a, false, 4), 3U);
}

TEST(PropertyC, UpperBoundViaSubExpansion) {
  const PropertyCResult r =
      property_c(F(fixtures::kUpperBound), 4, false, parse_selection(fixtures::kUpperBoundSelection));
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.witness, WitnessKind::SubExpansion);
  const PropertyCResult low =
      property_c(F(fixtures::kUpperBound), 3, false, parse_selection(fixtures::kUpperBoundSelection));
  EXPECT_EQ(low.verdict, Verdict::Inconclusive);
}

TEST(PropertyC, FullUpperBoundExpansionHitsGuard) {
  EXPECT_THROW(property_c(F(fixtures::kUpperBound), 4, false), SizeGuardExceeded);
}

TEST(MinOrder, FalseLemmaPair) {
  const Formula b = F(fixtures::kFalseLemmaB);
  const Formula b2 = apply_passage(b, Path{{0}}, 6, PassageDir::Prenex);
  EXPECT_EQ(min_order(b, false, 4), 2U);
  EXPECT_EQ(min_order(b2, false, 4), 3U);
  EXPECT_EQ(min_order(F("p(c()) | ~p(c())"), false, 4), 1U);
}

TEST(FalseLemma, Demo) {
  const FalseLemmaReport rep = demo_false_lemma();
  ASSERT_EQ(rep.cases.size(), 4U);
  for (const FalseLemmaCase& c : rep.cases) {
    const bool first = c.name.find("counterexample 1") != std::string::npos;
    if (!first) {
      EXPECT_EQ(c.order_before, 2U) << c.name;
      EXPECT_EQ(c.order_after, 3U) << c.name;
    } else if (c.mode == HeightMode::Standard) {
      EXPECT_EQ(c.order_before, 3U);
      EXPECT_EQ(c.order_after, 2U);
    } else {
      EXPECT_EQ(c.order_before, c.order_after);
    }
  }
}

TEST(Procedure1, UpperBoundStages) {
  const auto plan = procedure1_plan(F(fixtures::kUpperBound), parse_selection(fixtures::kUpperBoundSelection), 4);
  std::vector<std::vector<std::string>> stages(5);
  for (const PlanEntry& e : plan) stages.at(e.stage).push_back((e.gamma ? "g " : "d ") + e.binder);
  EXPECT_EQ(stages[1], (std::vector<std::string>{"d [sk_u]", "d [sk_v]", "d [sk_w]"}));
  EXPECT_EQ(stages[2], (std::vector<std::string>{"g x", "g y", "g x_1", "d [sk_m(sk_v,sk_w)]"}));
  EXPECT_EQ(stages[3], (std::vector<std::string>{"g y_1", "d [sk_m(sk_u,sk_m(sk_v,sk_w))]"}));
  EXPECT_EQ(stages[4], (std::vector<std::string>{"g c", "g b", "g a", "g a_1", "g z"}));
}

TEST(Procedure1, QuantifierFreeInputHasEmptyPlan) {
  EXPECT_TRUE(procedure1_plan(F("p(c()) | ~p(c())"), parse_selection("-"), 1).empty());
}

TEST(Procedure1, TooHighWitnessIsAnError) {
  const Selection s = parse_selection("(or (not -) (exists z (sk_m(sk_u,sk_m(sk_v,sk_m(sk_v,sk_w)))) -))");
  EXPECT_THROW(construct_derivation(F("~(forall x. forall y. exists m. x < m & y < m) | "
                                      "forall u. forall v. forall w. exists z. u < z"),
                                    4, s),
               Error);
}

TEST(Construct, UpperBoundDerivation) {
  const Construction c = construct_derivation(F(fixtures::kUpperBound), 4, parse_selection(fixtures::kUpperBoundSelection));
  const DerivationReport r = check_derivation(c.derivation);
  ASSERT_TRUE(r.accepted) << r.condition << ": " << r.detail;
  EXPECT_TRUE(*r.axiom_tautology);
  EXPECT_TRUE(ac_equal(erase_names(c.derivation.axiom), F(fixtures::kJ)));
  EXPECT_EQ(count_rule(c.derivation, Rule::GammaSimplification), 2U);
  EXPECT_EQ(c.gamma_simplifications, 2U);
  EXPECT_TRUE(alpha_equal(*c.derivation.end, F(fixtures::kUpperBound)));
}

TEST(Construct, QuantifierFreeTautologyHasNoSteps) {
  const Construction c = construct_derivation(F("p(c()) | ~p(c())"), 1);
  EXPECT_TRUE(c.derivation.steps.empty());
  EXPECT_TRUE(check_derivation(c.derivation).accepted);
}

TEST(Construct, PropertyCOneFullExpansion) {
  const Construction c = construct_derivation(F(fixtures::kPropertyCOne), 3);
  const DerivationReport r = check_derivation(c.derivation);
  EXPECT_TRUE(r.accepted) << r.condition << ": " << r.detail;
  EXPECT_EQ(c.gamma_simplifications, 1U);
}

TEST(Construct, RejectsOrderWithoutPropertyC) {
  EXPECT_THROW(construct_derivation(F(fixtures::kPropertyCOne), 2), Error);
}

TEST(FreeVariable, UpperBound) {
  SkolemRegistry reg;
  const FvConstruction c = construct_fv_derivation(F(fixtures::kUpperBound), 4,
                                                   parse_selection(fixtures::kUpperBoundSelection), reg);
  SkolemRegistry check_reg;
  const DerivationReport r = check_derivation(c.derivation, check_reg);
  EXPECT_TRUE(r.accepted) << r.condition << ": " << r.detail;
  // The instantiation recovers J.
  EXPECT_TRUE(ac_equal(substitute(c.b, c.sigma), F(fixtures::kJ)));
  for (const auto& [v, t] : c.sigma) EXPECT_LT(height(t), 4U) << v;
  EXPECT_EQ(c.gamma_simplifications, 2U);
}

TEST(FreeVariable, QuantifierFreeTautology) {
  SkolemRegistry reg;
  const FvConstruction c = construct_fv_derivation(F("p(c()) | ~p(c())"), 1, std::nullopt, reg);
  EXPECT_EQ(c.b, F("p(c()) | ~p(c())"));
  EXPECT_TRUE(c.sigma.empty());
}

TEST(FreeVariable, PropertyCOne) {
  SkolemRegistry reg;
  const FvConstruction c = construct_fv_derivation(F(fixtures::kPropertyCOne), 2, std::nullopt, reg);
  EXPECT_EQ(c.b, F("~p(sk_b) | p(?a)"));
  ASSERT_EQ(c.sigma.size(), 1U);
  EXPECT_EQ(to_string(c.sigma.at("?a")), "sk_b");
  SkolemRegistry check_reg;
  EXPECT_TRUE(check_derivation(c.derivation, check_reg).accepted);
}

TEST(OrderBound, Examples) {
  Derivation empty;
  empty.axiom = F("p(c()) | ~p(c())");
  EXPECT_EQ(derivation_order_bound(empty).value, 1U);

  Derivation two;
  two.axiom = F("p(c(), f(c())) | ~p(c(), f(c()))");
  two.steps.push_back(
      RuleStep::gamma(Path{{0}}, Quantifier::Exists, Term::var("y"), F("p(c(), y)"), parse_term("f(c())")));
  two.steps.push_back(RuleStep::gamma(Path{{0}}, Quantifier::Exists, Term::var("x"), F("exists y. p(x, y)"),
                                      parse_term("c()")));
  ASSERT_TRUE(check_derivation(two).accepted) << check_derivation(two).detail;
  EXPECT_EQ(derivation_order_bound(two).value, 4U);
}

TEST(OrderBound, UpperBoundDerivation) {
  const Construction c = construct_derivation(F(fixtures::kUpperBound), 4, parse_selection(fixtures::kUpperBoundSelection));
  const OrderBound b = derivation_order_bound(c.derivation);
  std::size_t sum = 1;
  for (const Term& t : b.witnesses) sum += height(t);
  EXPECT_EQ(b.value, sum);
  EXPECT_EQ(b.value, 16U);
}

TEST(Bounds, GoedelDreben) {
  EXPECT_EQ(goedel_dreben_bound(1, 0, 5), 2);
  EXPECT_EQ(goedel_dreben_bound(2, 1, 3), 32);
  EXPECT_EQ(goedel_dreben_bound(1, 7, 1), 2);
  EXPECT_EQ(leaf_count(156), 3820908);
}
