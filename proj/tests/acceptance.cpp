// Acceptance gate: one PASS/FAIL line per criterion.  Exit status is 0 only
// when every criterion passes.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "herbrand/herbrand.hpp"
#include "support/fixtures.hpp"
#include "support/gamma_variant.hpp"
#include "support/generators.hpp"
#include "support/soundness.hpp"
#include "support/truth_table.hpp"

using namespace herbrand;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Formula F(const std::string& s) { return parse_formula(s); }
const Formula& upper_bound() {
  static const Formula a = F(fixtures::kUpperBound);
  return a;
}
const Selection& upper_bound_selection() {
  static const Selection s = parse_selection(fixtures::kUpperBoundSelection);
  return s;
}

Outcome within(Outcome o, double seconds, double limit) {
  std::ostringstream d;
  d << o.detail << "; " << seconds << " s (limit " << limit << " s)";
  o.detail = d.str();
  o.pass = o.pass && seconds < limit;
  return o;
}

Outcome champ_cardinality() {
  const std::size_t n = champ(outer_skolemize(upper_bound()), 4).size();
  return {n == 156, "|T_4(F)| = " + std::to_string(n) + ", expected 156"};
}

Outcome leaf_arithmetic() {
  const BigInt v = leaf_count(156);
  return {v == 3820908, "N^2 + N^3 + N at N = 156 is " + v.str()};
}

Outcome property_c_one() {
  const Formula a = F(fixtures::kPropertyCOne);
  const auto star = min_order(a, true, 4), plain = min_order(a, false, 4);
  std::ostringstream d;
  d << "min order C* = " << (star ? std::to_string(*star) : "none") << ", C = "
    << (plain ? std::to_string(*plain) : "none");
  return {star == 2U && plain == 3U, d.str()};
}

Outcome false_lemma() {
  const Formula b = F(fixtures::kFalseLemmaB);
  const Formula b2 = apply_passage(b, Path{{0}}, 6, PassageDir::Prenex);
  const auto ob = min_order(b, false, 4), ob2 = min_order(b2, false, 4);
  std::ostringstream d;
  d << "min order B = " << (ob ? std::to_string(*ob) : "none") << ", B' = " << (ob2 ? std::to_string(*ob2) : "none");
  return {ob == 2U && ob2 == 3U, d.str()};
}

Outcome upper_bound_walkthrough() {
  const Formula f = outer_skolemize(upper_bound());
  const Formula j = build_sub_expansion(f, upper_bound_selection());
  const bool taut = is_tautology(j);
  const bool same = ac_equal(j, F(fixtures::kJ));
  const bool inside = selection_within(upper_bound_selection(), champ(f, 4));
  const PropertyCResult r = property_c(upper_bound(), 4, false, upper_bound_selection());
  std::ostringstream d;
  d << "J tautology " << taut << ", AC-equal " << same << ", within T_4 " << inside << ", Property C of order 4 "
    << to_string(r.verdict);
  return {taut && same && inside && r.holds(), d.str()};
}

Outcome constructed_derivation() {
  const Construction c = construct_derivation(upper_bound(), 4, upper_bound_selection());
  const DerivationReport r = check_derivation(c.derivation);
  const auto& steps = c.derivation.steps;
  std::size_t simp = 0, last_quant = 0, first_simp = steps.size(), last_simp = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Rule k = steps[i].rule;
    if (k == Rule::GammaSimplification) {
      ++simp;
      first_simp = std::min(first_simp, i);
      last_simp = i;
    }
    if (k == Rule::GammaQuant || k == Rule::DeltaMinusQuant) last_quant = i;
  }
  // Deductive order: quantifier introductions (phase 3 reversed), then the
  // two gamma-simplifications, then the renames undoing the naming.
  bool phases = simp > 0 && last_quant < first_simp && c.phase1_renames > 0;
  for (std::size_t i = last_simp + 1; i < steps.size(); ++i) phases = phases && steps[i].rule == Rule::Rename;
  const bool end_ok = r.final_formula && alpha_equal(*r.final_formula, upper_bound());
  std::ostringstream d;
  d << "kernel " << (r.accepted ? "accepted" : "rejected: " + r.condition) << ", axiom tautology "
    << r.axiom_tautology.value_or(false) << ", end alpha-variant " << end_ok << ", gamma-simplifications " << simp
    << ", phase order " << phases;
  return {r.accepted && r.axiom_tautology.value_or(false) && end_ok && simp == 2 && phases, d.str()};
}

Outcome free_variable_construction() {
  SkolemRegistry reg;
  const FvConstruction c = construct_fv_derivation(upper_bound(), 4, upper_bound_selection(), reg);
  SkolemRegistry check_reg;
  const DerivationReport r = check_derivation(c.derivation, check_reg);
  const std::size_t gammas = oracle::gamma_vars(c.b).size();
  bool heights = true;
  for (const auto& [v, t] : c.sigma) heights = heights && height(t) < 4;
  // Both alpha-variant delta++ steps for m must resolve to one symbol.
  std::set<std::string> m_symbols;
  for (const auto& [sym, arity] : signature_of(c.b).functions)
    if (arity == 2) m_symbols.insert(sym);
  const bool reuse = m_symbols.size() == 1 && c.deltapp_steps == 5;
  const bool printed = oracle::gamma_variant(c.b, F(fixtures::kJPrimePrinted));
  const bool from_l = oracle::gamma_variant(c.b, F(fixtures::kJPrimeFromL));
  const bool recovers_j = ac_equal(substitute(c.b, c.sigma), F(fixtures::kJ));
  std::ostringstream d;
  d << "kernel " << (r.accepted ? "accepted" : "rejected: " + r.condition) << ", " << gammas
    << " gamma-variables (expected 14), variant of printed J' " << printed << ", variant of J' from L' " << from_l
    << ", sigma heights < 4 " << heights << ", one symbol for m " << reuse << ", sigma(B) = J " << recovers_j;
  return {r.accepted && gammas == 14 && printed && heights && reuse, d.str()};
}

Outcome order_bound_lemma() {
  gen::Random rnd(20240);
  std::size_t checked = 0, skipped = 0, failures = 0;
  std::string example;
  for (int i = 0; i < 2000 && checked < 60; ++i) {
    const gen::RandomDerivation rd = gen::random_derivation(rnd);
    const DerivationReport r = check_derivation(rd.derivation);
    if (!r.accepted || count_quantifiers(rd.end) == 0) continue;
    const std::size_t bound = derivation_order_bound(rd.derivation).value;
    try {
      if (!property_c(rectify(rd.end), bound, false).holds()) {
        ++failures;
        if (example.empty()) example = "; e.g. " + to_string(rd.end) + " at order " + std::to_string(bound);
      }
      ++checked;
    } catch (const SizeGuardExceeded&) {
      ++skipped;
    }
  }
  return {checked >= 50 && failures == 0, std::to_string(checked) + " derivations checked, " + std::to_string(skipped) +
                                              " over the guard, " + std::to_string(failures) + " failures" + example};
}

Outcome soundness_suite() {
  std::size_t failures = 0, min_apps = SIZE_MAX, valid = 0;
  std::string example;
  for (Rule rule : gen::all_rules()) {
    const gen::SoundnessStats st = gen::soundness_trials(rule, 200, 77 + static_cast<unsigned>(rule));
    failures += st.failures;
    valid += st.valid_premises;
    min_apps = std::min(min_apps, st.applications);
    if (!st.examples.empty() && example.empty()) example = std::string("; ") + rule_name(rule) + ": " + st.examples[0];
  }
  return {failures == 0 && min_apps >= 200,
          std::to_string(gen::all_rules().size()) + " rules, at least " + std::to_string(min_apps) +
              " applications each, " + std::to_string(valid) + " valid premises, " + std::to_string(failures) +
              " failures" + example};
}

Outcome monotonicity() {
  gen::Random rnd(4242);
  std::size_t formulas = 0, skipped = 0, failures = 0, holding = 0;
  std::string example;
  for (int i = 0; i < 5000 && formulas < 150; ++i) {
    const Formula a = rnd.rectified_formula(rnd.small_signature(), 2);
    if (count_quantifiers(a) == 0 || count_quantifiers(a) > 2) continue;
    try {
      bool bad = false;
      for (std::size_t n : {2U, 3U}) {
        const bool c = property_c(a, n, false).holds();
        holding += c;
        if (c && !property_c(a, n + 1, false).holds()) bad = true;
        if (c && !property_c(a, n, true).holds()) bad = true;
      }
      ++formulas;
      if (bad) {
        ++failures;
        if (example.empty()) example = "; e.g. " + to_string(a);
      }
    } catch (const SizeGuardExceeded&) {
      ++skipped;
    }
  }
  return {formulas >= 100 && failures == 0, std::to_string(formulas) + " formulas (" + std::to_string(holding) +
                                                " positive order checks), " + std::to_string(skipped) +
                                                " over the guard, " + std::to_string(failures) + " failures" + example};
}

Outcome tautology_agreement() {
  gen::Random rnd(99);
  std::size_t disagreements = 0, tautologies = 0;
  const std::size_t total = 1000;
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<Formula> atoms;
    const std::size_t k = 1 + rnd.below(10);
    for (std::size_t j = 0; j < k; ++j) atoms.push_back(Formula::atom("p", {Term::app("c" + std::to_string(j))}));
    const Formula f = rnd.propositional(atoms, 6);
    const bool want = oracle::tautology(f);
    tautologies += want;
    if (is_tautology(f) != want || dpll_tautology(PropAbstraction(f)) != want) ++disagreements;
  }
  return {disagreements == 0, std::to_string(total) + " formulas, " + std::to_string(tautologies) + " tautologies, " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome mutation_rejection() {
  const Construction c = construct_derivation(upper_bound(), 4, upper_bound_selection());
  const Derivation base = parse_proof_script(to_proof_script(c.derivation));
  std::vector<std::pair<std::string, std::string>> results;  // expected, got

  auto run = [&](const Derivation& d, const std::string& want) {
    const DerivationReport r = check_derivation(d);
    results.emplace_back(want, r.accepted ? "accepted" : r.condition);
  };

  {  // delta-minus for [sk_m(sk_v,sk_w)] moved next to the axiom
    Derivation d = base;
    const Term named = Term::named(parse_term("sk_m(sk_v,sk_w)"));
    auto it = std::find_if(d.steps.begin(), d.steps.end(), [&](const RuleStep& s) {
      return s.rule == Rule::DeltaMinusQuant && s.var && *s.var == named;
    });
    if (it != d.steps.end()) {
      RuleStep s = *it;
      d.steps.erase(it);
      d.steps.insert(d.steps.begin(), s);
    }
    run(d, "delta-eigenvariable-free");
  }
  {  // witness for c replaced by b, which the scope binds
    Derivation d = base;
    for (RuleStep& s : d.steps)
      if (s.rule == Rule::GammaQuant && s.var && s.var->id() == "c") s.term = Term::var("b");
    run(d, "gamma-witness-capture");
  }
  {  // first simplification moved to a conjunction of non-variant operands
    Derivation d = base;
    for (RuleStep& s : d.steps)
      if (s.rule == Rule::GammaSimplification) {
        s.path = Path{{0, 0}};
        break;
      }
    run(d, "simplification-variant");
  }
  bool pass = true;
  std::string detail;
  for (const auto& [want, got] : results) {
    pass = pass && want == got;
    detail += (detail.empty() ? "" : ", ") + want + " -> " + got;
  }
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"champ cardinality", 1, champ_cardinality},
      {"leaf-count arithmetic", 0, leaf_arithmetic},
      {"property C one", 1, property_c_one},
      {"false-lemma counterexample", 10, false_lemma},
      {"upper-bound walkthrough", 1, upper_bound_walkthrough},
      {"constructed derivation", 5, constructed_derivation},
      {"free-variable construction", 5, free_variable_construction},
      {"order-bound lemma", 0, order_bound_lemma},
      {"soundness suite", 60, soundness_suite},
      {"monotonicity and C implies C*", 0, monotonicity},
      {"tautology oracle agreement", 0, tautology_agreement},
      {"mutation rejection", 0, mutation_rejection},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].limit > 0) o = within(o, secs, criteria[i].limit);
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].name << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
