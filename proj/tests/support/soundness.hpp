#pragma once

// Single-step soundness trials: for a rule, generate applications, replay
// them through the kernel and compare oracle validity of premise and
// conclusion.

#include <string>
#include <vector>

#include "support/generators.hpp"

namespace gen {

struct SoundnessStats {
  std::size_t applications = 0;
  std::size_t valid_premises = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;  // first few failures
};

inline constexpr std::size_t kOracleDomain = 2;

inline std::optional<Application> application_for(Random& r, Rule rule, SkolemRegistry& reg) {
  const Symbols s = r.small_signature();
  Formula base = r.rectified_formula(s, 2, true);
  switch (rule) {
    case Rule::GammaQuant:
      return gamma_application(r, base, rule, false);
    case Rule::NonGenGammaQuant:
      return gamma_application(r, base, rule, true);
    case Rule::RestrictedGammaQuant:
      base = substitute(base, Substitution{{"y", Term::gamma("g")}});
      return gamma_application(r, base, rule, false);
    case Rule::DeltaMinusQuant:
      return delta_minus_application(r, base, false);
    case Rule::NonGenDeltaQuant:
      return delta_minus_application(r, base, true);
    case Rule::DeltaPlusPlusQuant:
      if (r.chance(0.5)) base = substitute(base, Substitution{{"y", Term::gamma("g")}});
      base = Formula::disj(base, Formula::atom(s.preds[0], {Term::var("w")}));
      if (r.chance(0.5)) base = Formula::disj(Formula::negation(Formula::atom(s.preds[0], {Term::var("w")})), base);
      return deltapp_application(r, base, reg);
    case Rule::Simplification:
    case Rule::GammaSimplification:
    case Rule::NonGenSimplification:
      return simplification_application(r, base, rule);
    case Rule::Passage:
      return passage_application(r, base);
    case Rule::Rename:
      return rename_application(r, base);
  }
  return std::nullopt;
}

// Runs until `wanted` applications have been checked.  Passage is checked
// in both directions.
inline SoundnessStats soundness_trials(Rule rule, std::size_t wanted, unsigned seed) {
  Random r(seed);
  SoundnessStats st;
  for (std::size_t attempt = 0; st.applications < wanted && attempt < wanted * 50; ++attempt) {
    SkolemRegistry reg;
    const auto app = application_for(r, rule, reg);
    if (!app) continue;
    Formula concl = app->premise;
    try {
      concl = check_step(app->premise, app->step, reg, app->mode);
    } catch (const KernelError& e) {
      ++st.failures;
      if (st.examples.size() < 5)
        st.examples.push_back(std::string("generated step rejected: ") + e.condition() + ": " + e.what());
      continue;
    }
    ++st.applications;
    bool premise_valid = false, concl_valid = false;
    try {
      premise_valid = valid_up_to(app->premise, kOracleDomain);
      concl_valid = valid_up_to(concl, kOracleDomain);
    } catch (const SizeGuardExceeded&) {
      --st.applications;
      continue;
    }
    st.valid_premises += premise_valid;
    const bool bad = rule == Rule::Passage || rule == Rule::Rename ? premise_valid != concl_valid
                                                                    : premise_valid && !concl_valid;
    if (bad) {
      ++st.failures;
      if (st.examples.size() < 5)
        st.examples.push_back(to_string(app->premise) + "  ==>  " + to_string(concl));
    }
  }
  return st;
}

inline const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = {Rule::GammaQuant,       Rule::RestrictedGammaQuant, Rule::DeltaMinusQuant,
                                          Rule::DeltaPlusPlusQuant, Rule::Simplification,   Rule::GammaSimplification,
                                          Rule::Passage,          Rule::Rename,               Rule::NonGenGammaQuant,
                                          Rule::NonGenDeltaQuant, Rule::NonGenSimplification};
  return rules;
}

}  // namespace gen
