#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/formula.hpp"
#include "herbrand/skolem.hpp"
#include "herbrand/taut.hpp"
#include "herbrand/term.hpp"

namespace herbrand {

enum class Rule {
  GammaQuant,
  RestrictedGammaQuant,
  DeltaMinusQuant,
  DeltaPlusPlusQuant,
  Simplification,
  GammaSimplification,
  Passage,
  Rename,
  NonGenGammaQuant,
  NonGenDeltaQuant,
  NonGenSimplification,
};

enum class Mode { Heijenoort, HerbrandOriginal, FreeVariable };
enum class Side { Left, Right };
enum class PassageDir { Prenex, Antiprenex };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::GammaQuant: return "gamma-quant";
    case Rule::RestrictedGammaQuant: return "restricted-gamma";
    case Rule::DeltaMinusQuant: return "delta-minus";
    case Rule::DeltaPlusPlusQuant: return "deltapp";
    case Rule::Simplification: return "simp";
    case Rule::GammaSimplification: return "gamma-simp";
    case Rule::Passage: return "passage";
    case Rule::Rename: return "rename";
    case Rule::NonGenGammaQuant: return "ng-gamma";
    case Rule::NonGenDeltaQuant: return "ng-delta";
    case Rule::NonGenSimplification: return "ng-simp";
  }
  return "?";
}

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Heijenoort: return "heijenoort";
    case Mode::HerbrandOriginal: return "herbrand-original";
    case Mode::FreeVariable: return "free-variable";
  }
  return "?";
}

inline bool mode_admits(Mode m, Rule r) {
  switch (m) {
    case Mode::Heijenoort:
      return r == Rule::GammaQuant || r == Rule::DeltaMinusQuant || r == Rule::Simplification ||
             r == Rule::GammaSimplification || r == Rule::Rename;
    case Mode::FreeVariable:
      return r == Rule::RestrictedGammaQuant || r == Rule::DeltaPlusPlusQuant || r == Rule::Simplification ||
             r == Rule::GammaSimplification || r == Rule::Rename;
    case Mode::HerbrandOriginal:
      return r == Rule::NonGenGammaQuant || r == Rule::NonGenDeltaQuant || r == Rule::NonGenSimplification ||
             r == Rule::Passage || r == Rule::Rename;
  }
  return false;
}

// One deductive inference.  Which fields matter depends on the rule:
//   quantification rules    q, var, scope (H), term (gamma rules)
//   simplification rules    keep
//   passage                 eq, dir
//   rename                  var (old), renamed (new)
struct RuleStep {
  Rule rule = Rule::Rename;
  Path path;
  Quantifier q = Quantifier::Forall;
  std::optional<Term> var;
  std::optional<Formula> scope;
  std::optional<Term> term;
  Side keep = Side::Left;
  int eq = 0;
  PassageDir dir = PassageDir::Prenex;
  std::optional<Term> renamed;

  static RuleStep gamma(Path p, Quantifier q, Term x, Formula h, Term t, Rule rule = Rule::GammaQuant) {
    RuleStep s;
    s.rule = rule;
    s.path = std::move(p);
    s.q = q;
    s.var = std::move(x);
    s.scope = std::move(h);
    s.term = std::move(t);
    return s;
  }
  static RuleStep delta_minus(Path p, Quantifier q, Term y, Rule rule = Rule::DeltaMinusQuant) {
    RuleStep s;
    s.rule = rule;
    s.path = std::move(p);
    s.q = q;
    s.var = std::move(y);
    return s;
  }
  static RuleStep deltapp(Path p, Quantifier q, Term y, Formula h) {
    RuleStep s;
    s.rule = Rule::DeltaPlusPlusQuant;
    s.path = std::move(p);
    s.q = q;
    s.var = std::move(y);
    s.scope = std::move(h);
    return s;
  }
  static RuleStep simplification(Path p, Side keep, Rule rule = Rule::Simplification) {
    RuleStep s;
    s.rule = rule;
    s.path = std::move(p);
    s.keep = keep;
    return s;
  }
  static RuleStep passage(Path p, int eq, PassageDir dir) {
    RuleStep s;
    s.rule = Rule::Passage;
    s.path = std::move(p);
    s.eq = eq;
    s.dir = dir;
    return s;
  }
  static RuleStep rename(Path p, Term old_var, Term new_var) {
    RuleStep s;
    s.rule = Rule::Rename;
    s.path = std::move(p);
    s.var = std::move(old_var);
    s.renamed = std::move(new_var);
    return s;
  }
};

struct Derivation {
  Mode mode = Mode::Heijenoort;
  Formula axiom = Formula::atom("true");
  std::vector<RuleStep> steps;
  std::optional<Formula> end;
  // In heijenoort mode the axiom must then be a sentential tautology.
  bool claims_theorem = true;
};

// ---------------------------------------------------------------------------
// Rules of passage

namespace detail {

[[noreturn]] inline void fail(const std::string& condition, const std::string& detail) {
  throw KernelError(condition, detail);
}

// Renames the bound variable of quantifier node q away from the given names.
inline Formula rename_binder_away(const Formula& q, const std::set<std::string>& avoid) {
  std::set<std::string> taken = avoid;
  const std::set<std::string> inner = all_vars(q);
  taken.insert(inner.begin(), inner.end());
  const Term nv = Term::var(fresh_name(base_name(q.bound()), taken));
  return Formula::quant(q.quantifier(), nv, substitute(q.body(), Substitution{{q.bound().id(), nv}}));
}

}  // namespace detail

// Rewrites the node at p by equivalence k (1..6) of the rules of passage.
// In prenex direction a bound x that is free in B is renamed first, unless
// allow_rename is false.
inline Formula apply_passage(const Formula& f, const Path& p, int k, PassageDir dir, bool allow_rename = true) {
  using K = Formula::Kind;
  if (!valid_path(f, p)) detail::fail("invalid-path", "no node at path " + to_string(p));
  if (k < 1 || k > 6) detail::fail("passage-shape", "no rule of passage number " + std::to_string(k));
  const Formula& node = at(f, p);
  const K qkind = (k == 1 || k == 3 || k == 4) ? K::Forall : K::Exists;
  auto mismatch = [&] {
    detail::fail("passage-shape", "node " + to_string(node) + " does not match equivalence (" + std::to_string(k) +
                                      ") in " + (dir == PassageDir::Prenex ? "prenex" : "anti-prenex") + " direction");
  };
  Formula out = node;
  if (dir == PassageDir::Prenex) {
    if (k <= 2) {
      const K inner = k == 1 ? K::Forall : K::Exists;
      if (!node.is_not() || node.body().kind() != inner) mismatch();
      const Formula& q = node.body();
      out = Formula::quant(k == 1 ? Quantifier::Exists : Quantifier::Forall, q.bound(), Formula::negation(q.body()));
    } else {
      const bool quant_left = k == 3 || k == 5;
      if (node.kind() != K::Or) mismatch();
      Formula q = quant_left ? node.lhs() : node.rhs();
      const Formula& b = quant_left ? node.rhs() : node.lhs();
      if (q.kind() != qkind) mismatch();
      if (occurs_free(b, q.bound().id())) {
        if (!allow_rename)
          detail::fail("passage-variable-free", q.bound().id() + " occurs free in " + to_string(b));
        q = detail::rename_binder_away(q, all_vars(b));
      }
      out = Formula::quant(q.quantifier(), q.bound(),
                           quant_left ? Formula::disj(q.body(), b) : Formula::disj(b, q.body()));
    }
  } else {
    if (k <= 2) {
      const K outer = k == 1 ? K::Exists : K::Forall;
      if (node.kind() != outer || !node.body().is_not()) mismatch();
      out = Formula::negation(Formula::quant(k == 1 ? Quantifier::Forall : Quantifier::Exists, node.bound(),
                                             node.body().body()));
    } else {
      const bool quant_left = k == 3 || k == 5;
      if (node.kind() != qkind || node.body().kind() != K::Or) mismatch();
      const Formula& a = quant_left ? node.body().lhs() : node.body().rhs();
      const Formula& b = quant_left ? node.body().rhs() : node.body().lhs();
      if (occurs_free(b, node.bound().id()))
        detail::fail("passage-variable-free", node.bound().id() + " occurs free in " + to_string(b));
      const Formula q = Formula::quant(node.quantifier(), node.bound(), a);
      out = quant_left ? Formula::disj(q, b) : Formula::disj(b, q);
    }
  }
  return replace_at(f, p, out);
}

// ---------------------------------------------------------------------------
// Step checking

namespace detail {

inline bool is_nongen(Rule r) {
  return r == Rule::NonGenGammaQuant || r == Rule::NonGenDeltaQuant || r == Rule::NonGenSimplification;
}

inline void check_new_quantifier(const Formula& result, const Path& p, QuantClass want, const char* access_cond,
                                 const char* kind_cond) {
  const QuantInfo info = classify_quantifier(result, p);
  const std::string at_path = " at path " + to_string(p);
  if (info.cls != want)
    fail(kind_cond, std::string("introduced quantifier is not a ") + (want == QuantClass::Gamma ? "gamma" : "delta") +
                        "-quantifier" + at_path);
  if (!info.accessible) fail(access_cond, "introduced quantifier is not accessible" + at_path);
}

inline Formula check_gamma(const Formula& prev, const RuleStep& s, Mode mode) {
  if (!s.var || !s.scope || !s.term) fail("missing-parameter", "gamma-quantification needs var, scope and term");
  const Term& x = *s.var;
  const Formula& h = *s.scope;
  const Term& t = *s.term;
  if (s.rule == Rule::RestrictedGammaQuant && !t.is_gamma())
    fail("restricted-gamma-term", "restricted gamma-quantification needs a gamma-variable, got " + to_string(t));
  if (mode != Mode::FreeVariable && t.is_gamma() && s.rule != Rule::RestrictedGammaQuant)
    fail("restricted-gamma-term", "gamma-variables are witnesses only in the free-variable calculus");
  const std::set<std::string> hb = bound_vars(h);
  std::set<std::string> tv;
  collect_vars(t, tv);
  for (const std::string& v : tv)
    if (hb.contains(v)) fail("gamma-witness-capture", "witness " + to_string(t) + " mentions " + v + ", bound in the scope");
  Formula inst = h;
  try {
    inst = substitute_strict(h, Substitution{{x.id(), t}});
  } catch (const CaptureError& e) {
    fail("gamma-witness-capture", e.what());
  }
  const Formula& node = at(prev, s.path);
  if (inst != node)
    fail("instance-mismatch", "node " + to_string(node) + " is not " + to_string(h) + " with " + x.id() + " := " +
                                  to_string(t));
  const Formula result = replace_at(prev, s.path, Formula::quant(s.q, x, h));
  check_new_quantifier(result, s.path, QuantClass::Gamma, "gamma-accessible", "not-gamma");
  return result;
}

inline Formula check_delta_minus(const Formula& prev, const RuleStep& s) {
  if (!s.var) fail("missing-parameter", "delta-quantification needs var");
  const Term& y = *s.var;
  const Formula& node = at(prev, s.path);
  const Formula hole = replace_at(prev, s.path, Formula::atom("@hole"));
  if (occurs_free(hole, y.id()))
    fail("delta-eigenvariable-free", y.id() + " occurs free in the context of path " + to_string(s.path));
  const Formula result = replace_at(prev, s.path, Formula::quant(s.q, y, node));
  check_new_quantifier(result, s.path, QuantClass::Delta, "delta-accessible", "not-delta");
  return result;
}

inline Formula check_deltapp(const Formula& prev, const RuleStep& s, SkolemRegistry& reg) {
  if (!s.var || !s.scope) fail("missing-parameter", "delta++-quantification needs var and scope");
  const Term& y = *s.var;
  const Formula scope = Formula::quant(s.q, y, *s.scope);
  const std::vector<Term> args = deltapp_arguments(scope);
  const auto entry = reg.lookup_or_register(canonical_key(scope, args), skolem_base(y), args.size());
  const Term sk = Term::app(entry.symbol, args, true);
  Formula inst = *s.scope;
  try {
    inst = substitute_strict(*s.scope, Substitution{{y.id(), sk}});
  } catch (const CaptureError& e) {
    fail("deltapp-instance", e.what());
  }
  const Formula& node = at(prev, s.path);
  if (inst != node)
    fail("deltapp-instance", "node " + to_string(node) + " is not the scope with " + y.id() + " := " + to_string(sk));
  const Formula result = replace_at(prev, s.path, scope);
  check_new_quantifier(result, s.path, QuantClass::Delta, "delta-accessible", "not-delta");
  return result;
}

inline Formula check_simplification(const Formula& prev, const RuleStep& s) {
  const Formula& node = at(prev, s.path);
  const Polarity pol = polarity_at(prev, s.path);
  const Formula::Kind want = pol == Polarity::Positive ? Formula::Kind::Or : Formula::Kind::And;
  if (node.kind() != want)
    fail("simplification-operator", std::string("expected ") + (want == Formula::Kind::Or ? "a disjunction" : "a conjunction") +
                                         " at " + (pol == Polarity::Positive ? "positive" : "negative") + " path " +
                                         to_string(s.path));
  const Formula& kept = s.keep == Side::Left ? node.lhs() : node.rhs();
  const Formula& dropped = s.keep == Side::Left ? node.rhs() : node.lhs();
  if (!alpha_equal(kept, dropped))
    fail("simplification-variant", to_string(dropped) + " is not a variant of " + to_string(kept));
  const Formula result = replace_at(prev, s.path, kept);
  if (s.rule == Rule::GammaSimplification) {
    if (!kept.is_quant())
      fail("gamma-simplification-kind", "kept operand " + to_string(kept) + " is not quantified");
    if (classify_quantifier(result, s.path).cls != QuantClass::Gamma)
      fail("gamma-simplification-kind", "kept quantifier at " + to_string(s.path) + " is not a gamma-quantifier");
  }
  return result;
}

inline Formula check_rename(const Formula& prev, const RuleStep& s) {
  if (!s.var || !s.renamed) fail("missing-parameter", "rename needs old and new");
  const Formula& node = at(prev, s.path);
  if (!node.is_quant() || node.bound() != *s.var)
    fail("rename-shape", "no quantifier binding " + s.var->id() + " at path " + to_string(s.path));
  const Term& nv = *s.renamed;
  if (!nv.is_var() && !nv.is_named()) fail("rename-shape", "new name " + to_string(nv) + " is not a variable");
  if (nv == node.bound()) return prev;
  if (occurs_free(node.body(), nv.id()) || bound_vars(node.body()).contains(nv.id()))
    fail("rename-capture", nv.id() + " already occurs in the scope of " + s.var->id());
  Formula body = node.body();
  try {
    body = substitute_strict(node.body(), Substitution{{s.var->id(), nv}});
  } catch (const CaptureError& e) {
    fail("rename-capture", e.what());
  }
  return replace_at(prev, s.path, Formula::quant(node.quantifier(), nv, body));
}

}  // namespace detail

// Replays one step deductively.  Throws KernelError naming the violated
// side-condition.
inline Formula check_step(const Formula& prev, const RuleStep& s, SkolemRegistry& reg, Mode mode) {
  using namespace detail;
  if (!mode_admits(mode, s.rule))
    fail("mode-rule", std::string(rule_name(s.rule)) + " is not a rule of the " + mode_name(mode) + " calculus");
  if (!valid_path(prev, s.path)) fail("invalid-path", "no node at path " + to_string(s.path));
  if (is_nongen(s.rule) && !s.path.empty())
    fail("nongen-context", std::string(rule_name(s.rule)) + " applies only at the root");
  switch (s.rule) {
    case Rule::GammaQuant:
    case Rule::RestrictedGammaQuant:
    case Rule::NonGenGammaQuant:
      return check_gamma(prev, s, mode);
    case Rule::DeltaMinusQuant:
    case Rule::NonGenDeltaQuant:
      return check_delta_minus(prev, s);
    case Rule::DeltaPlusPlusQuant:
      return check_deltapp(prev, s, reg);
    case Rule::Simplification:
    case Rule::GammaSimplification:
    case Rule::NonGenSimplification:
      return check_simplification(prev, s);
    case Rule::Passage:
      return apply_passage(prev, s.path, s.eq, s.dir);
    case Rule::Rename:
      return check_rename(prev, s);
  }
  fail("mode-rule", "unknown rule");
}

struct DerivationReport {
  bool accepted = false;
  std::optional<std::size_t> failed_step;  // 0-based; steps.size() for the end check
  std::string condition;
  std::string detail;
  std::optional<Formula> final_formula;
  std::optional<bool> axiom_tautology;
  std::vector<Term> witnesses;  // gamma-quantification terms, in step order
  std::size_t steps_checked = 0;
};

inline DerivationReport check_derivation(const Derivation& d, SkolemRegistry& reg) {
  DerivationReport r;
  if (d.end) reg.reserve_signature(*d.end);
  if (d.mode == Mode::Heijenoort && d.claims_theorem) {
    r.axiom_tautology = is_quantifier_free(d.axiom) && is_tautology(d.axiom);
    if (!*r.axiom_tautology) {
      r.condition = "axiom-not-tautology";
      r.detail = "the axiom is not a sentential tautology";
      r.failed_step = 0;
      return r;
    }
  }
  Formula cur = d.axiom;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    try {
      cur = check_step(cur, d.steps[i], reg, d.mode);
    } catch (const KernelError& e) {
      r.failed_step = i;
      r.condition = e.condition();
      r.detail = e.what();
      r.final_formula = cur;
      return r;
    } catch (const Error& e) {
      r.failed_step = i;
      r.condition = "malformed-step";
      r.detail = e.what();
      r.final_formula = cur;
      return r;
    }
    const Rule rule = d.steps[i].rule;
    if (rule == Rule::GammaQuant || rule == Rule::RestrictedGammaQuant || rule == Rule::NonGenGammaQuant)
      r.witnesses.push_back(*d.steps[i].term);
    ++r.steps_checked;
  }
  r.final_formula = cur;
  if (d.end && cur != *d.end) {
    r.failed_step = d.steps.size();
    r.condition = "end-mismatch";
    r.detail = "derivation ends in " + to_string(cur) + ", not " + to_string(*d.end);
    return r;
  }
  r.accepted = true;
  return r;
}

inline DerivationReport check_derivation(const Derivation& d) {
  SkolemRegistry reg;
  return check_derivation(d, reg);
}

}  // namespace herbrand
