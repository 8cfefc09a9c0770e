#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "herbrand/error.hpp"
#include "herbrand/expansion.hpp"
#include "herbrand/formula.hpp"
#include "herbrand/kernel.hpp"
#include "herbrand/skolem.hpp"
#include "herbrand/taut.hpp"
#include "herbrand/term.hpp"

namespace herbrand {

// ---------------------------------------------------------------------------
// Property C / C*

enum class Verdict { Holds, Fails, Inconclusive };
enum class WitnessKind { FullExpansion, SubExpansion, None };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* to_string(WitnessKind w) {
  switch (w) {
    case WitnessKind::FullExpansion: return "full-expansion";
    case WitnessKind::SubExpansion: return "sub-expansion";
    case WitnessKind::None: return "none";
  }
  return "?";
}

struct PropertyCResult {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t order = 1;
  bool star = false;
  WitnessKind witness = WitnessKind::None;
  std::size_t champ_size = 0;
  std::string note;

  bool holds() const noexcept { return verdict == Verdict::Holds; }
};

struct PropertyCOptions {
  HeightMode mode = HeightMode::Standard;
  std::size_t budget = kDefaultNodeBudget;
};

inline Formula skolemized_form(const Formula& a, bool star) {
  return star ? deltapp_skolemize(a) : outer_skolemize(a);
}

// Without a selection the full expansion over T_n decides the property.  A
// tautological sub-expansion is a sound yes; a failing one proves nothing.
inline PropertyCResult property_c(const Formula& a, std::size_t n, bool star,
                                  const std::optional<Selection>& sel = std::nullopt, PropertyCOptions opt = {}) {
  PropertyCResult r;
  r.order = n;
  r.star = star;
  const Formula f = skolemized_form(a, star);
  const ChampFini c = champ(f, n, opt.mode, opt.budget);
  r.champ_size = c.size();
  if (sel) {
    if (!selection_within(*sel, c)) {
      r.note = "selection uses a term outside the champ fini of order " + std::to_string(n);
      return r;
    }
    if (is_tautology(build_sub_expansion(f, *sel))) {
      r.verdict = Verdict::Holds;
      r.witness = WitnessKind::SubExpansion;
    } else {
      r.note = "the selected sub-expansion is not a sentential tautology";
    }
    return r;
  }
  if (c.terms.empty() && !is_quantifier_free(f)) {
    r.verdict = Verdict::Fails;
    r.note = "the expansion over the empty champ fini is undefined";
    return r;
  }
  r.verdict = is_tautology(expand(f, c, opt.budget)) ? Verdict::Holds : Verdict::Fails;
  r.witness = r.holds() ? WitnessKind::FullExpansion : WitnessKind::None;
  return r;
}

// Least n <= n_max with Property C (C*) by full expansion.
inline std::optional<std::size_t> min_order(const Formula& a, bool star, std::size_t n_max, PropertyCOptions opt = {}) {
  for (std::size_t n = 1; n <= n_max; ++n)
    if (property_c(a, n, star, std::nullopt, opt).holds()) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shared construction machinery

namespace detail {

// Copy of a subformula with every bound variable renamed apart.  Named
// binders get their encodings renamed consistently.
inline Formula fresh_copy(const Formula& f, std::set<std::string>& taken) {
  auto walk = [&](auto&& self, const Formula& g, const Substitution& ren) -> Formula {
    if (g.is_atom()) {
      std::vector<Term> args;
      for (const Term& t : g.args()) args.push_back(substitute(t, ren));
      return Formula::atom(g.pred(), std::move(args));
    }
    if (g.is_quant()) {
      const Term& v = g.bound();
      Term nv = v;
      if (v.is_var()) {
        nv = Term::var(fresh_name(v.name(), taken));
        taken.insert(nv.id());
      } else if (v.is_named()) {
        Substitution vars;
        for (const auto& [k, t] : ren)
          if (!k.starts_with('[')) vars.emplace(k, t);
        nv = Term::named(substitute_in_names(v.encoded(), vars));
      }
      Substitution inner = ren;
      inner.insert_or_assign(v.id(), nv);
      return Formula::quant(g.quantifier(), nv, self(self, g.body(), inner));
    }
    std::vector<Formula> children;
    for (std::size_t i = 0; i < g.num_children(); ++i) children.push_back(self(self, g.child(i), ren));
    return g.with_children(std::move(children));
  };
  return walk(walk, f, Substitution{});
}

inline bool has_gamma(const Formula& f, Polarity pol) {
  if (f.is_quant()) {
    if (quant_class(f.quantifier(), pol) == QuantClass::Gamma) return true;
    return has_gamma(f.body(), pol);
  }
  const Polarity cp = f.is_not() ? flip(pol) : pol;
  for (std::size_t i = 0; i < f.num_children(); ++i)
    if (has_gamma(f.child(i), cp)) return true;
  return false;
}

inline Path repeat_left(Path p, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) p = p.child(0);
  return p;
}

// Phase 2: gamma-simplification copies driven by a selection that mirrors
// the Skolemized skeleton (delta-quantifiers are skipped).  Each reductive
// step is recorded as the deductive step undoing it.
struct CopyPhase {
  explicit CopyPhase(Formula f) : root(std::move(f)) {}
  Formula root;
  std::set<std::string> taken;
  std::map<std::string, Term> gamma_terms;  // binder id -> instance
  std::vector<RuleStep> steps;              // reductive order
  std::size_t copies = 0;

  void walk(const Path& p, const Selection& sel) {
    const Formula node = at(root, p);
    const Polarity pol = polarity_at(root, p);
    if (sel.kind == Selection::Kind::Leaf) {
      if (has_gamma(node, pol)) throw SkeletonMismatch("leaf selection at " + to_string(node));
      return;
    }
    if (node.is_quant() && quant_class(node.quantifier(), pol) == QuantClass::Delta) {
      walk(p.child(0), sel);
      return;
    }
    switch (node.kind()) {
      case Formula::Kind::Atom:
        throw SkeletonMismatch("selection continues below atom " + to_string(node));
      case Formula::Kind::Not:
        if (sel.kind != Selection::Kind::Not) throw SkeletonMismatch("expected a negation selection at " + to_string(node));
        walk(p.child(0), sel.children[0]);
        return;
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const auto want = node.kind() == Formula::Kind::And ? Selection::Kind::And : Selection::Kind::Or;
        if (sel.kind != want) throw SkeletonMismatch("connective mismatch at " + to_string(node));
        walk(p.child(0), sel.children[0]);
        walk(p.child(1), sel.children[1]);
        return;
      }
      default:
        break;
    }
    if (sel.kind != Selection::Kind::Quant || sel.quantifier != node.quantifier())
      throw SkeletonMismatch("quantifier mismatch at " + to_string(node));
    const std::size_t k = sel.terms.size();
    if (k == 0) throw SkeletonMismatch("empty term choice for " + node.bound().id());
    std::vector<Formula> copy(k, node);
    for (std::size_t i = 1; i < k; ++i) copy[i] = fresh_copy(node, taken);
    const Formula::Kind op = pol == Polarity::Positive ? Formula::Kind::Or : Formula::Kind::And;
    // Copy i ends up as the right operand at depth k-1-i, giving the chain
    // ((I0 o I1) o I2) ... in selection order.
    for (std::size_t i = k - 1; i >= 1; --i) {
      const Path at_p = repeat_left(p, k - 1 - i);
      root = replace_at(root, at_p, Formula::binary(op, at(root, at_p), copy[i]));
      steps.push_back(RuleStep::simplification(at_p, Side::Left, Rule::GammaSimplification));
      ++copies;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Path q = i == 0 ? repeat_left(p, k - 1) : repeat_left(p, k - 1 - i).child(1);
      gamma_terms.insert_or_assign(at(root, q).bound().id(), sel.terms[i]);
      walk(q.child(0), sel.body(i));
    }
  }
};

inline void accessible_quantifiers(const Formula& f, const Path& p, std::vector<Path>& out) {
  if (f.is_quant()) {
    out.push_back(p);
    return;
  }
  for (std::size_t i = 0; i < f.num_children(); ++i) accessible_quantifiers(f.child(i), p.child(i), out);
}

inline void named_binders(const Formula& f, const Path& p, std::vector<Path>& out) {
  if (f.is_quant() && f.bound().is_named()) out.push_back(p);
  for (std::size_t i = 0; i < f.num_children(); ++i) named_binders(f.child(i), p.child(i), out);
}

// Term of the Skolemized form read in the named world: Skolem-headed
// subterms are names of delta-variables.
inline Term named_witness(const Term& t) {
  if (t.is_app() && t.skolem()) return Term::named(t);
  if (t.is_app() && t.arity() > 0) {
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(named_witness(a));
    return Term::app(t.name(), std::move(args), false);
  }
  return t;
}

inline Selection selection_or_full(const Formula& f, const std::optional<Selection>& sel, std::size_t n,
                                   const PropertyCOptions& opt) {
  if (sel) return *sel;
  return full_selection(f, champ(f, n, opt.mode, opt.budget).terms);
}

inline std::vector<RuleStep> reversed(const std::vector<RuleStep>& steps) {
  return std::vector<RuleStep>(steps.rbegin(), steps.rend());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Procedure 1 and the linear derivation from Property C

struct PlanEntry {
  std::size_t stage = 0;
  bool gamma = false;
  std::string binder;
  std::optional<Term> term;  // gamma removals only
};

struct Construction {
  Derivation derivation;
  Formula skolemized = Formula::atom("true");     // F
  Formula sub_expansion = Formula::atom("true");  // the axiom with names erased
  Selection selection;
  std::vector<PlanEntry> plan;
  std::size_t gamma_simplifications = 0;
  std::size_t phase1_renames = 0;
  std::size_t name_renames = 0;
};

namespace detail {

// Phase 3: for i = 1..n, remove accessible gamma-quantifiers whose instance
// has height < i (first in path order, rescanning after each) and, when
// none is eligible, the first accessible delta-quantifier.
inline void procedure1(CopyPhase& st, std::size_t n, HeightMode mode, std::vector<PlanEntry>& plan,
                       std::size_t& name_renames) {
  for (std::size_t stage = 1; stage <= n; ++stage) {
    for (;;) {
      std::vector<Path> acc;
      accessible_quantifiers(st.root, Path{}, acc);
      std::optional<Path> chosen;
      bool gamma = false;
      for (const Path& p : acc) {
        const Formula& q = at(st.root, p);
        if (classify_quantifier(st.root, p).cls != QuantClass::Gamma) continue;
        auto it = st.gamma_terms.find(q.bound().id());
        if (it == st.gamma_terms.end()) throw Error("no instance selected for " + q.bound().id());
        if (height(it->second, mode) < stage) {
          chosen = p;
          gamma = true;
          break;
        }
      }
      if (!chosen)
        for (const Path& p : acc)
          if (classify_quantifier(st.root, p).cls == QuantClass::Delta) {
            chosen = p;
            break;
          }
      if (!chosen) break;
      const Path p = *chosen;
      const Formula q = at(st.root, p);
      if (!gamma) {
        plan.push_back({stage, false, q.bound().id(), std::nullopt});
        st.steps.push_back(RuleStep::delta_minus(p, q.quantifier(), q.bound()));
        st.root = replace_at(st.root, p, q.body());
        continue;
      }
      const Term x = q.bound();
      const Term t = st.gamma_terms.at(x.id());
      plan.push_back({stage, true, x.id(), t});
      // Names in the scope that mention x follow its instantiation.
      std::vector<Path> binders;
      named_binders(q.body(), p.child(0), binders);
      for (const Path& bp : binders) {
        const Formula b = at(st.root, bp);
        if (!occurs_var(b.bound().encoded(), x.id())) continue;
        const Term renamed = Term::named(substitute_in_names(b.bound().encoded(), Substitution{{x.id(), erase_names(t)}}));
        st.root = replace_at(st.root, bp,
                             Formula::quant(b.quantifier(), renamed,
                                            substitute(b.body(), Substitution{{b.bound().id(), renamed}})));
        st.steps.push_back(RuleStep::rename(bp, renamed, b.bound()));
        ++name_renames;
      }
      const Formula scope = at(st.root, p).body();
      const Term w = named_witness(t);
      st.steps.push_back(RuleStep::gamma(p, q.quantifier(), x, scope, w));
      st.root = replace_at(st.root, p, substitute(scope, Substitution{{x.id(), w}}));
    }
  }
  if (!is_quantifier_free(st.root)) {
    std::vector<Path> acc;
    accessible_quantifiers(st.root, Path{}, acc);
    const Formula& q = at(st.root, acc.front());
    auto it = st.gamma_terms.find(q.bound().id());
    if (it != st.gamma_terms.end())
      throw Error("instance " + to_string(it->second) + " of " + q.bound().id() + " has height " +
                  std::to_string(height(it->second, mode)) + ", not below " + std::to_string(n));
    throw Error("quantifier " + q.bound().id() + " remains after stage " + std::to_string(n));
  }
}

inline void require_tautology(const Formula& f, const char* what) {
  if (!is_tautology(f)) throw Error(std::string(what) + " is not a sentential tautology");
}

}  // namespace detail

// Builds a heijenoort-mode derivation of a from the sub-expansion selected by
// sel (the full expansion over T_n when absent).  Steps are produced
// reductively and returned in deductive order.
inline Construction construct_derivation(const Formula& a, std::size_t n, const std::optional<Selection>& sel = std::nullopt,
                                         PropertyCOptions opt = {}) {
  Construction c;
  c.skolemized = outer_skolemize(a);
  c.selection = detail::selection_or_full(c.skolemized, sel, n, opt);
  if (!selection_within(c.selection, champ(c.skolemized, n, opt.mode, opt.budget)))
    throw Error("selection uses a term outside the champ fini of order " + std::to_string(n));
  detail::require_tautology(build_sub_expansion(c.skolemized, c.selection), "the selected sub-expansion");

  // Phase 1: name every bound delta-variable by its Skolem term.
  detail::CopyPhase st{a};
  const auto sk = outer_skolem_terms(a);
  for (const Path& p : quantifier_paths(a)) {
    const Formula q = at(st.root, p);
    auto it = sk.find(q.bound().id());
    if (it == sk.end()) continue;
    const Term name = Term::named(it->second);
    st.root = replace_at(st.root, p, Formula::quant(q.quantifier(), name, substitute(q.body(), Substitution{{q.bound().id(), name}})));
    st.steps.push_back(RuleStep::rename(p, name, q.bound()));
    ++c.phase1_renames;
  }
  st.taken = all_vars(st.root);
  for (const auto& [id, t] : sk) st.taken.insert(id);

  // Phase 2 and Phase 3.
  st.walk(Path{}, c.selection);
  c.gamma_simplifications = st.copies;
  detail::procedure1(st, n, opt.mode, c.plan, c.name_renames);

  c.derivation.mode = Mode::Heijenoort;
  c.derivation.axiom = st.root;
  c.derivation.steps = detail::reversed(st.steps);
  c.derivation.end = a;
  c.sub_expansion = erase_names(st.root);
  return c;
}

// The removal plan Procedure 1 follows for a and the selection.
inline std::vector<PlanEntry> procedure1_plan(const Formula& a, const Selection& sel, std::size_t n,
                                              PropertyCOptions opt = {}) {
  Construction c;
  detail::CopyPhase st{skolem_name_view(a)};
  st.taken = all_vars(a);
  st.walk(Path{}, sel);
  detail::procedure1(st, n, opt.mode, c.plan, c.name_renames);
  return c.plan;
}

// ---------------------------------------------------------------------------
// Free-variable construction from Property C*

struct FvConstruction {
  Derivation derivation;
  Formula b = Formula::atom("true");
  Substitution sigma;
  Formula skolemized = Formula::atom("true");  // delta++ form
  Selection selection;
  std::size_t gamma_simplifications = 0;
  std::size_t deltapp_steps = 0;
};

inline FvConstruction construct_fv_derivation(const Formula& a, std::size_t n, const std::optional<Selection>& sel,
                                              SkolemRegistry& reg, PropertyCOptions opt = {}) {
  FvConstruction c;
  c.skolemized = deltapp_skolemize(a, reg);
  c.selection = detail::selection_or_full(c.skolemized, sel, n, opt);
  if (!selection_within(c.selection, champ(c.skolemized, n, opt.mode, opt.budget)))
    throw Error("selection uses a term outside the champ fini of order " + std::to_string(n));
  detail::require_tautology(build_sub_expansion(c.skolemized, c.selection), "the selected sub-expansion");

  reg.reserve_signature(a);
  detail::CopyPhase st{a};
  st.taken = all_vars(a);
  st.walk(Path{}, c.selection);
  c.gamma_simplifications = st.copies;

  // Remove quantifiers top-down: gamma ones become gamma-variables, delta
  // ones are Skolemized through the registry.
  for (;;) {
    std::vector<Path> acc;
    detail::accessible_quantifiers(st.root, Path{}, acc);
    if (acc.empty()) break;
    const Path p = acc.front();
    const Formula q = at(st.root, p);
    if (classify_quantifier(st.root, p).cls == QuantClass::Gamma) {
      const Term g = Term::gamma(q.bound().name());
      c.sigma.emplace(g.id(), st.gamma_terms.at(q.bound().id()));
      st.steps.push_back(RuleStep::gamma(p, q.quantifier(), q.bound(), q.body(), g, Rule::RestrictedGammaQuant));
      st.root = replace_at(st.root, p, substitute(q.body(), Substitution{{q.bound().id(), g}}));
    } else {
      const std::vector<Term> args = deltapp_arguments(q);
      const auto entry = reg.lookup_or_register(canonical_key(q, args), skolem_base(q.bound()), args.size());
      const Term skt = Term::app(entry.symbol, args, true);
      st.steps.push_back(RuleStep::deltapp(p, q.quantifier(), q.bound(), q.body()));
      st.root = replace_at(st.root, p, substitute(q.body(), Substitution{{q.bound().id(), skt}}));
      ++c.deltapp_steps;
    }
  }
  c.b = st.root;
  c.derivation.mode = Mode::FreeVariable;
  c.derivation.axiom = st.root;
  c.derivation.steps = detail::reversed(st.steps);
  c.derivation.end = a;
  c.derivation.claims_theorem = false;
  return c;
}

// ---------------------------------------------------------------------------
// Order bounds

struct OrderBound {
  std::size_t value = 1;
  std::vector<Term> witnesses;
};

// 1 + sum of the heights of the gamma-quantification witnesses of an accepted
// heijenoort-mode derivation.
inline OrderBound derivation_order_bound(const Derivation& d, HeightMode mode = HeightMode::Standard) {
  if (d.mode != Mode::Heijenoort) throw Error("order bound needs a heijenoort-mode derivation");
  SkolemRegistry reg;
  const DerivationReport r = check_derivation(d, reg);
  if (!r.accepted) throw Error("derivation not accepted: " + r.detail);
  OrderBound b;
  b.witnesses = r.witnesses;
  for (const Term& t : r.witnesses) b.value += height(t, mode);
  return b;
}

using BigInt = boost::multiprecision::cpp_int;

// n * (N^r + 1)^n.
inline BigInt goedel_dreben_bound(unsigned n, unsigned r, const BigInt& N) {
  if (n == 0 || N == 0) throw Error("Goedel-Dreben bound needs n, N >= 1");
  return BigInt(n) * boost::multiprecision::pow(boost::multiprecision::pow(N, r) + 1, n);
}

// Leaves of the expansion of the three lines of the worked example: N^2 + N^3 + N.
inline BigInt leaf_count(const BigInt& N) { return N * N + N * N * N + N; }

// ---------------------------------------------------------------------------
// Herbrand's False Lemma

struct FalseLemmaCase {
  std::string name;
  HeightMode mode = HeightMode::Standard;
  Formula before = Formula::atom("true");
  Formula after = Formula::atom("true");
  std::string passage;  // the rule application relating before and after
  std::optional<std::size_t> order_before;
  std::optional<std::size_t> order_after;
};

struct FalseLemmaReport {
  std::vector<FalseLemmaCase> cases;
};

inline FalseLemmaReport demo_false_lemma(std::size_t n_max = 4) {
  FalseLemmaReport rep;
  const Formula ex1 = parse_formula("exists a. (~(exists b. p(b)) | p(a))");
  const Formula ex1_in = apply_passage(ex1, Path{}, 6, PassageDir::Antiprenex);
  const Formula b = parse_formula("((~(exists b. p(b))) | exists a. q(a)) | ((exists x. p(x)) & ~(exists y. q(y)))");
  const Formula b_prime = apply_passage(b, Path{{0}}, 6, PassageDir::Prenex);
  for (HeightMode mode : {HeightMode::Standard, HeightMode::Herbrand}) {
    const PropertyCOptions opt{mode, kDefaultNodeBudget};
    const char* mname = mode == HeightMode::Standard ? "standard heights" : "herbrand heights";
    rep.cases.push_back({std::string("counterexample 1, ") + mname, mode, ex1, ex1_in, "eq 6 anti-prenex at root",
                         min_order(ex1, false, n_max, opt), min_order(ex1_in, false, n_max, opt)});
    rep.cases.push_back({std::string("counterexample 2, ") + mname, mode, b, b_prime, "eq 6 prenex at path 0",
                         min_order(b, false, n_max, opt), min_order(b_prime, false, n_max, opt)});
  }
  return rep;
}

}  // namespace herbrand
