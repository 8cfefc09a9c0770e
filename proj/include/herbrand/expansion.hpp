#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/formula.hpp"
#include "herbrand/parser.hpp"
#include "herbrand/term.hpp"

namespace herbrand {

inline constexpr std::size_t kDefaultNodeBudget = 2'000'000;

// T_n(F): all terms of height < n over the free symbols of F, free variables
// counting as constants.
struct ChampFini {
  std::size_t order = 1;
  HeightMode mode = HeightMode::Standard;
  std::map<std::string, std::size_t> signature;
  bool has_dot = false;
  std::vector<Term> terms;  // canonical order

  std::size_t size() const noexcept { return terms.size(); }
  bool contains(const Term& t) const {
    const std::string key = to_string(erase_names(t));
    for (const Term& u : terms)
      if (to_string(u) == key) return true;
    return false;
  }
};

// Number of terms of height < n, computed by counting rather than building.
inline std::size_t champ_size_estimate(const std::map<std::string, std::size_t>& sig, std::size_t base_h0,
                                       std::size_t base_h1, std::size_t n, std::size_t cap) {
  // by_height[h] = number of terms of height exactly h
  std::vector<double> by_height(n + 1, 0.0);
  by_height[0] = static_cast<double>(base_h0);
  if (n > 1) by_height[1] = static_cast<double>(base_h1);
  for (std::size_t h = 1; h < n; ++h) {
    double below = 0, below_minus = 0;
    for (std::size_t k = 0; k < h; ++k) below += by_height[k];
    for (std::size_t k = 0; k + 1 < h; ++k) below_minus += by_height[k];
    for (const auto& [sym, arity] : sig) {
      if (arity == 0) continue;
      double all = 1, lower = 1;
      for (std::size_t i = 0; i < arity; ++i) {
        all *= below;
        lower *= below_minus;
      }
      by_height[h] += all - lower;
    }
  }
  double total = 0;
  for (std::size_t h = 0; h < n; ++h) total += by_height[h];
  return total > static_cast<double>(cap) ? cap + 1 : static_cast<std::size_t>(total);
}

inline ChampFini champ(const Formula& f, std::size_t n, HeightMode mode = HeightMode::Standard,
                       std::size_t budget = kDefaultNodeBudget) {
  if (n == 0) throw Error("champ order must be positive");
  ChampFini c;
  c.order = n;
  c.mode = mode;
  c.signature = signature_of(f).functions;

  std::vector<Term> base;
  for (const auto& [sym, arity] : c.signature)
    if (arity == 0) base.push_back(Term::app(sym, {}, is_skolem_name(sym) || sym == kDotSymbol));
  for (const std::string& id : free_vars(f)) {
    if (id.starts_with('?')) base.push_back(Term::gamma(id.substr(1)));
    else if (id.starts_with('[')) base.push_back(parse_term(id));
    else base.push_back(Term::var(id));
  }
  if (base.empty()) {
    c.has_dot = true;
    c.signature.emplace(kDotSymbol, 0);
    base.push_back(Term::dot());
  }

  std::size_t h0 = 0, h1 = 0;
  for (const Term& t : base) (height(t, mode) == 0 ? h0 : h1)++;
  if (champ_size_estimate(c.signature, h0, h1, n, budget) > budget)
    throw SizeGuardExceeded("champ of order " + std::to_string(n) + " exceeds the term budget");

  std::vector<std::vector<Term>> by_height(n);
  for (const Term& t : base) {
    const std::size_t h = height(t, mode);
    if (h < n) by_height[h].push_back(t);
  }
  for (std::size_t h = 1; h < n; ++h) {
    std::vector<Term> lower;
    for (std::size_t k = 0; k < h; ++k) lower.insert(lower.end(), by_height[k].begin(), by_height[k].end());
    if (lower.empty()) continue;
    for (const auto& [sym, arity] : c.signature) {
      if (arity == 0) continue;
      std::vector<std::size_t> idx(arity, 0);
      for (;;) {
        std::vector<Term> args;
        std::size_t max_h = 0;
        for (std::size_t i = 0; i < arity; ++i) {
          args.push_back(lower[idx[i]]);
          max_h = std::max(max_h, height(args.back(), mode));
        }
        if (max_h + 1 == h) by_height[h].push_back(Term::app(sym, std::move(args), is_skolem_name(sym)));
        std::size_t i = arity;
        while (i > 0 && ++idx[i - 1] == lower.size()) idx[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  for (auto& level : by_height) c.terms.insert(c.terms.end(), level.begin(), level.end());
  std::sort(c.terms.begin(), c.terms.end(), TermOrder{mode});
  return c;
}

namespace detail {

inline double expansion_leaves(const Formula& f, double per_quant) {
  if (f.is_atom()) return 1;
  double sum = 0;
  for (std::size_t i = 0; i < f.num_children(); ++i) sum += expansion_leaves(f.child(i), per_quant);
  return f.is_quant() ? per_quant * sum : sum;
}

// Renames bound variables of f that clash with variables of the term set.
inline Formula avoid_term_vars(const Formula& f, const std::vector<Term>& terms) {
  std::set<std::string> tv;
  for (const Term& t : terms) collect_vars(t, tv);
  std::set<std::string> clash;
  for (const std::string& b : bound_vars(f))
    if (tv.contains(b)) clash.insert(b);
  if (clash.empty()) return f;
  std::set<std::string> taken = all_vars(f);
  taken.insert(tv.begin(), tv.end());
  auto walk = [&](auto&& self, const Formula& g) -> Formula {
    if (g.is_quant() && clash.contains(g.bound().id())) {
      const Term nv = Term::var(fresh_name(base_name(g.bound()), taken));
      taken.insert(nv.id());
      Formula body = substitute(g.body(), Substitution{{g.bound().id(), nv}});
      return Formula::quant(g.quantifier(), nv, self(self, body));
    }
    if (g.is_atom()) return g;
    std::vector<Formula> children;
    for (std::size_t i = 0; i < g.num_children(); ++i) children.push_back(self(self, g.child(i)));
    return g.with_children(std::move(children));
  };
  return walk(walk, f);
}

inline Formula expand(const Formula& f, const std::vector<Term>& terms) {
  if (f.is_atom()) return f;
  if (f.is_quant()) {
    std::vector<Formula> parts;
    parts.reserve(terms.size());
    for (const Term& t : terms)
      parts.push_back(expand(substitute(f.body(), Substitution{{f.bound().id(), t}}), terms));
    return chain(f.kind() == Formula::Kind::Exists ? Formula::Kind::Or : Formula::Kind::And, parts);
  }
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.num_children(); ++i) children.push_back(expand(f.child(i), terms));
  return f.with_children(std::move(children));
}

}  // namespace detail

// F^T: every quantifier becomes the disjunction (exists) or conjunction
// (forall) of its instances over T, in the given order.
inline Formula expand(const Formula& f, const std::vector<Term>& terms, std::size_t budget = kDefaultNodeBudget) {
  if (is_quantifier_free(f)) return f;
  if (terms.empty()) throw Error("expansion over the empty term set is undefined for quantified formulas");
  if (detail::expansion_leaves(f, static_cast<double>(terms.size())) > static_cast<double>(budget))
    throw SizeGuardExceeded("expansion exceeds the node budget");
  return detail::expand(detail::avoid_term_vars(f, terms), terms);
}

inline Formula expand(const Formula& f, const ChampFini& c, std::size_t budget = kDefaultNodeBudget) {
  return expand(f, c.terms, budget);
}

// ---------------------------------------------------------------------------
// Selection trees

// Mirrors the quantifier skeleton of a formula.  A quantifier node carries
// its chosen instances and either one body selection shared by all of them
// or one per instance.  Leaf stands for any quantifier-free subformula.
struct Selection {
  enum class Kind { Leaf, Not, And, Or, Quant };
  Kind kind = Kind::Leaf;
  Quantifier quantifier = Quantifier::Forall;
  std::string var;
  std::vector<Term> terms;
  std::vector<Selection> children;

  static Selection leaf() { return {}; }
  static Selection negation(Selection s) { return {Kind::Not, {}, {}, {}, {std::move(s)}}; }
  static Selection binary(Kind k, Selection a, Selection b) { return {k, {}, {}, {}, {std::move(a), std::move(b)}}; }
  static Selection quant(Quantifier q, std::string var, std::vector<Term> terms, std::vector<Selection> bodies) {
    return {Kind::Quant, q, std::move(var), std::move(terms), std::move(bodies)};
  }

  // Body selection for the i-th instance.
  const Selection& body(std::size_t i) const { return children.size() == 1 ? children[0] : children.at(i); }
};

inline void print_selection(std::string& out, const Selection& s) {
  switch (s.kind) {
    case Selection::Kind::Leaf:
      out += '-';
      return;
    case Selection::Kind::Not:
      out += "(not ";
      print_selection(out, s.children[0]);
      out += ')';
      return;
    case Selection::Kind::And:
    case Selection::Kind::Or:
      out += s.kind == Selection::Kind::And ? "(and " : "(or ";
      print_selection(out, s.children[0]);
      out += ' ';
      print_selection(out, s.children[1]);
      out += ')';
      return;
    case Selection::Kind::Quant:
      out += '(';
      out += to_string(s.quantifier);
      out += ' ';
      out += s.var;
      out += " (";
      for (std::size_t i = 0; i < s.terms.size(); ++i) {
        if (i > 0) out += ' ';
        print_term(out, s.terms[i]);
      }
      out += ')';
      for (const Selection& c : s.children) {
        out += ' ';
        print_selection(out, c);
      }
      out += ')';
      return;
  }
}

inline std::string to_string(const Selection& s) {
  std::string out;
  print_selection(out, s);
  return out;
}

namespace detail {

inline Selection parse_selection(Parser& p) {
  if (p.accept(Token::Kind::Minus)) return Selection::leaf();
  const Token open = p.expect(Token::Kind::LParen, "'(' or '-'");
  const Token head = p.expect(Token::Kind::Ident, "selection keyword");
  Selection s;
  if (head.text == "not") {
    s = Selection::negation(parse_selection(p));
  } else if (head.text == "and" || head.text == "or") {
    Selection a = parse_selection(p);
    Selection b = parse_selection(p);
    s = Selection::binary(head.text == "and" ? Selection::Kind::And : Selection::Kind::Or, std::move(a),
                          std::move(b));
  } else if (head.text == "forall" || head.text == "exists") {
    const Token var = p.expect(Token::Kind::Ident, "variable");
    p.expect(Token::Kind::LParen, "'(' opening the term list");
    std::vector<Term> terms;
    while (!p.accept(Token::Kind::RParen)) {
      terms.push_back(p.term());
      p.accept(Token::Kind::Comma);
    }
    if (terms.empty()) throw SyntaxError("empty term choice for " + var.text, var.line, var.column);
    std::vector<Selection> bodies;
    while (p.peek().kind != Token::Kind::RParen) bodies.push_back(parse_selection(p));
    if (bodies.empty()) bodies.push_back(Selection::leaf());
    if (bodies.size() != 1 && bodies.size() != terms.size())
      throw SyntaxError("expected one body selection or one per term for " + var.text, var.line, var.column);
    s = Selection::quant(head.text == "forall" ? Quantifier::Forall : Quantifier::Exists, var.text,
                         std::move(terms), std::move(bodies));
  } else {
    throw SyntaxError("unknown selection keyword '" + head.text + "'", head.line, head.column);
  }
  p.expect(Token::Kind::RParen, "')'");
  (void)open;
  return s;
}

}  // namespace detail

inline Selection parse_selection(std::string_view text) {
  Parser p(text);
  Selection s = detail::parse_selection(p);
  p.expect_end();
  return s;
}

// Selection choosing every term of T at every quantifier of f.
inline Selection full_selection(const Formula& f, const std::vector<Term>& terms) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return Selection::leaf();
    case Formula::Kind::Not:
      return Selection::negation(full_selection(f.body(), terms));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Selection a = full_selection(f.lhs(), terms);
      Selection b = full_selection(f.rhs(), terms);
      if (a.kind == Selection::Kind::Leaf && b.kind == Selection::Kind::Leaf) return Selection::leaf();
      return Selection::binary(f.kind() == Formula::Kind::And ? Selection::Kind::And : Selection::Kind::Or,
                               std::move(a), std::move(b));
    }
    default:
      return Selection::quant(f.quantifier(), f.bound().id(), terms, {full_selection(f.body(), terms)});
  }
}

inline bool selection_within(const Selection& s, const std::set<std::string>& allowed) {
  for (const Term& t : s.terms)
    if (!allowed.contains(to_string(erase_names(t)))) return false;
  for (const Selection& c : s.children)
    if (!selection_within(c, allowed)) return false;
  return true;
}

inline bool selection_within(const Selection& s, const std::vector<Term>& terms) {
  std::set<std::string> allowed;
  for (const Term& t : terms) allowed.insert(to_string(erase_names(t)));
  return selection_within(s, allowed);
}

inline bool selection_within(const Selection& s, const ChampFini& c) { return selection_within(s, c.terms); }

// Every chosen term, in preorder.
inline void selection_terms(const Selection& s, std::vector<Term>& out) {
  out.insert(out.end(), s.terms.begin(), s.terms.end());
  for (const Selection& c : s.children) selection_terms(c, out);
}

// Like expand, but each quantifier is instantiated with the terms chosen at
// the corresponding selection node, in selection order.
inline Formula build_sub_expansion(const Formula& f, const Selection& s) {
  if (s.kind == Selection::Kind::Leaf) {
    if (!is_quantifier_free(f)) throw SkeletonMismatch("leaf selection at quantified subformula " + to_string(f));
    return f;
  }
  switch (f.kind()) {
    case Formula::Kind::Atom:
      throw SkeletonMismatch("selection continues below atom " + to_string(f));
    case Formula::Kind::Not:
      if (s.kind != Selection::Kind::Not) throw SkeletonMismatch("expected a negation selection at " + to_string(f));
      return Formula::negation(build_sub_expansion(f.body(), s.children[0]));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const auto want = f.kind() == Formula::Kind::And ? Selection::Kind::And : Selection::Kind::Or;
      if (s.kind != want) throw SkeletonMismatch("connective mismatch at " + to_string(f));
      return f.with_children({build_sub_expansion(f.lhs(), s.children[0]), build_sub_expansion(f.rhs(), s.children[1])});
    }
    default: {
      if (s.kind != Selection::Kind::Quant || s.quantifier != f.quantifier() || s.var != f.bound().id())
        throw SkeletonMismatch("quantifier mismatch at " + to_string(f));
      if (s.terms.empty()) throw SkeletonMismatch("empty term choice for " + s.var);
      std::set<std::string> tv;
      for (const Term& t : s.terms) collect_vars(t, tv);
      for (const std::string& b : bound_vars(f))
        if (tv.contains(b)) throw SkeletonMismatch("chosen term mentions bound variable " + b);
      std::vector<Formula> parts;
      for (std::size_t i = 0; i < s.terms.size(); ++i)
        parts.push_back(build_sub_expansion(substitute(f.body(), Substitution{{f.bound().id(), s.terms[i]}}), s.body(i)));
      return chain(f.kind() == Formula::Kind::Exists ? Formula::Kind::Or : Formula::Kind::And, parts);
    }
  }
}

}  // namespace herbrand
