#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/term.hpp"

namespace herbrand {

enum class Quantifier : std::uint8_t { Forall, Exists };

inline const char* to_string(Quantifier q) { return q == Quantifier::Forall ? "forall" : "exists"; }

inline constexpr const char* kLessSymbol = "<";

// Immutable first-order formula over negation, conjunction, disjunction and
// the two quantifiers.  Implication exists only in concrete syntax.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And, Or, Forall, Exists };

  static Formula atom(std::string pred, std::vector<Term> args = {}) {
    return Formula(Kind::Atom, std::move(pred), std::move(args), {}, std::nullopt);
  }
  static Formula less(Term lhs, Term rhs) { return atom(kLessSymbol, {std::move(lhs), std::move(rhs)}); }
  static Formula negation(Formula f) { return Formula(Kind::Not, {}, {}, {std::move(f)}, std::nullopt); }
  static Formula conj(Formula a, Formula b) {
    return Formula(Kind::And, {}, {}, {std::move(a), std::move(b)}, std::nullopt);
  }
  static Formula disj(Formula a, Formula b) {
    return Formula(Kind::Or, {}, {}, {std::move(a), std::move(b)}, std::nullopt);
  }
  static Formula implies(Formula a, Formula b) { return disj(negation(std::move(a)), std::move(b)); }
  static Formula quant(Quantifier q, Term var, Formula body) {
    return Formula(q == Quantifier::Forall ? Kind::Forall : Kind::Exists, {}, {}, {std::move(body)},
                   std::move(var));
  }
  static Formula forall(Term var, Formula body) { return quant(Quantifier::Forall, std::move(var), std::move(body)); }
  static Formula exists(Term var, Formula body) { return quant(Quantifier::Exists, std::move(var), std::move(body)); }
  static Formula binary(Kind k, Formula a, Formula b) {
    return k == Kind::And ? conj(std::move(a), std::move(b)) : disj(std::move(a), std::move(b));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_not() const noexcept { return kind() == Kind::Not; }
  bool is_binary() const noexcept { return kind() == Kind::And || kind() == Kind::Or; }
  bool is_quant() const noexcept { return kind() == Kind::Forall || kind() == Kind::Exists; }

  const std::string& pred() const noexcept { return node_->pred; }
  std::span<const Term> args() const noexcept { return node_->args; }
  std::size_t num_children() const noexcept { return node_->children.size(); }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  const Formula& body() const { return node_->children[0]; }
  const Term& bound() const { return *node_->var; }
  Quantifier quantifier() const noexcept {
    return kind() == Kind::Forall ? Quantifier::Forall : Quantifier::Exists;
  }

  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }
  const void* identity() const noexcept { return node_.get(); }

  // Rebuilds this node around new children (same kind, same binder).
  Formula with_children(std::vector<Formula> children) const {
    return Formula(kind(), node_->pred, node_->args, std::move(children), node_->var);
  }

 private:
  struct Node {
    Kind kind;
    std::string pred;
    std::vector<Term> args;
    std::vector<Formula> children;
    std::optional<Term> var;
  };

  Formula(Kind kind, std::string pred, std::vector<Term> args, std::vector<Formula> children,
          std::optional<Term> var)
      : node_(std::make_shared<const Node>(
            Node{kind, std::move(pred), std::move(args), std::move(children), std::move(var)})) {}

  std::shared_ptr<const Node> node_;
};

// Structural equality (bound variable names included).
inline bool operator==(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: {
      if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (a.args()[i] != b.args()[i]) return false;
      return true;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return a.bound() == b.bound() && a.body() == b.body();
    default:
      for (std::size_t i = 0; i < a.num_children(); ++i)
        if (!(a.child(i) == b.child(i))) return false;
      return true;
  }
}
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_atom(std::string& out, const Formula& f) {
  if (f.pred() == kLessSymbol && f.args().size() == 2) {
    print_term(out, f.args()[0]);
    out += " < ";
    print_term(out, f.args()[1]);
    return;
  }
  out += f.pred();
  if (!f.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < f.args().size(); ++i) {
      if (i > 0) out += ',';
      print_term(out, f.args()[i]);
    }
    out += ')';
  }
}

// Operand positions: which child kinds print without parentheses.
enum class Slot { Top, NotOperand, AndLeft, AndRight, OrLeft, OrRight };

inline bool needs_parens(const Formula& f, Slot slot) {
  using K = Formula::Kind;
  switch (slot) {
    case Slot::Top:
      return false;
    case Slot::NotOperand:
      return f.kind() != K::Atom && f.kind() != K::Not;
    case Slot::AndLeft:
      return f.kind() == K::Or || f.is_quant();
    case Slot::AndRight:
      return f.kind() == K::Or || f.kind() == K::And || f.is_quant();
    case Slot::OrLeft:
      return f.is_quant();
    case Slot::OrRight:
      return f.kind() == K::Or || f.is_quant();
  }
  return true;
}

inline void print_formula(std::string& out, const Formula& f, Slot slot) {
  const bool parens = needs_parens(f, slot);
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Atom:
      print_atom(out, f);
      break;
    case Formula::Kind::Not:
      out += '~';
      print_formula(out, f.body(), Slot::NotOperand);
      break;
    case Formula::Kind::And:
      print_formula(out, f.lhs(), Slot::AndLeft);
      out += " & ";
      print_formula(out, f.rhs(), Slot::AndRight);
      break;
    case Formula::Kind::Or:
      print_formula(out, f.lhs(), Slot::OrLeft);
      out += " | ";
      print_formula(out, f.rhs(), Slot::OrRight);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += to_string(f.quantifier());
      out += ' ';
      print_term(out, f.bound());
      out += ". ";
      print_formula(out, f.body(), Slot::Top);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_formula(out, f, detail::Slot::Top);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Paths

// Child indices from the root: Not -> 0; And/Or -> 0, 1; quantifier -> 0.
struct Path {
  std::vector<std::size_t> indices;

  bool empty() const noexcept { return indices.empty(); }
  std::size_t size() const noexcept { return indices.size(); }
  Path child(std::size_t i) const {
    Path p = *this;
    p.indices.push_back(i);
    return p;
  }
  Path parent() const {
    Path p = *this;
    if (!p.indices.empty()) p.indices.pop_back();
    return p;
  }
  bool is_prefix_of(const Path& other) const {
    return indices.size() <= other.indices.size() &&
           std::equal(indices.begin(), indices.end(), other.indices.begin());
  }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

inline std::string to_string(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.indices.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(p.indices[i]);
  }
  return out;
}

inline Path parse_path(const std::string& text) {
  Path p;
  if (text.empty() || text == "root") return p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string::npos) dot = text.size();
    const std::string part = text.substr(pos, dot - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw PathError("malformed path '" + text + "'");
    p.indices.push_back(std::stoul(part));
    pos = dot + 1;
  }
  return p;
}

inline const Formula& at(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  for (std::size_t idx : p.indices) {
    if (idx >= cur->num_children())
      throw PathError("path " + to_string(p) + " does not address a node");
    cur = &cur->child(idx);
  }
  return *cur;
}

inline bool valid_path(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  for (std::size_t idx : p.indices) {
    if (idx >= cur->num_children()) return false;
    cur = &cur->child(idx);
  }
  return true;
}

namespace detail {
inline Formula replace_at(const Formula& f, const Path& p, std::size_t depth, const Formula& g) {
  if (depth == p.indices.size()) return g;
  const std::size_t idx = p.indices[depth];
  if (idx >= f.num_children()) throw PathError("path " + to_string(p) + " does not address a node");
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.num_children(); ++i)
    children.push_back(i == idx ? replace_at(f.child(i), p, depth + 1, g) : f.child(i));
  return f.with_children(std::move(children));
}
}  // namespace detail

inline Formula replace_at(const Formula& f, const Path& p, const Formula& g) {
  return detail::replace_at(f, p, 0, g);
}

// ---------------------------------------------------------------------------
// Polarity and quantifier classification

enum class Polarity : std::uint8_t { Positive, Negative };
enum class QuantClass : std::uint8_t { Gamma, Delta };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

// Positive iff an even number of negations lie strictly above the path.
inline Polarity polarity_at(const Formula& f, const Path& p) {
  Polarity pol = Polarity::Positive;
  const Formula* cur = &f;
  for (std::size_t idx : p.indices) {
    if (idx >= cur->num_children())
      throw PathError("path " + to_string(p) + " does not address a node");
    if (cur->is_not()) pol = flip(pol);
    cur = &cur->child(idx);
  }
  return pol;
}

inline QuantClass quant_class(Quantifier q, Polarity pol) {
  const bool gamma = (q == Quantifier::Exists) == (pol == Polarity::Positive);
  return gamma ? QuantClass::Gamma : QuantClass::Delta;
}

// In the scope of no quantifier.
inline bool is_accessible(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  for (std::size_t idx : p.indices) {
    if (cur->is_quant()) return false;
    cur = &cur->child(idx);
  }
  return true;
}

struct QuantInfo {
  QuantClass cls;
  bool accessible;
};

inline QuantInfo classify_quantifier(const Formula& f, const Path& p) {
  const Formula& node = at(f, p);
  if (!node.is_quant()) throw PathError("node at " + to_string(p) + " is not a quantifier");
  return {quant_class(node.quantifier(), polarity_at(f, p)), is_accessible(f, p)};
}

// ---------------------------------------------------------------------------
// Variables and symbols

namespace detail {
inline void free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::set<std::string> vs;
      for (const Term& t : f.args()) collect_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.contains(v)) out.insert(v);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::string id = f.bound().id();
      const bool fresh = bound.insert(id).second;
      free_vars(f.body(), bound, out);
      if (fresh) bound.erase(id);
      return;
    }
    default:
      for (std::size_t i = 0; i < f.num_children(); ++i) free_vars(f.child(i), bound, out);
  }
}

inline void free_vars_ordered(const Formula& f, std::set<std::string>& bound, std::vector<Term>& out,
                              std::set<std::string>& seen) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> vs;
      std::set<std::string> local;
      for (const Term& t : f.args()) collect_vars_ordered(t, vs, local);
      for (const Term& v : vs)
        if (!bound.contains(v.id()) && seen.insert(v.id()).second) out.push_back(v);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::string id = f.bound().id();
      const bool fresh = bound.insert(id).second;
      free_vars_ordered(f.body(), bound, out, seen);
      if (fresh) bound.erase(id);
      return;
    }
    default:
      for (std::size_t i = 0; i < f.num_children(); ++i) free_vars_ordered(f.child(i), bound, out, seen);
  }
}
}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars(f, bound, out);
  return out;
}

// Free variables as terms, in order of first occurrence in the print.
inline std::vector<Term> free_vars_ordered(const Formula& f) {
  std::set<std::string> bound, seen;
  std::vector<Term> out;
  detail::free_vars_ordered(f, bound, out, seen);
  return out;
}

inline bool occurs_free(const Formula& f, const std::string& id) { return free_vars(f).contains(id); }

inline void collect_bound_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_quant()) out.insert(f.bound().id());
  for (std::size_t i = 0; i < f.num_children(); ++i) collect_bound_vars(f.child(i), out);
}

inline std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  collect_bound_vars(f, out);
  return out;
}

// Every variable id occurring anywhere, free or bound.
inline std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out = bound_vars(f);
  std::set<std::string> fv = free_vars(f);
  out.insert(fv.begin(), fv.end());
  return out;
}

inline bool is_quantifier_free(const Formula& f) {
  if (f.is_quant()) return false;
  for (std::size_t i = 0; i < f.num_children(); ++i)
    if (!is_quantifier_free(f.child(i))) return false;
  return true;
}

inline std::size_t count_quantifiers(const Formula& f) {
  std::size_t n = f.is_quant() ? 1 : 0;
  for (std::size_t i = 0; i < f.num_children(); ++i) n += count_quantifiers(f.child(i));
  return n;
}

struct Signature {
  std::map<std::string, std::size_t> functions;   // includes constants
  std::map<std::string, std::size_t> predicates;
};

inline void collect_signature(const Formula& f, Signature& sig) {
  if (f.is_atom()) {
    auto [it, inserted] = sig.predicates.emplace(f.pred(), f.args().size());
    if (!inserted && it->second != f.args().size())
      throw ArityError("predicate '" + f.pred() + "' used with arities " + std::to_string(it->second) +
                       " and " + std::to_string(f.args().size()));
    for (const Term& t : f.args()) collect_functions(t, sig.functions);
    return;
  }
  if (f.is_quant()) collect_functions(f.bound(), sig.functions);
  for (std::size_t i = 0; i < f.num_children(); ++i) collect_signature(f.child(i), sig);
}

inline Signature signature_of(const Formula& f) {
  Signature sig;
  collect_signature(f, sig);
  return sig;
}

// ---------------------------------------------------------------------------
// Fresh names

inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken.contains(candidate)) return candidate;
  }
}

// Base name for renaming a variable: its own name, or "v" for named ones.
inline std::string base_name(const Term& v) { return v.is_var() ? v.name() : std::string("v"); }

// ---------------------------------------------------------------------------
// Substitution

inline Formula map_atoms(const Formula& f, const auto& fn) {
  if (f.is_atom()) return fn(f);
  std::vector<Formula> children;
  children.reserve(f.num_children());
  for (std::size_t i = 0; i < f.num_children(); ++i) children.push_back(map_atoms(f.child(i), fn));
  return f.with_children(std::move(children));
}

namespace detail {

inline Formula substitute(const Formula& f, const Substitution& s, bool strict) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const Term& t : f.args()) args.push_back(herbrand::substitute(t, s));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::set<std::string> body_free = free_vars(f.body());
      Substitution inner;
      for (const auto& [k, v] : s)
        if (k != f.bound().id() && body_free.contains(k)) inner.emplace(k, v);
      if (inner.empty()) return f;
      std::set<std::string> range_vars;
      for (const auto& [k, v] : inner) collect_vars(v, range_vars);
      Term var = f.bound();
      Formula body = f.body();
      if (range_vars.contains(var.id())) {
        if (strict)
          throw CaptureError("substitution would capture '" + var.id() + "' under " +
                             to_string(f.quantifier()) + " " + var.id());
        std::set<std::string> taken = range_vars;
        taken.insert(body_free.begin(), body_free.end());
        collect_bound_vars(body, taken);
        for (const auto& [k, v] : inner) taken.insert(k);
        Term renamed = Term::var(fresh_name(base_name(var), taken));
        body = substitute(body, Substitution{{var.id(), renamed}}, false);
        var = renamed;
      }
      return Formula::quant(f.quantifier(), var, substitute(body, inner, strict));
    }
    default: {
      std::vector<Formula> children;
      for (std::size_t i = 0; i < f.num_children(); ++i) children.push_back(substitute(f.child(i), s, strict));
      return f.with_children(std::move(children));
    }
  }
}

}  // namespace detail

// Capture-avoiding substitution: bound variables that would capture a free
// variable of the range are renamed first.
inline Formula substitute(const Formula& f, const Substitution& s) { return detail::substitute(f, s, false); }

// Like substitute, but throws CaptureError instead of renaming.
inline Formula substitute_strict(const Formula& f, const Substitution& s) {
  return detail::substitute(f, s, true);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {

inline void alpha_print_term(std::string& out, const Term& t, const std::map<std::string, std::string>& env) {
  if (t.is_variable()) {
    auto it = env.find(t.id());
    out += it == env.end() ? t.id() : it->second;
    return;
  }
  out += t.name();
  if (t.arity() > 0 || (!t.skolem() && !t.is_dot())) out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ',';
    alpha_print_term(out, t.args()[i], env);
  }
  if (t.arity() > 0 || (!t.skolem() && !t.is_dot())) out += ')';
}

inline void alpha_print(std::string& out, const Formula& f, std::map<std::string, std::string>& env,
                        std::size_t& counter) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.pred();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i > 0) out += ',';
        alpha_print_term(out, f.args()[i], env);
      }
      out += ')';
      return;
    case Formula::Kind::Not:
      out += "~(";
      alpha_print(out, f.body(), env, counter);
      out += ')';
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out += f.kind() == Formula::Kind::And ? "&(" : "|(";
      alpha_print(out, f.lhs(), env, counter);
      out += ',';
      alpha_print(out, f.rhs(), env, counter);
      out += ')';
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::string id = f.bound().id();
      const std::string slot = "#" + std::to_string(counter++);
      auto saved = env.find(id) == env.end() ? std::optional<std::string>() : std::optional(env[id]);
      env[id] = slot;
      out += f.kind() == Formula::Kind::Forall ? "A" : "E";
      out += slot;
      out += '(';
      alpha_print(out, f.body(), env, counter);
      out += ')';
      if (saved) env[id] = *saved;
      else env.erase(id);
      return;
    }
  }
}

}  // namespace detail

// Print with bound variables numbered in binding order; equal iff alpha-variant.
// Free variables keep their names, so this also serves as a canonical key with
// selected free variables pre-seeded in env.
inline std::string alpha_canonical(const Formula& f, std::map<std::string, std::string> env = {}) {
  std::string out;
  std::size_t counter = 0;
  detail::alpha_print(out, f, env, counter);
  return out;
}

inline bool alpha_equal(const Formula& a, const Formula& b) { return alpha_canonical(a) == alpha_canonical(b); }

// ---------------------------------------------------------------------------
// Rectification

inline bool is_rectified(const Formula& f) {
  const std::set<std::string> fv = free_vars(f);
  std::set<std::string> seen;
  bool ok = true;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    if (!ok) return;
    if (g.is_quant()) {
      const std::string id = g.bound().id();
      if (fv.contains(id) || !seen.insert(id).second || !occurs_free(g.body(), id)) {
        ok = false;
        return;
      }
    }
    for (std::size_t i = 0; i < g.num_children(); ++i) self(self, g.child(i));
  };
  walk(walk, f);
  return ok;
}

// Deletes vacuous quantifiers and renames bound variables in left-to-right
// preorder, appending _1, _2, ... on collision.
inline Formula rectify(const Formula& f) {
  std::set<std::string> taken = all_vars(f);
  std::set<std::string> used = free_vars(f);
  auto walk = [&](auto&& self, const Formula& g, const Substitution& ren) -> Formula {
    switch (g.kind()) {
      case Formula::Kind::Atom: {
        std::vector<Term> args;
        for (const Term& t : g.args()) args.push_back(substitute(t, ren));
        return Formula::atom(g.pred(), std::move(args));
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const Term& v = g.bound();
        if (!occurs_free(g.body(), v.id())) return self(self, g.body(), ren);
        Term nv = v;
        if (used.contains(v.id())) {
          nv = Term::var(fresh_name(base_name(v), [&] {
            std::set<std::string> t = taken;
            t.insert(used.begin(), used.end());
            return t;
          }()));
          taken.insert(nv.id());
        }
        used.insert(nv.id());
        Substitution inner = ren;
        inner.erase(v.id());
        if (nv != v) inner.insert_or_assign(v.id(), nv);
        return Formula::quant(g.quantifier(), nv, self(self, g.body(), inner));
      }
      default: {
        std::vector<Formula> children;
        for (std::size_t i = 0; i < g.num_children(); ++i) children.push_back(self(self, g.child(i), ren));
        return g.with_children(std::move(children));
      }
    }
  };
  return walk(walk, f, Substitution{});
}

// ---------------------------------------------------------------------------
// Misc views

inline Formula erase_names(const Formula& f) {
  if (f.is_atom()) {
    std::vector<Term> args;
    for (const Term& t : f.args()) args.push_back(erase_names(t));
    return Formula::atom(f.pred(), std::move(args));
  }
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.num_children(); ++i) children.push_back(erase_names(f.child(i)));
  if (f.is_quant()) return Formula::quant(f.quantifier(), f.bound(), children.front());
  return f.with_children(std::move(children));
}

// Print modulo associativity and commutativity of & and |.
inline std::string ac_normal(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return to_string(f);
    case Formula::Kind::Not:
      return "~(" + ac_normal(f.body()) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<std::string> parts;
      auto flatten = [&](auto&& self, const Formula& g) -> void {
        if (g.kind() == f.kind()) {
          self(self, g.lhs());
          self(self, g.rhs());
        } else {
          parts.push_back(ac_normal(g));
        }
      };
      flatten(flatten, f);
      std::sort(parts.begin(), parts.end());
      std::string out = f.kind() == Formula::Kind::And ? "&{" : "|{";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += ", ";
        out += parts[i];
      }
      return out + "}";
    }
    default:
      return std::string(to_string(f.quantifier())) + " " + f.bound().id() + ". (" + ac_normal(f.body()) + ")";
  }
}

inline bool ac_equal(const Formula& a, const Formula& b) { return ac_normal(a) == ac_normal(b); }

// Builds a left-associated chain op(op(f1, f2), f3) ...
inline Formula chain(Formula::Kind op, const std::vector<Formula>& parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::binary(op, acc, parts[i]);
  return acc;
}

// Paths of all quantifier nodes, in preorder.
inline std::vector<Path> quantifier_paths(const Formula& f) {
  std::vector<Path> out;
  auto walk = [&](auto&& self, const Formula& g, Path p) -> void {
    if (g.is_quant()) out.push_back(p);
    for (std::size_t i = 0; i < g.num_children(); ++i) self(self, g.child(i), p.child(i));
  };
  walk(walk, f, Path{});
  return out;
}

}  // namespace herbrand
