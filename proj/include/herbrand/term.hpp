#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "herbrand/error.hpp"

namespace herbrand {

// Which convention assigns heights to variables.  In Herbrand's own
// convention variables (and the fresh constant) have height 0.
enum class HeightMode { Standard, Herbrand };

inline constexpr const char* kDotSymbol = "@dot";
inline constexpr const char* kSkolemPrefix = "sk_";

// Immutable first-order term.  Nodes are shared, so copies are cheap.
//
//   Var       ordinary variable (bound, or free in the input)
//   GammaVar  free gamma-variable of the free-variable calculus, printed ?x
//   Named     variable whose name is a Skolem term, printed [sk_f(...)];
//             the encoded term is opaque: substitution never looks inside
//   App       function application, possibly flagged as a Skolem symbol
class Term {
 public:
  enum class Kind : std::uint8_t { Var, GammaVar, Named, App };

  static Term var(std::string name) { return Term(Kind::Var, std::move(name), false, {}); }
  static Term gamma(std::string name) {
    return Term(Kind::GammaVar, std::move(name), false, {});
  }
  static Term named(Term encoded) { return Term(Kind::Named, {}, false, {std::move(encoded)}); }
  static Term app(std::string symbol, std::vector<Term> args = {}, bool skolem = false) {
    return Term(Kind::App, std::move(symbol), skolem, std::move(args));
  }
  static Term dot() { return app(kDotSymbol); }

  Kind kind() const noexcept { return node_->kind; }
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_gamma() const noexcept { return kind() == Kind::GammaVar; }
  bool is_named() const noexcept { return kind() == Kind::Named; }
  bool is_app() const noexcept { return kind() == Kind::App; }
  // Anything that can be substituted for or bound.
  bool is_variable() const noexcept { return kind() != Kind::App; }
  bool is_dot() const noexcept { return is_app() && node_->name == kDotSymbol; }

  // Variable name, gamma-variable name, or function symbol.
  const std::string& name() const noexcept { return node_->name; }
  bool skolem() const noexcept { return node_->skolem; }
  std::span<const Term> args() const noexcept {
    return is_app() ? std::span<const Term>(node_->args) : std::span<const Term>();
  }
  std::size_t arity() const noexcept { return args().size(); }
  const Term& encoded() const { return node_->args.front(); }

  // Identity of a variable: x, ?x or [print of encoded term].
  std::string id() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    bool skolem;
    std::vector<Term> args;
  };

  Term(Kind kind, std::string name, bool skolem, std::vector<Term> args)
      : node_(std::make_shared<const Node>(Node{kind, std::move(name), skolem, std::move(args)})) {}

  std::shared_ptr<const Node> node_;
};

inline void print_term(std::string& out, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::GammaVar:
      out += '?';
      out += t.name();
      return;
    case Term::Kind::Named:
      out += '[';
      print_term(out, t.encoded());
      out += ']';
      return;
    case Term::Kind::App:
      out += t.name();
      if (t.arity() > 0) {
        out += '(';
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i > 0) out += ',';
          print_term(out, t.args()[i]);
        }
        out += ')';
      } else if (!t.skolem() && !t.is_dot()) {
        out += "()";
      }
      return;
  }
}

inline std::string to_string(const Term& t) {
  std::string out;
  print_term(out, t);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

inline std::string Term::id() const {
  switch (kind()) {
    case Kind::Var:
      return name();
    case Kind::GammaVar:
      return "?" + name();
    default:
      return to_string(*this);
  }
}

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.skolem() != b.skolem()) return false;
  if (a.node_->args.size() != b.node_->args.size()) return false;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  return true;
}

// 1 + max{0, |t1|, ..., |tm|}.  Named variables take the height of the Skolem
// term they encode.
inline std::size_t height(const Term& t, HeightMode mode = HeightMode::Standard) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::GammaVar:
      return mode == HeightMode::Standard ? 1 : 0;
    case Term::Kind::Named:
      return height(t.encoded(), mode);
    case Term::Kind::App: {
      if (t.is_dot() && mode == HeightMode::Herbrand) return 0;
      std::size_t h = 0;
      for (const Term& a : t.args()) h = std::max(h, height(a, mode));
      return 1 + h;
    }
  }
  return 0;
}

// Replaces every named variable by the Skolem term it encodes.
inline Term erase_names(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Named:
      return erase_names(t.encoded());
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.arity());
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(erase_names(a));
        changed = changed || !(args.back() == a);
      }
      return changed ? Term::app(t.name(), std::move(args), t.skolem()) : t;
    }
    default:
      return t;
  }
}

// Canonical term order: height, then print.
struct TermOrder {
  HeightMode mode = HeightMode::Standard;
  bool operator()(const Term& a, const Term& b) const {
    const std::size_t ha = height(a, mode);
    const std::size_t hb = height(b, mode);
    if (ha != hb) return ha < hb;
    return to_string(a) < to_string(b);
  }
};

// Free variables (ids) of a term.
inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.id());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

// Same, as terms in first-occurrence order.
inline void collect_vars_ordered(const Term& t, std::vector<Term>& out, std::set<std::string>& seen) {
  if (t.is_variable()) {
    if (seen.insert(t.id()).second) out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_vars_ordered(a, out, seen);
}

inline bool occurs_var(const Term& t, const std::string& id) {
  if (t.is_variable()) return t.id() == id;
  for (const Term& a : t.args())
    if (occurs_var(a, id)) return true;
  return false;
}

// Function symbols with their arities.  Throws on an arity clash.
inline void collect_functions(const Term& t, std::map<std::string, std::size_t>& out) {
  if (t.is_named()) {
    collect_functions(t.encoded(), out);
    return;
  }
  if (!t.is_app()) return;
  auto [it, inserted] = out.emplace(t.name(), t.arity());
  if (!inserted && it->second != t.arity())
    throw ArityError("function symbol '" + t.name() + "' used with arities " +
                     std::to_string(it->second) + " and " + std::to_string(t.arity()));
  for (const Term& a : t.args()) collect_functions(a, out);
}

// Substitution on the variables of a term, keyed by variable id.  Named
// variables are replaced only as a whole.
using Substitution = std::map<std::string, Term>;

inline Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  if (t.is_variable()) {
    auto it = s.find(t.id());
    return it == s.end() ? t : it->second;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(substitute(a, s));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.name(), std::move(args), t.skolem()) : t;
}

// Substitutes inside Skolem-name encodings too (used when a gamma-variable is
// instantiated and the names that mention it must follow).
inline Term substitute_in_names(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Named:
      return Term::named(substitute_in_names(t.encoded(), s));
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(substitute_in_names(a, s));
      return Term::app(t.name(), std::move(args), t.skolem());
    }
    default: {
      auto it = s.find(t.id());
      return it == s.end() ? t : it->second;
    }
  }
}

}  // namespace herbrand
