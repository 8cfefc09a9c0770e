#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/formula.hpp"
#include "herbrand/term.hpp"

namespace herbrand {

// Canonical key of a delta-scope Qy.H with argument variables g1..gm: the
// scope printed with bound variables numbered in binding order and gi
// replaced by $i.  Invariant under renaming bound variables and under any
// bijective renaming of the arguments.
inline std::string canonical_key(const Formula& scope, const std::vector<Term>& args) {
  std::map<std::string, std::string> env;
  for (std::size_t i = 0; i < args.size(); ++i) env[args[i].id()] = "$" + std::to_string(i + 1);
  return alpha_canonical(scope, std::move(env));
}

// Symbol stem for a binder: the name without a trailing "_k" added by
// rectification, so variant scopes agree on the symbol they introduce.
inline std::string skolem_base(const Term& v) {
  std::string n = base_name(v);
  const auto cut = n.find_last_of('_');
  if (cut != std::string::npos && cut > 0 && cut + 1 < n.size() &&
      std::all_of(n.begin() + static_cast<std::ptrdiff_t>(cut) + 1, n.end(), [](unsigned char c) { return std::isdigit(c); }))
    n.erase(cut);
  return n;
}

// The delta function: canonical scope key -> Skolem symbol of fixed arity.
class SkolemRegistry {
 public:
  struct Entry {
    std::string symbol;
    std::size_t arity;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static std::uint64_t hash_key(const std::string& key) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::optional<Entry> find(const std::string& key) const {
    auto it = entries_.find(hash_key(key));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  Entry lookup_or_register(const std::string& key, const std::string& base, std::size_t arity) {
    const std::uint64_t h = hash_key(key);
    if (auto it = entries_.find(h); it != entries_.end()) {
      if (it->second.arity != arity)
        throw Error("registry entry " + it->second.symbol + " has arity " + std::to_string(it->second.arity) +
                    ", requested " + std::to_string(arity));
      return it->second;
    }
    Entry e{fresh_name(std::string(kSkolemPrefix) + base, reserved_), arity};
    reserved_.insert(e.symbol);
    entries_.emplace(h, e);
    return e;
  }

  void reserve(const std::string& symbol) { reserved_.insert(symbol); }

  void reserve_signature(const Formula& f) {
    for (const auto& [sym, arity] : signature_of(f).functions) reserved_.insert(sym);
  }

  bool is_reserved(const std::string& symbol) const { return reserved_.contains(symbol); }
  std::size_t size() const noexcept { return entries_.size(); }

  // One "hash -> symbol/arity" line per entry, sorted by hash.
  std::string dump() const {
    std::ostringstream out;
    for (const auto& [h, e] : entries_) {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
      out << buf << " -> " << e.symbol << '/' << e.arity << '\n';
    }
    return out.str();
  }

  static SkolemRegistry load(const std::string& text) {
    SkolemRegistry reg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string hex, arrow, rest;
      ls >> hex >> arrow >> rest;
      const auto slash = rest.rfind('/');
      if (hex.size() != 16 || arrow != "->" || slash == std::string::npos)
        throw SyntaxError("malformed registry line", lineno, 1);
      Entry e{rest.substr(0, slash), std::stoul(rest.substr(slash + 1))};
      reg.reserved_.insert(e.symbol);
      reg.entries_.emplace(std::stoull(hex, nullptr, 16), e);
    }
    return reg;
  }

 private:
  std::map<std::uint64_t, Entry> entries_;
  std::set<std::string> reserved_;
};

namespace detail {

inline void require_rectified(const Formula& a) {
  if (!is_rectified(a)) throw NotRectifiedError("formula is not rectified: " + to_string(a));
}

// Visits every delta-quantifier top-down with its enclosing gamma-variables
// (outer to inner).
inline void for_each_delta(const Formula& f, Polarity pol, std::vector<Term>& gammas, const auto& fn) {
  if (f.is_quant()) {
    const bool gamma = quant_class(f.quantifier(), pol) == QuantClass::Gamma;
    if (gamma) gammas.push_back(f.bound());
    else fn(f, gammas);
    for_each_delta(f.body(), pol, gammas, fn);
    if (gamma) gammas.pop_back();
    return;
  }
  const Polarity child_pol = f.is_not() ? flip(pol) : pol;
  for (std::size_t i = 0; i < f.num_children(); ++i) for_each_delta(f.child(i), child_pol, gammas, fn);
}

}  // namespace detail

// Outer Skolem term of every delta-variable: sk_y(x1,...,xm) over all
// enclosing gamma-variables, outer to inner.  Keyed by variable id.
inline std::map<std::string, Term> outer_skolem_terms(const Formula& a) {
  detail::require_rectified(a);
  std::set<std::string> taken;
  for (const auto& [sym, arity] : signature_of(a).functions) taken.insert(sym);
  std::map<std::string, Term> out;
  std::vector<Term> gammas;
  detail::for_each_delta(a, Polarity::Positive, gammas, [&](const Formula& q, const std::vector<Term>& gs) {
    const std::string sym = fresh_name(std::string(kSkolemPrefix) + skolem_base(q.bound()), taken);
    taken.insert(sym);
    out.emplace(q.bound().id(), Term::app(sym, gs, true));
  });
  return out;
}

namespace detail {

// Drops delta-quantifiers (or renames their variables, when keep_binders),
// substituting per the given map.
inline Formula strip_deltas(const Formula& f, Polarity pol, const std::map<std::string, Term>& terms,
                            bool keep_binders) {
  if (f.is_quant()) {
    Formula body = strip_deltas(f.body(), pol, terms, keep_binders);
    if (quant_class(f.quantifier(), pol) == QuantClass::Gamma) return Formula::quant(f.quantifier(), f.bound(), body);
    const Term& sk = terms.at(f.bound().id());
    if (keep_binders) {
      const Term name = Term::named(sk);
      return Formula::quant(f.quantifier(), name, substitute(body, Substitution{{f.bound().id(), name}}));
    }
    return substitute(body, Substitution{{f.bound().id(), sk}});
  }
  const Polarity child_pol = f.is_not() ? flip(pol) : pol;
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.num_children(); ++i)
    children.push_back(strip_deltas(f.child(i), child_pol, terms, keep_binders));
  return f.is_atom() ? f : f.with_children(std::move(children));
}

}  // namespace detail

inline Formula outer_skolemize(const Formula& a) {
  return detail::strip_deltas(a, Polarity::Positive, outer_skolem_terms(a), false);
}

// Herbrand's naming trick: every bound delta-variable is renamed to the
// variable whose name is its outer Skolem term.
inline Formula skolem_name_view(const Formula& a) {
  return detail::strip_deltas(a, Polarity::Positive, outer_skolem_terms(a), true);
}

// Free gamma-variables of a delta-scope, in first-occurrence order: the
// GammaVars, plus the bound variables listed in enclosing.
inline std::vector<Term> deltapp_arguments(const Formula& scope, const std::set<std::string>& enclosing = {}) {
  std::vector<Term> out;
  for (const Term& v : free_vars_ordered(scope))
    if (v.is_gamma() || enclosing.contains(v.id())) out.push_back(v);
  return out;
}

// Delta++ Skolemization: delta-quantifiers are removed outermost first; each
// variable becomes the registry symbol of its scope applied to the
// gamma-variables that actually occur in it.
inline Formula deltapp_skolemize(const Formula& a, SkolemRegistry& reg) {
  detail::require_rectified(a);
  reg.reserve_signature(a);
  auto walk = [&](auto&& self, const Formula& f, Polarity pol, std::set<std::string>& gammas) -> Formula {
    if (f.is_quant()) {
      if (quant_class(f.quantifier(), pol) == QuantClass::Gamma) {
        gammas.insert(f.bound().id());
        Formula body = self(self, f.body(), pol, gammas);
        gammas.erase(f.bound().id());
        return Formula::quant(f.quantifier(), f.bound(), body);
      }
      const std::vector<Term> args = deltapp_arguments(f, gammas);
      const auto entry = reg.lookup_or_register(canonical_key(f, args), skolem_base(f.bound()), args.size());
      const Term sk = Term::app(entry.symbol, args, true);
      return self(self, substitute(f.body(), Substitution{{f.bound().id(), sk}}), pol, gammas);
    }
    if (f.is_atom()) return f;
    const Polarity child_pol = f.is_not() ? flip(pol) : pol;
    std::vector<Formula> children;
    for (std::size_t i = 0; i < f.num_children(); ++i) children.push_back(self(self, f.child(i), child_pol, gammas));
    return f.with_children(std::move(children));
  };
  std::set<std::string> gammas;
  return walk(walk, a, Polarity::Positive, gammas);
}

inline Formula deltapp_skolemize(const Formula& a) {
  SkolemRegistry reg;
  return deltapp_skolemize(a, reg);
}

}  // namespace herbrand
