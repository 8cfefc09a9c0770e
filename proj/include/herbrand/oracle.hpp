#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/formula.hpp"

namespace herbrand {

inline constexpr std::size_t kModelBudget = 1'000'000;

// A finite interpretation over {0, ..., size-1}.  Tables are indexed by the
// argument tuple read as a base-size number, first argument most significant.
struct Model {
  std::size_t size = 1;
  std::map<std::string, std::vector<int>> functions;
  std::map<std::string, std::vector<bool>> predicates;
  std::map<std::string, int> env;

  std::string describe() const {
    std::ostringstream out;
    out << "domain size " << size << '\n';
    for (const auto& [f, t] : functions) {
      out << "  " << f << ':';
      for (int v : t) out << ' ' << v;
      out << '\n';
    }
    for (const auto& [p, t] : predicates) {
      out << "  " << p << ':';
      for (bool v : t) out << ' ' << (v ? 1 : 0);
      out << '\n';
    }
    for (const auto& [x, v] : env) out << "  " << x << " = " << v << '\n';
    return out.str();
  }
};

namespace detail {

// Formula with symbols and variables resolved to indices.
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f) {
    const Signature sig = signature_of(f);
    for (const auto& [name, arity] : sig.functions) {
      fn_index_[name] = static_cast<int>(fn_names_.size());
      fn_names_.push_back(name);
      fn_arity_.push_back(arity);
    }
    for (const auto& [name, arity] : sig.predicates) {
      pred_index_[name] = static_cast<int>(pred_names_.size());
      pred_names_.push_back(name);
      pred_arity_.push_back(arity);
    }
    std::map<std::string, int> scope;
    for (const std::string& v : free_vars(f)) {
      scope[v] = slots_++;
      free_names_.push_back(v);
    }
    root_ = compile(f, scope);
  }

  std::size_t num_functions() const { return fn_names_.size(); }
  std::size_t num_predicates() const { return pred_names_.size(); }
  std::size_t num_free() const { return free_names_.size(); }
  std::size_t fn_arity(std::size_t i) const { return fn_arity_[i]; }
  std::size_t pred_arity(std::size_t i) const { return pred_arity_[i]; }

  // Tables of the current model: per function and predicate a flat table,
  // then the free-variable values.
  struct Tables {
    std::size_t size;
    std::vector<std::vector<int>> fn;
    std::vector<std::vector<int>> pred;
    std::vector<int> env;
  };

  bool eval(const Tables& t) const {
    std::vector<int> env(static_cast<std::size_t>(slots_), 0);
    for (std::size_t i = 0; i < t.env.size(); ++i) env[i] = t.env[i];
    return eval(root_, t, env);
  }

  Model to_model(const Tables& t) const {
    Model m;
    m.size = t.size;
    for (std::size_t i = 0; i < fn_names_.size(); ++i) m.functions[fn_names_[i]] = t.fn[i];
    for (std::size_t i = 0; i < pred_names_.size(); ++i)
      m.predicates[pred_names_[i]] = std::vector<bool>(t.pred[i].begin(), t.pred[i].end());
    for (std::size_t i = 0; i < free_names_.size(); ++i) m.env[free_names_[i]] = t.env[i];
    return m;
  }

 private:
  struct CTerm {
    int fn = -1;
    int slot = -1;
    std::vector<CTerm> args;
  };
  struct CFormula {
    Formula::Kind kind = Formula::Kind::Atom;
    int pred = -1;
    int slot = -1;
    std::vector<CTerm> args;
    std::vector<CFormula> kids;
  };

  CTerm compile(const Term& t, const std::map<std::string, int>& scope) {
    CTerm c;
    if (t.is_variable()) {
      c.slot = scope.at(t.id());
      return c;
    }
    c.fn = fn_index_.at(t.name());
    for (const Term& a : t.args()) c.args.push_back(compile(a, scope));
    return c;
  }

  CFormula compile(const Formula& f, std::map<std::string, int>& scope) {
    CFormula c;
    c.kind = f.kind();
    if (f.is_atom()) {
      c.pred = pred_index_.at(f.pred());
      for (const Term& a : f.args()) c.args.push_back(compile(a, scope));
      return c;
    }
    if (f.is_quant()) {
      const std::string id = f.bound().id();
      auto saved = scope.find(id) == scope.end() ? std::optional<int>() : std::optional<int>(scope[id]);
      c.slot = slots_++;
      scope[id] = c.slot;
      c.kids.push_back(compile(f.body(), scope));
      if (saved) scope[id] = *saved;
      else scope.erase(id);
      return c;
    }
    for (std::size_t i = 0; i < f.num_children(); ++i) c.kids.push_back(compile(f.child(i), scope));
    return c;
  }

  static int eval(const CTerm& c, const Tables& t, const std::vector<int>& env) {
    if (c.slot >= 0) return env[static_cast<std::size_t>(c.slot)];
    std::size_t idx = 0;
    for (const CTerm& a : c.args) idx = idx * t.size + static_cast<std::size_t>(eval(a, t, env));
    return t.fn[static_cast<std::size_t>(c.fn)][idx];
  }

  static bool eval(const CFormula& c, const Tables& t, std::vector<int>& env) {
    switch (c.kind) {
      case Formula::Kind::Atom: {
        std::size_t idx = 0;
        for (const CTerm& a : c.args) idx = idx * t.size + static_cast<std::size_t>(eval(a, t, env));
        return t.pred[static_cast<std::size_t>(c.pred)][idx] != 0;
      }
      case Formula::Kind::Not:
        return !eval(c.kids[0], t, env);
      case Formula::Kind::And:
        return eval(c.kids[0], t, env) && eval(c.kids[1], t, env);
      case Formula::Kind::Or:
        return eval(c.kids[0], t, env) || eval(c.kids[1], t, env);
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const bool all = c.kind == Formula::Kind::Forall;
        const auto slot = static_cast<std::size_t>(c.slot);
        for (std::size_t v = 0; v < t.size; ++v) {
          env[slot] = static_cast<int>(v);
          if (eval(c.kids[0], t, env) != all) return !all;
        }
        return all;
      }
    }
    return false;
  }

  std::map<std::string, int> fn_index_, pred_index_;
  std::vector<std::string> fn_names_, pred_names_, free_names_;
  std::vector<std::size_t> fn_arity_, pred_arity_;
  int slots_ = 0;
  CFormula root_;
};

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace detail

// Searches all models of domain size 1..max_size (every interpretation of
// every free symbol and free variable) for one falsifying f.  Throws when a
// size would need more than budget candidate models.
inline std::optional<Model> find_countermodel(const Formula& f, std::size_t max_size,
                                              std::size_t budget = kModelBudget) {
  const detail::CompiledFormula cf(f);
  for (std::size_t s = 1; s <= max_size; ++s) {
    // One digit per table cell: radix s for functions and variables, 2 for predicates.
    std::vector<std::size_t> radix;
    double combos = 1;
    for (std::size_t i = 0; i < cf.num_functions(); ++i) {
      const std::size_t cells = detail::ipow(s, cf.fn_arity(i));
      for (std::size_t k = 0; k < cells; ++k) radix.push_back(s);
      for (std::size_t k = 0; k < cells; ++k) combos *= static_cast<double>(s);
    }
    for (std::size_t i = 0; i < cf.num_predicates(); ++i) {
      const std::size_t cells = detail::ipow(s, cf.pred_arity(i));
      for (std::size_t k = 0; k < cells; ++k) radix.push_back(2);
      for (std::size_t k = 0; k < cells; ++k) combos *= 2;
    }
    for (std::size_t i = 0; i < cf.num_free(); ++i) {
      radix.push_back(s);
      combos *= static_cast<double>(s);
    }
    if (combos > static_cast<double>(budget))
      throw SizeGuardExceeded("model enumeration at domain size " + std::to_string(s) + " exceeds the budget");

    std::vector<std::size_t> digit(radix.size(), 0);
    detail::CompiledFormula::Tables t;
    t.size = s;
    t.fn.resize(cf.num_functions());
    t.pred.resize(cf.num_predicates());
    t.env.resize(cf.num_free());
    for (;;) {
      std::size_t d = 0;
      for (std::size_t i = 0; i < cf.num_functions(); ++i) {
        auto& tab = t.fn[i];
        tab.assign(detail::ipow(s, cf.fn_arity(i)), 0);
        for (auto& cell : tab) cell = static_cast<int>(digit[d++]);
      }
      for (std::size_t i = 0; i < cf.num_predicates(); ++i) {
        auto& tab = t.pred[i];
        tab.assign(detail::ipow(s, cf.pred_arity(i)), 0);
        for (auto& cell : tab) cell = static_cast<int>(digit[d++]);
      }
      for (std::size_t i = 0; i < cf.num_free(); ++i) t.env[i] = static_cast<int>(digit[d++]);
      if (!cf.eval(t)) return cf.to_model(t);

      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == radix[i]) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  return std::nullopt;
}

// True iff f holds in every model of every domain size 1..max_size.
inline bool valid_up_to(const Formula& f, std::size_t max_size, std::size_t budget = kModelBudget) {
  return !find_countermodel(f, max_size, budget).has_value();
}

}  // namespace herbrand
