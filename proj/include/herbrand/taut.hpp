#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/formula.hpp"

namespace herbrand {

// Propositional reading of a quantifier-free formula: atoms with identical
// prints (named variables erased to their encodings) share one index.
class PropAbstraction {
 public:
  explicit PropAbstraction(const Formula& f) : root_(f) {
    if (!is_quantifier_free(f)) throw Error("tautology check needs a quantifier-free formula");
    index(f);
  }

  const Formula& formula() const noexcept { return root_; }
  std::size_t num_atoms() const noexcept { return atoms_.size(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  int atom_index(const Formula& atom) const { return by_node_.at(atom.identity()); }

  static std::string atom_key(const Formula& atom) { return to_string(erase_names(atom)); }

 private:
  void index(const Formula& f) {
    if (f.is_atom()) {
      if (by_node_.contains(f.identity())) return;
      const std::string key = atom_key(f);
      auto [it, inserted] = by_key_.emplace(key, static_cast<int>(atoms_.size()));
      if (inserted) atoms_.push_back(key);
      by_node_.emplace(f.identity(), it->second);
      return;
    }
    for (std::size_t i = 0; i < f.num_children(); ++i) index(f.child(i));
  }

  Formula root_;
  std::vector<std::string> atoms_;
  std::map<std::string, int> by_key_;
  std::unordered_map<const void*, int> by_node_;
};

namespace detail {

// Flattened postfix program for repeated evaluation.
struct TruthProgram {
  enum Op : std::uint8_t { Atom, Not, And, Or };
  std::vector<std::pair<Op, int>> code;

  explicit TruthProgram(const PropAbstraction& abs) { emit(abs, abs.formula()); }

  void emit(const PropAbstraction& abs, const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: code.emplace_back(Atom, abs.atom_index(f)); return;
      case Formula::Kind::Not: emit(abs, f.body()); code.emplace_back(Not, 0); return;
      case Formula::Kind::And: emit(abs, f.lhs()); emit(abs, f.rhs()); code.emplace_back(And, 0); return;
      case Formula::Kind::Or: emit(abs, f.lhs()); emit(abs, f.rhs()); code.emplace_back(Or, 0); return;
      default: throw Error("quantifier in propositional formula");
    }
  }

  // Evaluates 64 assignments at once; atom i < 6 varies within the word,
  // higher atoms are fixed by the block number.
  std::uint64_t eval(std::uint64_t block, std::vector<std::uint64_t>& stack) const {
    static constexpr std::uint64_t kPattern[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL,
                                                  0xF0F0F0F0F0F0F0F0ULL, 0xFF00FF00FF00FF00ULL,
                                                  0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
    stack.clear();
    for (const auto& [op, arg] : code) {
      switch (op) {
        case Atom:
          stack.push_back(arg < 6 ? kPattern[arg] : (((block >> (arg - 6)) & 1U) ? ~0ULL : 0ULL));
          break;
        case Not: stack.back() = ~stack.back(); break;
        case And: {
          const std::uint64_t b = stack.back();
          stack.pop_back();
          stack.back() &= b;
          break;
        }
        case Or: {
          const std::uint64_t b = stack.back();
          stack.pop_back();
          stack.back() |= b;
          break;
        }
      }
    }
    return stack.back();
  }
};

}  // namespace detail

inline constexpr std::size_t kTruthTableAtomLimit = 20;

inline bool truth_table_tautology(const PropAbstraction& abs) {
  const std::size_t k = abs.num_atoms();
  if (k > 30) throw Error("truth table over " + std::to_string(k) + " atoms is too large");
  const detail::TruthProgram prog(abs);
  const std::uint64_t valid = k >= 6 ? ~0ULL : ((1ULL << (1ULL << k)) - 1);
  const std::uint64_t blocks = k > 6 ? (1ULL << (k - 6)) : 1;
  std::vector<std::uint64_t> stack;
  for (std::uint64_t b = 0; b < blocks; ++b)
    if ((prog.eval(b, stack) & valid) != valid) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Clausal form and refutation search

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals
};

// Structure-preserving translation of the negation of the formula: the
// clause set is satisfiable iff the formula is not a tautology.  Atom i is
// variable i + 1.
inline Cnf tseitin_negation(const PropAbstraction& abs) {
  Cnf cnf;
  cnf.num_vars = static_cast<int>(abs.num_atoms());
  std::unordered_map<const void*, int> memo;
  auto lit = [&](auto&& self, const Formula& f) -> int {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        return abs.atom_index(f) + 1;
      case Formula::Kind::Not:
        return -self(self, f.body());
      default: {
        if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
        const int a = self(self, f.lhs());
        const int b = self(self, f.rhs());
        const int v = ++cnf.num_vars;
        if (f.kind() == Formula::Kind::And) {
          cnf.clauses.push_back({-v, a});
          cnf.clauses.push_back({-v, b});
          cnf.clauses.push_back({v, -a, -b});
        } else {
          cnf.clauses.push_back({v, -a});
          cnf.clauses.push_back({v, -b});
          cnf.clauses.push_back({-v, a, b});
        }
        memo.emplace(f.identity(), v);
        return v;
      }
    }
  };
  cnf.clauses.push_back({-lit(lit, abs.formula())});
  return cnf;
}

inline std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

// DPLL with unit propagation over two watched literals and chronological
// backtracking.
class DpllSolver {
 public:
  explicit DpllSolver(const Cnf& cnf) : n_(cnf.num_vars), value_(cnf.num_vars + 1, 0), watches_(2 * (n_ + 1)) {
    for (const auto& raw : cnf.clauses) {
      std::vector<int> c;
      bool trivial = false;
      for (int l : raw) {
        if (std::find(c.begin(), c.end(), -l) != c.end()) trivial = true;
        if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
      }
      if (trivial) continue;
      if (c.empty()) {
        empty_clause_ = true;
        continue;
      }
      if (c.size() == 1) {
        units_.push_back(c[0]);
        continue;
      }
      const int idx = static_cast<int>(clauses_.size());
      clauses_.push_back(std::move(c));
      watches_[code(clauses_[idx][0])].push_back(idx);
      watches_[code(clauses_[idx][1])].push_back(idx);
    }
  }

  bool solve() {
    if (empty_clause_) return false;
    for (int l : units_) {
      if (value(l) < 0) return false;
      if (value(l) == 0) assign(l);
    }
    for (;;) {
      if (!propagate()) {
        if (!backtrack()) return false;
        continue;
      }
      while (next_var_ <= n_ && value_[next_var_] != 0) ++next_var_;
      if (next_var_ > n_) return true;
      levels_.push_back({trail_.size(), -next_var_, false});
      assign(-next_var_);
    }
  }

  // Assignment found by the last successful solve (index = variable).
  bool model_value(int var) const { return value_[var] > 0; }

 private:
  struct Level {
    std::size_t trail_pos;
    int decision;
    bool flipped;
  };

  static std::size_t code(int lit) { return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0); }
  int value(int lit) const { return lit > 0 ? value_[lit] : -value_[-lit]; }

  void assign(int lit) {
    value_[std::abs(lit)] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      const int falsified = -trail_[head_++];
      auto& ws = watches_[code(falsified)];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const int ci = ws[i];
        if (conflict) {
          ws[keep++] = ci;
          continue;
        }
        auto& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (value(c[0]) > 0) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[code(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (value(c[0]) < 0) conflict = true;
        else assign(c[0]);
      }
      ws.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  bool backtrack() {
    while (!levels_.empty() && levels_.back().flipped) {
      undo(levels_.back().trail_pos);
      levels_.pop_back();
    }
    if (levels_.empty()) return false;
    Level& top = levels_.back();
    undo(top.trail_pos);
    top.flipped = true;
    assign(-top.decision);
    return true;
  }

  void undo(std::size_t pos) {
    while (trail_.size() > pos) {
      const int var = std::abs(trail_.back());
      value_[var] = 0;
      next_var_ = std::min(next_var_, var);
      trail_.pop_back();
    }
    head_ = std::min(head_, pos);
  }

  int n_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> units_;
  bool empty_clause_ = false;
  std::vector<int> value_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  int next_var_ = 1;
  std::vector<Level> levels_;
};

inline bool dpll_tautology(const PropAbstraction& abs) {
  DpllSolver solver(tseitin_negation(abs));
  return !solver.solve();
}

inline bool is_tautology(const Formula& f) {
  const PropAbstraction abs(f);
  return abs.num_atoms() <= kTruthTableAtomLimit ? truth_table_tautology(abs) : dpll_tautology(abs);
}

}  // namespace herbrand
