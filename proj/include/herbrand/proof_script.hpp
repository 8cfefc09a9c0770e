#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "herbrand/error.hpp"
#include "herbrand/kernel.hpp"
#include "herbrand/parser.hpp"

namespace herbrand {

// Line-based proof scripts:
//
//   mode: heijenoort
//   start: <formula>
//   step: gamma-quant path=0.1 q=exists var=x scope={...} term={t}
//   ...
//   end: <formula>
//
// Values are either brace-delimited or runs of non-space characters.  An
// empty path addresses the root.  Blank lines and lines starting with # are
// ignored.

namespace detail {

inline std::map<std::string, std::string> parse_step_fields(std::string_view text, std::size_t lineno) {
  std::map<std::string, std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    const std::size_t eq = text.find('=', i);
    if (eq == std::string_view::npos) throw SyntaxError("expected key=value", lineno, i + 1);
    const std::string key(text.substr(i, eq - i));
    i = eq + 1;
    std::string value;
    if (i < text.size() && text[i] == '{') {
      int depth = 0;
      const std::size_t start = i + 1;
      for (; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        else if (text[i] == '}' && --depth == 0) break;
      }
      if (i >= text.size()) throw SyntaxError("unterminated '{' in value of " + key, lineno, start);
      value = std::string(text.substr(start, i - start));
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && text[i] != ' ') ++i;
      value = std::string(text.substr(start, i - start));
    }
    out[key] = value;
  }
  return out;
}

inline Rule rule_from_name(const std::string& name, std::size_t lineno) {
  for (Rule r : {Rule::GammaQuant, Rule::RestrictedGammaQuant, Rule::DeltaMinusQuant, Rule::DeltaPlusPlusQuant,
                 Rule::Simplification, Rule::GammaSimplification, Rule::Passage, Rule::Rename,
                 Rule::NonGenGammaQuant, Rule::NonGenDeltaQuant, Rule::NonGenSimplification})
    if (name == rule_name(r)) return r;
  throw SyntaxError("unknown rule '" + name + "'", lineno, 7);
}

inline Mode mode_from_name(const std::string& name, std::size_t lineno) {
  for (Mode m : {Mode::Heijenoort, Mode::HerbrandOriginal, Mode::FreeVariable})
    if (name == mode_name(m)) return m;
  throw SyntaxError("unknown mode '" + name + "'", lineno, 7);
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline RuleStep parse_step(std::string_view text, std::size_t lineno) {
  const std::string body = trim(text);
  const std::size_t sp = body.find(' ');
  RuleStep s;
  s.rule = rule_from_name(body.substr(0, sp), lineno);
  auto f = parse_step_fields(sp == std::string::npos ? std::string_view() : std::string_view(body).substr(sp), lineno);
  auto need = [&](const char* key) -> const std::string& {
    auto it = f.find(key);
    if (it == f.end()) throw SyntaxError(std::string("missing ") + key + "= for " + rule_name(s.rule), lineno, 1);
    return it->second;
  };
  try {
    s.path = parse_path(need("path"));
  } catch (const PathError& e) {
    throw SyntaxError(e.what(), lineno, 1);
  }
  switch (s.rule) {
    case Rule::GammaQuant:
    case Rule::RestrictedGammaQuant:
    case Rule::NonGenGammaQuant:
    case Rule::DeltaPlusPlusQuant:
    case Rule::DeltaMinusQuant:
    case Rule::NonGenDeltaQuant: {
      const std::string& q = need("q");
      if (q != "forall" && q != "exists") throw SyntaxError("q must be forall or exists", lineno, 1);
      s.q = q == "forall" ? Quantifier::Forall : Quantifier::Exists;
      s.var = parse_term(need("var"));
      if (s.rule != Rule::DeltaMinusQuant && s.rule != Rule::NonGenDeltaQuant) s.scope = parse_formula(need("scope"));
      if (s.rule != Rule::DeltaPlusPlusQuant && s.rule != Rule::DeltaMinusQuant && s.rule != Rule::NonGenDeltaQuant)
        s.term = parse_term(need("term"));
      break;
    }
    case Rule::Simplification:
    case Rule::GammaSimplification:
    case Rule::NonGenSimplification: {
      const std::string& k = need("keep");
      if (k != "left" && k != "right") throw SyntaxError("keep must be left or right", lineno, 1);
      s.keep = k == "left" ? Side::Left : Side::Right;
      break;
    }
    case Rule::Passage: {
      s.eq = std::stoi(need("eq"));
      const std::string& d = need("dir");
      if (d != "prenex" && d != "antiprenex") throw SyntaxError("dir must be prenex or antiprenex", lineno, 1);
      s.dir = d == "prenex" ? PassageDir::Prenex : PassageDir::Antiprenex;
      break;
    }
    case Rule::Rename:
      s.var = parse_term(need("old"));
      s.renamed = parse_term(need("new"));
      break;
  }
  return s;
}

}  // namespace detail

inline Derivation parse_proof_script(std::string_view text) {
  Derivation d;
  bool have_mode = false, have_start = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t colon = t.find(':');
    if (colon == std::string::npos) throw SyntaxError("expected 'key: value'", lineno, 1);
    const std::string key = t.substr(0, colon);
    const std::string value = detail::trim(std::string_view(t).substr(colon + 1));
    try {
      if (key == "mode") {
        d.mode = detail::mode_from_name(value, lineno);
        have_mode = true;
      } else if (key == "start") {
        d.axiom = parse_formula(value);
        have_start = true;
      } else if (key == "step") {
        d.steps.push_back(detail::parse_step(value, lineno));
      } else if (key == "end") {
        d.end = parse_formula(value);
      } else {
        throw SyntaxError("unknown line kind '" + key + "'", lineno, 1);
      }
    } catch (const SyntaxError& e) {
      if (e.line() == lineno) throw;
      throw SyntaxError(std::string(e.what()) + " (script line " + std::to_string(lineno) + ")", lineno, 1);
    }
  }
  if (!have_mode || !have_start) throw SyntaxError("script needs mode: and start: lines", lineno, 1);
  return d;
}

inline std::string to_string(const RuleStep& s) {
  std::string out = rule_name(s.rule);
  out += " path=" + to_string(s.path);
  switch (s.rule) {
    case Rule::Simplification:
    case Rule::GammaSimplification:
    case Rule::NonGenSimplification:
      out += s.keep == Side::Left ? " keep=left" : " keep=right";
      break;
    case Rule::Passage:
      out += " eq=" + std::to_string(s.eq) + (s.dir == PassageDir::Prenex ? " dir=prenex" : " dir=antiprenex");
      break;
    case Rule::Rename:
      out += " old=" + to_string(*s.var) + " new=" + to_string(*s.renamed);
      break;
    default:
      out += std::string(" q=") + to_string(s.q) + " var=" + to_string(*s.var);
      if (s.scope) out += " scope={" + to_string(*s.scope) + "}";
      if (s.term) out += " term={" + to_string(*s.term) + "}";
  }
  return out;
}

inline std::string to_proof_script(const Derivation& d) {
  std::string out = std::string("mode: ") + mode_name(d.mode) + "\n";
  out += "start: " + to_string(d.axiom) + "\n";
  for (const RuleStep& s : d.steps) out += "step: " + to_string(s) + "\n";
  if (d.end) out += "end: " + to_string(*d.end) + "\n";
  return out;
}

}  // namespace herbrand
