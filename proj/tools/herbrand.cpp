// herbrand: command-line front end to the library.
//
// Exit codes: 0 success or the property holds, 1 checked and false,
// 2 error or inconclusive.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "herbrand/herbrand.hpp"

using namespace herbrand;
using nlohmann::json;

namespace {

struct Options {
  std::string formula;
  std::string file;
  bool json = false;
  bool herbrand_heights = false;
  std::size_t budget = kDefaultNodeBudget;

  std::string skolem_mode = "outer";
  std::size_t order = 2;
  std::size_t max_order = 4;
  bool star = false;
  bool fv = false;
  bool dimacs = false;
  std::string selection;
  std::string terms_file;
  std::string path;
  int eq = 1;
  std::string dir = "prenex";
  std::size_t size = 2;
  std::string demo;
  unsigned n = 1, r = 1;
  std::string big_n = "1";

  HeightMode mode() const { return herbrand_heights ? HeightMode::Herbrand : HeightMode::Standard; }
  PropertyCOptions pc() const { return {mode(), budget}; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Inline text, or the contents of a file when the argument names one.
std::string text_or_file(const std::string& arg) {
  std::ifstream in(arg);
  if (!in) return arg;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Formula input_formula(const Options& o) {
  if (!o.file.empty()) return parse_formula(slurp(o.file));
  if (o.formula.empty()) throw Error("no formula given (pass it inline or with --file)");
  return parse_formula(o.formula);
}

std::optional<Selection> input_selection(const Options& o) {
  if (o.selection.empty()) return std::nullopt;
  return parse_selection(text_or_file(o.selection));
}

json terms_json(const std::vector<Term>& ts) {
  json a = json::array();
  for (const Term& t : ts) a.push_back(to_string(t));
  return a;
}

json report_json(const DerivationReport& r) {
  json j = {{"accepted", r.accepted}, {"steps_checked", r.steps_checked}};
  if (r.failed_step) j["failed_step"] = *r.failed_step;
  if (!r.condition.empty()) j["condition"] = r.condition;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.axiom_tautology) j["axiom_tautology"] = *r.axiom_tautology;
  j["witnesses"] = terms_json(r.witnesses);
  return j;
}

std::string report_text(const DerivationReport& r) {
  if (r.accepted) return "accepted (" + std::to_string(r.steps_checked) + " steps)";
  std::string s = "rejected";
  if (r.failed_step) s += " at step " + std::to_string(*r.failed_step + 1);
  s += ": " + r.condition;
  if (!r.detail.empty()) s += " (" + r.detail + ")";
  return s;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Fails: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  int emit(int code) {
    if (o_.json) {
      std::cout << out_.dump(2) << '\n';
    } else {
      std::cout << text_.str();
    }
    return code;
  }

  int run(const std::string& cmd) {
    out_["command"] = cmd;
    if (cmd == "parse") return parse();
    if (cmd == "rectify") return rectify();
    if (cmd == "classify") return classify();
    if (cmd == "skolemize") return skolemize();
    if (cmd == "champ") return champ_cmd();
    if (cmd == "expand") return expand_cmd();
    if (cmd == "subexpand") return subexpand();
    if (cmd == "taut") return taut();
    if (cmd == "check-c") return check_c();
    if (cmd == "min-order") return min_order_cmd();
    if (cmd == "derive") return derive();
    if (cmd == "check-proof") return check_proof();
    if (cmd == "passage") return passage();
    if (cmd == "models") return models();
    if (cmd == "demo") return demo();
    if (cmd == "bound-gd") return bound_gd();
    throw Error("unknown subcommand " + cmd);
  }

 private:
  int parse() {
    const Formula f = input_formula(o_);
    out_["formula"] = to_string(f);
    out_["rectified"] = is_rectified(f);
    out_["free_vars"] = free_vars(f);
    text_ << f << '\n';
    return emit(0);
  }

  int rectify() {
    const Formula f = rectify_formula();
    out_["formula"] = to_string(f);
    text_ << f << '\n';
    return emit(0);
  }

  Formula rectify_formula() { return herbrand::rectify(input_formula(o_)); }

  int classify() {
    const Formula f = rectify_formula();
    out_["formula"] = to_string(f);
    json qs = json::array();
    text_ << f << '\n';
    for (const Path& p : quantifier_paths(f)) {
      const QuantInfo info = classify_quantifier(f, p);
      const Formula q = at(f, p);
      const char* cls = info.cls == QuantClass::Gamma ? "gamma" : "delta";
      qs.push_back({{"path", to_string(p)},
                    {"quantifier", to_string(q.quantifier())},
                    {"var", to_string(q.bound())},
                    {"class", cls},
                    {"accessible", info.accessible}});
      text_ << (p.indices.empty() ? "root" : to_string(p)) << '\t' << to_string(q.quantifier()) << ' ' << q.bound()
            << '\t' << cls << (info.accessible ? "\taccessible" : "") << '\n';
    }
    out_["quantifiers"] = qs;
    return emit(0);
  }

  int skolemize() {
    const Formula f = input_formula(o_);
    Formula g = f;
    if (o_.skolem_mode == "outer") {
      g = outer_skolemize(f);
    } else if (o_.skolem_mode == "deltapp") {
      SkolemRegistry reg;
      g = deltapp_skolemize(f, reg);
      out_["registry"] = reg.dump();
    } else {
      throw Error("--mode must be outer or deltapp");
    }
    out_["formula"] = to_string(g);
    text_ << g << '\n';
    return emit(0);
  }

  int champ_cmd() {
    const ChampFini c = champ(outer_skolemize(input_formula(o_)), o_.order, o_.mode(), o_.budget);
    out_["order"] = o_.order;
    out_["size"] = c.size();
    out_["has_dot"] = c.has_dot;
    out_["terms"] = terms_json(c.terms);
    text_ << c.size() << " terms\n";
    for (const Term& t : c.terms) text_ << "  " << t << '\n';
    return emit(0);
  }

  int expand_cmd() {
    const Formula f = outer_skolemize(input_formula(o_));
    Formula e = f;
    if (!o_.terms_file.empty()) {
      std::vector<Term> ts;
      std::istringstream in(slurp(o_.terms_file));
      std::string line;
      while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        ts.push_back(parse_term(line));
      }
      e = expand(f, ts, o_.budget);
    } else {
      e = expand(f, champ(f, o_.order, o_.mode(), o_.budget), o_.budget);
    }
    out_["expansion"] = to_string(e);
    text_ << e << '\n';
    return emit(0);
  }

  int subexpand() {
    const auto sel = input_selection(o_);
    if (!sel) throw Error("subexpand needs --selection");
    const Formula f = o_.star ? deltapp_skolemize(input_formula(o_)) : outer_skolemize(input_formula(o_));
    const Formula e = build_sub_expansion(f, *sel);
    const bool t = is_tautology(e);
    out_["sub_expansion"] = to_string(e);
    out_["tautology"] = t;
    text_ << e << '\n' << (t ? "sentential tautology\n" : "not a sentential tautology\n");
    return emit(0);
  }

  int taut() {
    const Formula f = input_formula(o_);
    if (o_.dimacs) {
      const std::string d = to_dimacs(tseitin_negation(PropAbstraction(f)));
      out_["dimacs"] = d;
      text_ << d;
      return emit(0);
    }
    const bool t = is_tautology(f);
    out_["tautology"] = t;
    text_ << (t ? "tautology\n" : "not a tautology\n");
    return emit(t ? 0 : 1);
  }

  int check_c() {
    const PropertyCResult r = property_c(input_formula(o_), o_.order, o_.star, input_selection(o_), o_.pc());
    out_["property"] = o_.star ? "C*" : "C";
    out_["order"] = r.order;
    out_["verdict"] = to_string(r.verdict);
    out_["witness"] = to_string(r.witness);
    out_["champ_size"] = r.champ_size;
    if (!r.note.empty()) out_["note"] = r.note;
    text_ << "Property " << (o_.star ? "C*" : "C") << " of order " << r.order << ": " << to_string(r.verdict);
    if (r.witness != WitnessKind::None) text_ << " (" << to_string(r.witness) << ")";
    text_ << '\n';
    if (!r.note.empty()) text_ << r.note << '\n';
    return emit(exit_for(r.verdict));
  }

  int min_order_cmd() {
    const Formula f = input_formula(o_);
    const auto c = min_order(f, false, o_.max_order, o_.pc());
    const auto cs = min_order(f, true, o_.max_order, o_.pc());
    out_["max"] = o_.max_order;
    out_["C"] = c ? json(*c) : json(nullptr);
    out_["C*"] = cs ? json(*cs) : json(nullptr);
    auto show = [&](const char* name, const std::optional<std::size_t>& v) {
      text_ << "least order of Property " << name << ": ";
      if (v) text_ << *v << '\n';
      else text_ << "none up to " << o_.max_order << '\n';
    };
    show("C", c);
    show("C*", cs);
    return emit(c || cs ? 0 : 1);
  }

  int derive() {
    const Formula a = input_formula(o_);
    if (o_.fv) {
      SkolemRegistry reg;
      const FvConstruction c = construct_fv_derivation(a, o_.order, input_selection(o_), reg, o_.pc());
      SkolemRegistry check_reg;
      const DerivationReport r = check_derivation(c.derivation, check_reg);
      json sigma = json::object();
      for (const auto& [v, t] : c.sigma) sigma[v] = to_string(t);
      out_["b"] = to_string(c.b);
      out_["sigma"] = sigma;
      out_["script"] = to_proof_script(c.derivation);
      out_["check"] = report_json(r);
      text_ << to_proof_script(c.derivation) << "# B: " << c.b << '\n';
      for (const auto& [v, t] : c.sigma) text_ << "# " << v << " := " << t << '\n';
      text_ << "# " << report_text(r) << '\n';
      return emit(r.accepted ? 0 : 1);
    }
    const Construction c = construct_derivation(a, o_.order, input_selection(o_), o_.pc());
    const DerivationReport r = check_derivation(c.derivation);
    out_["script"] = to_proof_script(c.derivation);
    out_["gamma_simplifications"] = c.gamma_simplifications;
    out_["check"] = report_json(r);
    text_ << to_proof_script(c.derivation) << "# " << report_text(r) << '\n';
    return emit(r.accepted ? 0 : 1);
  }

  int check_proof() {
    const std::string src = !o_.file.empty() ? o_.file : o_.formula;
    if (src.empty()) throw Error("check-proof needs a script file");
    const Derivation d = parse_proof_script(slurp(src));
    const DerivationReport r = check_derivation(d);
    out_["check"] = report_json(r);
    text_ << report_text(r) << '\n';
    if (r.accepted && d.mode == Mode::Heijenoort) {
      const OrderBound b = derivation_order_bound(d, o_.mode());
      out_["order_bound"] = b.value;
      text_ << "order bound " << b.value << '\n';
    }
    return emit(r.accepted ? 0 : 1);
  }

  int passage() {
    if (o_.dir != "prenex" && o_.dir != "antiprenex") throw Error("--dir must be prenex or antiprenex");
    const Formula f = input_formula(o_);
    const Formula g = apply_passage(f, parse_path(o_.path), o_.eq,
                                    o_.dir == "prenex" ? PassageDir::Prenex : PassageDir::Antiprenex);
    out_["formula"] = to_string(g);
    text_ << g << '\n';
    return emit(0);
  }

  int models() {
    const auto m = find_countermodel(input_formula(o_), o_.size, o_.budget);
    out_["max_size"] = o_.size;
    out_["valid"] = !m.has_value();
    if (m) {
      json fns = json::object(), preds = json::object();
      for (const auto& [f, t] : m->functions) fns[f] = t;
      for (const auto& [p, t] : m->predicates) preds[p] = t;
      out_["countermodel"] = {{"size", m->size}, {"functions", fns}, {"predicates", preds}, {"env", m->env}};
      text_ << "countermodel:\n" << m->describe();
      return emit(1);
    }
    text_ << "valid in every model of size <= " << o_.size << '\n';
    return emit(0);
  }

  int demo() {
    if (o_.demo == "false-lemma") return demo_false_lemma_cmd();
    if (o_.demo == "upperbound") return demo_upperbound();
    throw Error("demo must be false-lemma or upperbound");
  }

  int demo_false_lemma_cmd() {
    const FalseLemmaReport rep = demo_false_lemma(o_.max_order);
    json cases = json::array();
    bool refuted = false;
    for (const FalseLemmaCase& c : rep.cases) {
      auto show = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("none"); };
      cases.push_back({{"name", c.name},
                       {"before", to_string(c.before)},
                       {"after", to_string(c.after)},
                       {"passage", c.passage},
                       {"order_before", c.order_before ? json(*c.order_before) : json(nullptr)},
                       {"order_after", c.order_after ? json(*c.order_after) : json(nullptr)}});
      text_ << c.name << '\n'
            << "  " << c.before << "   least order " << show(c.order_before) << '\n'
            << "  " << c.after << "   least order " << show(c.order_after) << '\n'
            << "  related by " << c.passage << '\n';
      if (c.order_before != c.order_after) refuted = true;
    }
    out_["cases"] = cases;
    out_["passage_changes_order"] = refuted;
    text_ << (refuted ? "a rule of passage changes the order of Property C\n"
                      : "no order change observed\n");
    return emit(refuted ? 0 : 1);
  }

  int demo_upperbound() {
    const Formula a = parse_formula(
        "(forall x. forall y. exists m. (x < m & y < m)) & (forall c. forall b. forall a. (a < b & b < c -> a < c))"
        " -> forall u. forall v. forall w. exists z. (u < z & v < z & w < z)");
    const Selection sel = parse_selection(
        "(or (not (and (forall x (sk_v sk_u) (forall y (sk_w) -) (forall y (sk_m(sk_v,sk_w)) -))"
        " (forall c (sk_m(sk_u,sk_m(sk_v,sk_w))) (forall b (sk_m(sk_v,sk_w)) (forall a (sk_v sk_w) -)))))"
        " (exists z (sk_m(sk_u,sk_m(sk_v,sk_w))) -))");
    const Formula f = outer_skolemize(a);
    const ChampFini t4 = champ(f, 4, o_.mode(), o_.budget);
    const BigInt published_n = 156;
    const Formula j = build_sub_expansion(f, sel);
    const bool j_taut = is_tautology(j);
    const bool within = selection_within(sel, t4);
    const Construction c = construct_derivation(a, 4, sel, o_.pc());
    const DerivationReport r = check_derivation(c.derivation);

    text_ << "A: " << a << '\n'
          << "F: " << f << '\n'
          << "computed |T_4(F)| = " << t4.size() << '\n'
          << "with N = " << published_n << ": N^2 + N^3 + N = " << leaf_count(published_n) << '\n'
          << "with N = " << t4.size() << ": N^2 + N^3 + N = " << leaf_count(BigInt(t4.size())) << '\n'
          << "J: " << j << '\n'
          << "J is " << (j_taut ? "" : "not ") << "a sentential tautology\n"
          << "selection within T_4(F): " << (within ? "yes" : "no") << '\n'
          << "constructed derivation: " << report_text(r) << ", " << c.gamma_simplifications
          << " gamma-simplification steps\n";
    out_["champ_size"] = t4.size();
    out_["leaf_count_published_n"] = leaf_count(published_n).str();
    out_["leaf_count_computed_n"] = leaf_count(BigInt(t4.size())).str();
    out_["j"] = to_string(j);
    out_["j_tautology"] = j_taut;
    out_["selection_within"] = within;
    out_["derivation"] = report_json(r);
    out_["gamma_simplifications"] = c.gamma_simplifications;
    return emit(j_taut && within && r.accepted ? 0 : 1);
  }

  int bound_gd() {
    const BigInt b = goedel_dreben_bound(o_.n, o_.r, BigInt(o_.big_n));
    out_["n"] = o_.n;
    out_["r"] = o_.r;
    out_["N"] = o_.big_n;
    out_["bound"] = b.str();
    text_ << b << '\n';
    return emit(0);
  }

  const Options& o_;
  json out_;
  std::ostringstream text_;
};

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Herbrand's Fundamental Theorem: expansions, Property C and derivation checking"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "structured output");
  app.add_flag("--herbrand-heights", o.herbrand_heights, "variables have height 0");
  app.add_option("--budget", o.budget, "node budget for expansions and model search");

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("formula", o.formula, "formula text");
    sub->add_option("-f,--file", o.file, "read the formula from a file");
    return sub;
  };
  with_input(app.add_subcommand("parse", "parse and print a formula"));
  with_input(app.add_subcommand("rectify", "rename bound variables apart"));
  with_input(app.add_subcommand("classify", "list quantifiers with gamma/delta class"));
  with_input(app.add_subcommand("skolemize", "outer or delta++ Skolemized form"))
      ->add_option("--mode", o.skolem_mode, "outer | deltapp");
  with_input(app.add_subcommand("champ", "champ fini of the outer-Skolemized form"))
      ->add_option("--order", o.order, "order n");
  auto* ex = with_input(app.add_subcommand("expand", "expansion of the outer-Skolemized form"));
  ex->add_option("--order", o.order, "expand over T_n");
  ex->add_option("--terms-file", o.terms_file, "expand over the terms listed one per line");
  auto* se = with_input(app.add_subcommand("subexpand", "sub-expansion chosen by a selection"));
  se->add_option("--selection", o.selection, "selection s-expression or file")->required();
  se->add_flag("--star", o.star, "use the delta++ Skolemized form");
  with_input(app.add_subcommand("taut", "sentential tautology check"))
      ->add_flag("--dimacs", o.dimacs, "print the clauses of the negation instead");
  auto* cc = with_input(app.add_subcommand("check-c", "decide Property C or C*"));
  cc->add_option("--order", o.order, "order n");
  cc->add_flag("--star", o.star, "Property C*");
  cc->add_option("--selection", o.selection, "check a sub-expansion instead");
  with_input(app.add_subcommand("min-order", "least order of Property C and C*"))
      ->add_option("--max", o.max_order, "largest order tried");
  auto* dv = with_input(app.add_subcommand("derive", "build a linear derivation from Property C"));
  dv->add_option("--order", o.order, "order n");
  dv->add_option("--selection", o.selection, "selection s-expression or file");
  dv->add_flag("--fv", o.fv, "free-variable construction");
  with_input(app.add_subcommand("check-proof", "check a proof script"));
  auto* ps = with_input(app.add_subcommand("passage", "apply a rule of passage"));
  ps->add_option("--path", o.path, "position, e.g. 0.1 (empty for the root)");
  ps->add_option("--eq", o.eq, "equivalence 1-6")->check(CLI::Range(1, 6));
  ps->add_option("--dir", o.dir, "prenex | antiprenex");
  with_input(app.add_subcommand("models", "search finite countermodels"))
      ->add_option("--size", o.size, "largest domain size");
  auto* dm = app.add_subcommand("demo", "worked examples");
  dm->add_option("which", o.demo, "false-lemma | upperbound")->required();
  dm->add_option("--max", o.max_order, "largest order tried (false-lemma)");
  auto* bg = app.add_subcommand("bound-gd", "Goedel-Dreben order bound n*(N^r+1)^n");
  bg->add_option("--n", o.n)->required();
  bg->add_option("--r", o.r)->required();
  bg->add_option("--N", o.big_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  std::string kind, message;
  try {
    Runner runner(o);
    return runner.run(cmd);
  } catch (const SyntaxError& e) {
    kind = "syntax-error";
    message = e.what();
  } catch (const KernelError& e) {
    kind = e.condition();
    message = e.what();
  } catch (const SizeGuardExceeded& e) {
    kind = "inconclusive";
    message = e.what();
  } catch (const std::exception& e) {
    kind = "error";
    message = e.what();
  }
  if (o.json)
    std::cout << json{{"command", cmd}, {"error", kind}, {"message", message}}.dump(2) << '\n';
  else
    std::cerr << kind << ": " << message << '\n';
  return 2;
}
