// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "cdc/errors.hpp"
#include "cdc/euclid/eval.hpp"
#include "cdc/euclid/ops.hpp"
#include "cdc/laws.hpp"
#include "cdc/random_terms.hpp"
#include "cdc/replay.hpp"
#include "cdc/rewrite.hpp"
#include "cdc/rules.hpp"
#include "cdc/syntax.hpp"
#include "cdc/typecheck.hpp"

using namespace cdc;
using Clock = std::chrono::steady_clock;

namespace {

const Registry& reg() { return Registry::builtin(); }

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

Mor parse(const std::string& s, const std::string& dom = "") {
  ParseOptions o;
  if (!dom.empty()) o.dom = parse_obj(dom);
  return parse_mor(s, reg(), o);
}

// Suite passes when every law is Proved and every numeric instance holds.
Outcome suite_ok(const std::string& suite, std::size_t expected, std::ostringstream& d) {
  auto out = run_suite(suite, reg());
  std::size_t proved = 0, inst = 0, inst_ok = 0;
  double worst = 0;
  for (const auto& o : out) {
    if (o.symbolic == Verdict::Proved) ++proved;
    for (const auto& n : o.numeric) {
      ++inst;
      if (n.pass) ++inst_ok;
      worst = std::max(worst, n.max_error);
    }
  }
  d << proved << "/" << out.size() << " Proved, numeric " << inst_ok << "/" << inst << " (max err " << worst << ")";
  return {out.size() == expected && proved == out.size() && inst_ok == inst, ""};
}

Outcome monad() {
  auto t0 = Clock::now();
  std::ostringstream d;
  Outcome o = suite_ok("monad", 3, d);
  double s = since(t0);
  d << ", " << s << " s";
  o.pass = o.pass && s < 5.0;
  o.detail = d.str();
  return o;
}

Outcome strength() {
  std::ostringstream d;
  Outcome o = suite_ok("strength", 4, d);
  o.detail = d.str();
  return o;
}

Outcome commutativity() {
  const std::string dom = "(X x X) x (Y x Y)";
  Mor shuffle = parse("<<pi1 o pi1, pi1 o pi2>, <pi2 o pi1, pi2 o pi2>>", dom);
  Mor psi = normalize(parse("psi", dom), reg()).term;
  Mor psit = normalize(parse("psitilde", dom), reg()).term;
  bool inv_form = parse("psiinv", "(X x Y) x (X x Y)") == parse("<pi1 x pi1, pi2 x pi2>", "(X x Y) x (X x Y)");
  auto iso = parse_same_type({"psi o psiinv", "id"}, reg(), {parse_obj("(X x Y) x (X x Y)"), std::nullopt});
  Verdict v = equal_mod_theory(iso[0], iso[1], reg()).verdict;
  std::ostringstream d;
  d << "nf(psi) " << (psi == shuffle ? "=" : "!=") << " shuffle, nf(psitilde) " << (psit == shuffle ? "=" : "!=")
    << " shuffle, psi o psiinv = id " << to_string(v);
  return {psi == shuffle && psit == shuffle && inv_form && v == Verdict::Proved, d.str()};
}

Outcome distributive() {
  std::ostringstream d;
  Outcome o = suite_ok("distributive", 4, d);
  bool nat = false;
  for (const auto& law : law_table()) {
    if (law.name != "sigma-natural") continue;
    LawOutcome lo = run_law(law, reg());
    std::size_t ok = 0;
    for (const auto& n : lo.numeric) ok += n.pass && n.tol <= 1e-6;
    nat = !lo.numeric.empty() && ok == lo.numeric.size();
    d << "; sigma naturality " << ok << "/" << lo.numeric.size() << " generators at 1e-6";
  }
  o.pass = o.pass && nat;
  o.detail = d.str();
  return o;
}

Outcome corpus() {
  const std::set<std::string> required = {
      "T-functor-id", "T-functor-compose", "lemma-T-additive-functor", "lemma-T-additive-morphisms",
      "eta-natural", "mu-natural", "lem-left-unit", "lem-right-unit", "lem-assoc", "lem-strength-terminal",
      "lem-strength-assoc", "lem-strength-unit", "lem-strength-mult", "lemma-psi-is-shuffle",
      "lemma-tilde-psi-is-shuffle", "lemma-psi-pair", "remark-psi-iso", "sigma-natural",
      "sigma-triangle-left", "sigma-triangle-right", "sigma-pentagon-left", "sigma-pentagon-right",
      "prop-sigma-compat-strength", "prop-T-curry", "eq:T-ev-psi", "lemma-curry-linear", "thm-und-T-linear",
      "prop-curry-T-t", "lem-D-times", "lemma-D-interchange", "cor-D-interchange"};
  std::set<std::string> seen;
  std::size_t n = 0, ok = 0, steps = 0;
  std::string first_fail;
  for (const auto& f : corpus_files(default_corpus_dir())) {
    ++n;
    ReplayReport r = replay(load_script(f), reg());
    steps += r.steps.size();
    if (r.ok) {
      ++ok;
      seen.insert(r.name);
    } else if (first_fail.empty()) {
      first_fail = r.name + ": " + r.error;
    }
  }
  std::size_t missing = 0;
  std::string miss;
  for (const auto& name : required)
    if (!seen.count(name)) {
      ++missing;
      miss += " " + name;
    }
  std::ostringstream d;
  d << ok << "/" << n << " scripts, " << steps << " steps, " << (required.size() - missing) << "/"
    << required.size() << " required proofs";
  if (missing) d << " (missing:" << miss << ")";
  if (!first_fail.empty()) d << "; " << first_fail;
  return {n > 0 && ok == n && missing == 0, d.str()};
}

// Generators with a numeric body, and one composite per generator.
std::vector<const GenSig*> builtins() {
  std::vector<const GenSig*> v;
  for (const auto& name : reg().names())
    if (!reg().get(name).body.empty()) v.push_back(&reg().get(name));
  return v;
}

Outcome derivative_oracle() {
  std::mt19937_64 rng(20240601);
  double fd_worst = 0, chain_worst = 0;
  std::size_t gens = 0, chains = 0;
  auto all = builtins();
  for (const GenSig* g : all) {
    ++gens;
    Mor f = Mor::gen(g->name);
    for (int i = 0; i < 100; ++i) {
      euclid::Val x = euclid::random_value(g->dom, rng);
      auto jac = euclid::finite_difference(f, x, 1e-4, reg());
      std::size_t n = g->dom.flat_dim();
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        auto t = euclid::flatten(euclid::pushforward(f, {euclid::unflatten(g->dom, e), x}, reg()).tangent);
        for (std::size_t o = 0; o < t.size(); ++o) fd_worst = std::max(fd_worst, euclid::discrepancy(t[o], jac[o][j]));
      }
    }
    // Chain rule against every builtin that can follow g.
    for (const GenSig* h : all) {
      if (!(h->dom == g->cod)) continue;
      ++chains;
      Mor hg = Mor::compose(Mor::gen(h->name), f);
      for (int i = 0; i < 100; ++i) {
        euclid::Val x = euclid::random_value(g->dom, rng), dx = euclid::random_value(g->dom, rng);
        auto whole = euclid::flatten(euclid::pushforward(hg, {dx, x}, reg()).tangent);
        auto staged = euclid::flatten(
            euclid::pushforward(Mor::gen(h->name), euclid::pushforward(f, {dx, x}, reg()), reg()).tangent);
        for (std::size_t k = 0; k < whole.size(); ++k)
          chain_worst = std::max(chain_worst, euclid::discrepancy(whole[k], staged[k]));
      }
    }
  }
  std::ostringstream d;
  d << gens << " builtins, FD max rel err " << fd_worst << " (<= 1e-5); " << chains << " compositions, chain rule max "
    << chain_worst << " (<= 1e-9)";
  return {gens > 0 && chains > 0 && fd_worst <= 1e-5 && chain_worst <= 1e-9, d.str()};
}

Outcome cost_bound() {
  const char* corpus[] = {
      "sin o exp",          "exp o sin o cos",     "tanh o cube",          "mul o <sin, cos>",
      "mul o <exp, tanh>",  "exp o norm2",  "sin o dot o <id, id>",
      "p3 o sum2",          "sq o sin + cube",     "neg o exp o neg",      "dbl o tanh o dbl",
      "sin o mul",          "exp o dot",           "tanh o norm2",         "cube o p3 o sin",
      "mul o <sq, cube>",   "sq o sum2 + norm2",   "exp o exp o exp",      "sin o sin o sin o sin",
      "mul o <mul o <sin, exp>, tanh>",            "p3 o norm2 + sum2", "cos o sum2 + sin o norm2"};
  std::mt19937_64 rng(1);
  std::size_t n = 0;
  double worst = 0;
  std::string worst_term;
  for (const char* s : corpus) {
    Mor f = parse(s);
    MorType t = typecheck(f, reg());
    euclid::Val x = euclid::random_value(t.dom, rng), dx = euclid::random_value(t.dom, rng);
    euclid::ops::Scope e;
    euclid::eval(f, x, reg());
    std::uint64_t ev = e.ops();
    euclid::ops::Scope p;
    euclid::pushforward(f, {dx, x}, reg());
    std::uint64_t pf = p.ops();
    double ratio = static_cast<double>(pf) / static_cast<double>(std::max<std::uint64_t>(ev, 1));
    if (ratio > worst) {
      worst = ratio;
      worst_term = s;
    }
    ++n;
  }
  std::ostringstream d;
  d << n << " terms, worst pushforward/eval ratio " << worst << " (" << worst_term << ")";
  return {n >= 20 && worst <= 4.0, d.str()};
}

Outcome closed() {
  // The rule itself, on the bare left-hand side.
  Mor lhs = parse("D(ev) o t'", "((X => Y) x (X => Y)) x X");
  Mor rhs = parse("ev o (pi1 x id)", "((X => Y) x (X => Y)) x X");
  Typer typer(reg());
  RuleCtx ctx{reg(), typer};
  auto out = find_rule("eq:D-uncurry-2")->apply(right_assoc(lhs), Dir::Ltr, ctx);
  bool rule_ok = out && right_assoc(*out) == right_assoc(rhs);
  std::size_t proved = 0, total = 0;
  for (const char* name : {"eq:D-uncurry-2", "eq:T-ev-t", "eq:T-ev-psi", "eq:D-ev-psi", "prop-curry-T-t"}) {
    for (const auto& law : law_table()) {
      if (law.name != name) continue;
      ++total;
      proved += run_law(law, reg()).symbolic == Verdict::Proved;
    }
  }
  std::ostringstream d;
  d << "eq:D-uncurry-2 rule " << (rule_ok ? "rewrites" : "does not rewrite") << " D(ev) o t'; " << proved << "/"
    << total << " identities Proved";
  return {rule_ok && total == 5 && proved == total, d.str()};
}

Outcome hygiene() {
  auto t0 = Clock::now();
  TermGen gen(reg(), 20240601, {4, true, false});
  std::size_t bad = 0, exhausted = 0, nodes = 0;
  const std::size_t count = 10000;
  for (std::size_t i = 0; i < count; ++i) {
    Mor m = gen.any();
    nodes += m.size();
    try {
      MorType t = typecheck(m, reg());
      NormalizeResult r = normalize(m, reg());
      if (r.exhausted) {
        ++exhausted;
        continue;
      }
      NormalizeResult r2 = normalize(r.term, reg());
      if (!(typecheck(r.term, reg()) == t) || r2.exhausted || !(r2.term == r.term)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  double s = since(t0);
  std::ostringstream d;
  d << count << " terms (" << nodes << " nodes), " << bad << " violations, " << exhausted << " out of fuel, " << s
    << " s";
  return {bad == 0 && exhausted == 0 && s < 60.0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"monad laws", monad},
      {"strength diagrams", strength},
      {"commutativity", commutativity},
      {"distributive law", distributive},
      {"proof corpus", corpus},
      {"derivative oracle", derivative_oracle},
      {"forward-mode cost", cost_bound},
      {"closed structure", closed},
      {"normalizer hygiene", hygiene},
  };
  int failed = 0, i = 0;
  for (const auto& c : criteria) {
    ++i;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %d. %s: %s\n", o.pass ? "PASS" : "FAIL", i, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
