#include "cdc/laws.hpp"

#include <chrono>

#include "cdc/syntax.hpp"

namespace cdc {

namespace {

constexpr const char* kTX = "X x X";
constexpr const char* kTTX = "(X x X) x (X x X)";
constexpr const char* kTTTX = "((X x X) x (X x X)) x ((X x X) x (X x X))";
constexpr const char* kTR2 = "R2 x R2";
constexpr const char* kTTR2 = "(R2 x R2) x (R2 x R2)";
constexpr const char* kTTTR2 = "((R2 x R2) x (R2 x R2)) x ((R2 x R2) x (R2 x R2))";
constexpr const char* kTTR = "(R x R) x (R x R)";

std::vector<Law> make_laws() {
  std::vector<Law> v;
  auto same = [](const char* lhs, const char* rhs, const char* dom, double tol = 1e-12) {
    return std::vector<NumericInstance>{{lhs, rhs, dom, tol}};
  };

  // Monad laws.
  v.push_back({"monad", "lem-left-unit", "mu o etaT", "id", kTX, same("mu o etaT", "id", kTR2)});
  v.push_back({"monad", "lem-right-unit", "mu o Teta", "id", kTX, same("mu o Teta", "id", kTR2)});
  v.push_back({"monad", "lem-assoc", "mu o muT", "mu o Tmu", kTTTX, same("mu o muT", "mu o Tmu", kTTTR2)});

  // Strength diagrams.
  v.push_back({"strength", "eq:strength-terminal", "t o l", "T(l)", kTX, same("t o l", "T(l)", kTR2)});
  v.push_back({"strength", "eq:strength-assoc", "t o (id x t) o a", "T(a) o t", "(X x Y) x (Z x Z)",
               same("t o (id x t) o a", "T(a) o t", "(R x R2) x (R3 x R3)")});
  v.push_back({"strength", "eq:strength-unit", "t o (id x eta)", "eta", "X x Y",
               same("t o (id x eta)", "eta", "R2 x R3")});
  v.push_back({"strength", "eq:strength-mult", "mu o T(t) o t", "t o (id x mu)", "X x ((Y x Y) x (Y x Y))",
               same("mu o T(t) o t", "t o (id x mu)", "R2 x ((R x R) x (R x R))")});

  // Commutativity and the monoidal structure.
  v.push_back({"commutative", "lemma-psi-is-shuffle", "psi", "sigma", "(X x X) x (Y x Y)",
               same("psi", "sigma", "(R2 x R2) x (R x R)")});
  v.push_back({"commutative", "lemma-tilde-psi-is-shuffle", "psitilde", "sigma", "(X x X) x (Y x Y)",
               same("psitilde", "sigma", "(R2 x R2) x (R x R)")});
  v.push_back({"commutative", "psi-commutative", "psi", "psitilde", "(X x X) x (Y x Y)",
               same("psi", "psitilde", "(R2 x R2) x (R x R)")});
  v.push_back({"commutative", "remark-psi-iso", "psi o psiinv", "id", "(X x Y) x (X x Y)",
               same("psi o psiinv", "id", "(R2 x R) x (R2 x R)")});
  v.push_back({"commutative", "remark-psi-iso-inverse", "psiinv o psi", "id", "(X x X) x (Y x Y)",
               same("psiinv o psi", "id", "(R2 x R2) x (R x R)")});
  v.push_back({"commutative", "lemma-psi-pair", "psi o <T(g), T(k)>", "T(<g, k>)", "A x A",
               {{"psi o <T(sin), T(cube)>", "T(<sin, cube>)", "R x R", 1e-9},
                {"psi o <T(norm2), T(sum2)>", "T(<norm2, sum2>)", kTR2, 1e-9}}});

  // Distributive law of T over itself.
  v.push_back({"distributive", "sigma-triangle-right", "sigma o etaT", "Teta", kTX,
               same("sigma o etaT", "Teta", kTR2)});
  v.push_back({"distributive", "sigma-triangle-left", "sigma o Teta", "etaT", kTX,
               same("sigma o Teta", "etaT", kTR2)});
  v.push_back({"distributive", "sigma-pentagon-left", "sigma o Tmu", "muT o Tsigma o sigmaT", kTTTX,
               same("sigma o Tmu", "muT o Tsigma o sigmaT", kTTTR2)});
  v.push_back({"distributive", "sigma-pentagon-right", "sigma o muT", "Tmu o sigmaT o Tsigma", kTTTX,
               same("sigma o muT", "Tmu o sigmaT o Tsigma", kTTTR2)});
  v.push_back({"commutative", "prop-sigma-compat-strength", "T(t') o t", "sigma o T(t) o t'", "(X x X) x (Y x Y)",
               same("T(t') o t", "sigma o T(t) o t'", "(R2 x R2) x (R x R)")});

  // Naturality and functoriality.
  v.push_back({"naturality", "T-functor-id", "T(id)", "id", kTX, same("T(id)", "id", kTR2)});
  v.push_back({"naturality", "T-functor-compose", "T(h o g)", "T(h) o T(g)", "A x A",
               {{"T(sin o exp)", "T(sin) o T(exp)", "R x R", 1e-9},
                {"T(p3 o norm2)", "T(p3) o T(norm2)", kTR2, 1e-9}}});
  v.push_back({"naturality", "lemma-T-additive-functor", "T(g + g o k)", "T(g) + T(g o k)", "A x A",
               {{"T(sin + cube)", "T(sin) + T(cube)", "R x R", 1e-9}}});
  v.push_back({"naturality", "eta-natural", "T(g) o eta", "eta o g", "A",
               {{"T(sin) o eta", "eta o sin", "R", 1e-9}, {"T(norm2) o eta", "eta o norm2", "R2", 1e-9}}});
  v.push_back({"naturality", "mu-natural", "T(g) o mu", "mu o T(T(g))", "(A x A) x (A x A)",
               {{"T(sin) o mu", "mu o T(T(sin))", kTTR, 1e-9},
                {"T(mul) o mu", "mu o T(T(mul))", "((R x R) x (R x R)) x ((R x R) x (R x R))", 1e-9}}});
  v.push_back({"naturality", "t-natural", "T(k x g) o t", "t o (k x T(g))", "A x (A x A)",
               {{"T(sin x exp) o t", "t o (sin x T(exp))", "R x (R x R)", 1e-9}}});
  v.push_back({"naturality", "sigma-natural", "T(T(g)) o sigma", "sigma o T(T(g))", "(A x A) x (A x A)",
               {{"T(T(sin)) o sigma", "sigma o T(T(sin))", kTTR, 1e-6},
                {"T(T(exp)) o sigma", "sigma o T(T(exp))", kTTR, 1e-6},
                {"T(T(tanh)) o sigma", "sigma o T(T(tanh))", kTTR, 1e-6},
                {"T(T(p3)) o sigma", "sigma o T(T(p3))", kTTR, 1e-6},
                {"T(T(norm2)) o sigma", "sigma o T(T(norm2))", kTTR2, 1e-6},
                {"T(T(mul)) o sigma", "sigma o T(T(mul))", "((R x R) x (R x R)) x ((R x R) x (R x R))", 1e-6}}});
  v.push_back({"naturality", "lemma-T-additive-morphisms", "T(sum2)", "sum2 x sum2", kTR2,
               same("T(sum2)", "sum2 x sum2", kTR2)});

  // Closed structure and enrichment. These live at exponential types, so
  // they are checked symbolically only.
  v.push_back({"closed", "eq:D-uncurry-2", "D(ev) o t'", "ev o (pi1 x id)", "((X => Y) x (X => Y)) x X", {}});
  v.push_back({"closed", "eq:D-curry-1", "D(curry(f))", "curry(D(f) o t')", "A x A", {}});
  v.push_back({"closed", "eq:T-ev-t", "T(ev) o t", "<D(ev) o t, ev o (id x pi2)>", "(X => Y) x (X x X)", {}});
  v.push_back({"closed", "eq:T-ev-psi", "T(ev) o psi",
               "<ev o (pi1 x pi2) + D(ev) o t o (pi2 x id), ev o (pi2 x pi2)>",
               "((X => Y) x (X => Y)) x (X x X)", {}});
  v.push_back({"closed", "eq:D-ev-psi", "D(ev) o psi", "ev o (pi1 x pi2) + D(ev) o t o (pi2 x id)",
               "((X => Y) x (X => Y)) x (X x X)", {}});
  v.push_back({"closed", "prop-T-curry", "T(curry(f))", "<curry(pi1 o T(f) o t'), curry(pi2 o T(f) o t')>",
               "A x A", {}});
  v.push_back({"closed", "thm-und-T-linear", "D(T(ev) o t) o t'", "T(ev) o t o (pi1 x id)",
               "((X => Y) x (X => Y)) x (X x X)", {}});
  v.push_back({"closed", "thm-und-T-linear-curried", "D(Tbar)", "Tbar o pi1", "(X => Y) x (X => Y)", {}});
  v.push_back({"closed", "prop-curry-T-t", "Tbar o curry(f)", "curry(T(f) o t)", "A", {}});
  return v;
}

}  // namespace

const std::vector<Law>& law_table() {
  static const std::vector<Law> laws = make_laws();
  return laws;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& l : law_table())
    if (out.empty() || out.back() != l.suite) out.push_back(l.suite);
  return out;
}

bool LawOutcome::ok() const {
  if (symbolic != Verdict::Proved) return false;
  for (const auto& n : numeric)
    if (!n.pass) return false;
  return true;
}

LawOutcome run_law(const Law& law, const Registry& reg, const SuiteOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  LawOutcome out;
  out.law = &law;
  try {
    auto terms = parse_same_type({law.lhs, law.rhs}, reg, ParseOptions{parse_obj(law.dom), std::nullopt});
    EqualityOptions eo;
    eo.numeric = false;
    EqualityResult r = equal_mod_theory(terms[0], terms[1], reg, eo);
    out.symbolic = r.verdict;
    out.reason = r.reason;
    out.lhs_nf = r.lhs_nf.str();
    out.rhs_nf = r.rhs_nf.str();
  } catch (const Error& e) {
    out.symbolic = Verdict::Unknown;
    out.reason = e.what();
  }
  if (opts.numeric) {
    for (const auto& inst : law.numeric) {
      NumericOutcome n;
      n.dom = inst.dom;
      n.tol = inst.tol;
      try {
        auto terms = parse_same_type({inst.lhs, inst.rhs}, reg, ParseOptions{parse_obj(inst.dom), std::nullopt});
        euclid::LawResult lr = euclid::law_check(terms[0], terms[1], opts.points, opts.seed, inst.tol, reg);
        n.pass = lr.pass;
        n.max_error = lr.max_error;
        n.witness = lr.witness;
      } catch (const Error& e) {
        n.error = e.what();
      }
      out.numeric.push_back(std::move(n));
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<LawOutcome> run_suite(const std::string& suite, const Registry& reg, const SuiteOptions& opts) {
  bool known = suite == "all";
  for (const auto& s : suite_names()) known = known || s == suite;
  if (!known) throw Error("unknown law suite '" + suite + "'");
  std::vector<LawOutcome> out;
  for (const auto& l : law_table())
    if (suite == "all" || l.suite == suite) out.push_back(run_law(l, reg, opts));
  return out;
}

}  // namespace cdc
