#include "cdc/derived.hpp"
#include "cdc/diff.hpp"
#include "cdc/errors.hpp"
#include "cdc/euclid/eval.hpp"
#include "cdc/random_terms.hpp"
#include "cdc/tangent.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cdc;
using testing::nf;
using testing::parse;
using testing::reg;

namespace {
const Obj A = Obj::base("A");
const Obj B = Obj::base("B");
const Obj R = parse_obj("R");

Mor diff(const Mor& f) { return differentiate(f, reg()).term; }
}  // namespace

TEST_CASE("D3 on identities and projections") {
  CHECK(diff(Mor::id(A)) == Mor::proj1(A, A));
  Obj ab = Obj::prod(A, B);
  CHECK(diff(Mor::proj1(A, B)) == Mor::compose(Mor::proj1(A, B), Mor::proj1(ab, ab)));
  CHECK(diff(Mor::proj2(A, B)) == Mor::compose(Mor::proj2(A, B), Mor::proj1(ab, ab)));
}

TEST_CASE("D5 on a composite of opaque generators") {
  Mor h = Mor::gen("h"), g = Mor::gen("g");
  Mor expect = Mor::compose(Mor::d(h), Mor::pair(Mor::d(g), Mor::compose(g, Mor::proj2(A, A))));
  CHECK(diff(Mor::compose(h, g)) == expect);
  CHECK(differentiate(Mor::compose(h, g), reg()).residual_D_nodes == 2);
}

TEST_CASE("D of curry goes through the costrength") {
  Mor f = Mor::gen("f");
  Mor expect = Mor::curry(Mor::compose(Mor::d(f), tangent::costrength(A, B)), Obj::prod(A, A), B);
  CHECK(diff(Mor::curry(f, A, B)) == expect);
  CHECK(testing::type_of(diff(Mor::curry(f, A, B))).dom == Obj::prod(A, A));
}

TEST_CASE("registered derivatives replace D(g)") {
  DiffResult r = differentiate(Mor::gen("sin"), reg());
  CHECK(r.residual_D_nodes == 0);
  CHECK(r.term == *reg().get("sin").derivative);
}

TEST_CASE("second derivative") {
  DiffResult opaque = second_derivative(Mor::gen("g"), reg());
  CHECK(opaque.residual_D_nodes == 2);
  MorType t = testing::type_of(opaque.term);
  CHECK(t.dom == Obj::prod(Obj::prod(A, A), Obj::prod(A, A)));

  // A linear generator: D(D(f)) = f o pi1 o pi1.
  Obj r2 = parse_obj("R2");
  Mor sum2 = Mor::gen("sum2");
  Mor dd = second_derivative(sum2, reg()).term;
  Obj tr2 = Obj::prod(r2, r2);
  Mor expect = Mor::compose(sum2, Mor::compose(Mor::proj1(r2, r2), Mor::proj1(tr2, tr2)));
  CHECK(nf(dd) == nf(expect));

  auto [l, rr] = testing::parse2("D(D(tanh)) o sigma", "D(D(tanh))", "");
  EqualityOptions o;
  auto res = equal_mod_theory(l, rr, reg(), o);
  CHECK(res.verdict == Verdict::Proved);
  CHECK(euclid::law_check(l, rr, 100, 7, 1e-9, reg()).pass);
}

TEST_CASE("linearity analysis") {
  CHECK(is_linear(parse("sigma", "(R x R) x (R x R)"), reg()));
  CHECK(is_linear(parse("eta", "R"), reg()));
  CHECK(is_linear(parse("mu", "(R x R) x (R x R)"), reg()));
  CHECK(is_linear(parse("sum2 + sum2"), reg()));
  CHECK(is_linear(parse("<neg o pi1, 0>", "R x R"), reg()));
  CHECK_FALSE(is_linear(Mor::gen("sin"), reg()));
  CHECK_FALSE(is_linear(parse("sin o neg"), reg()));
  CHECK_THROWS_AS(linear_shortcut(Mor::gen("sin"), reg()), NotLinear);
}

TEST_CASE("linear shortcut examples") {
  CHECK(linear_shortcut(Mor::proj2(A, B), reg()) ==
        Mor::compose(Mor::proj2(A, B), Mor::proj1(Obj::prod(A, B), Obj::prod(A, B))));
  CHECK(linear_shortcut(Mor::id(A), reg()) == Mor::compose(Mor::id(A), Mor::proj1(A, A)));
  Mor c = derived::sym(A, B);
  CHECK(nf(diff(c)) == nf(linear_shortcut(c, reg())));
}

TEST_CASE("linear shortcut is sound on every linear term of a random corpus") {
  TermGen gen(reg(), 11, {3, true, false});
  int linear = 0;
  for (int i = 0; i < 2000; ++i) {
    Mor f = gen.any();
    if (!is_linear(f, reg())) continue;
    ++linear;
    auto res = equal_mod_theory(diff(f), linear_shortcut(f, reg()), reg(), {false});
    CHECK_MESSAGE(res.verdict == Verdict::Proved, f.str());
  }
  CHECK(linear > 50);
}

TEST_CASE("differentiate preserves typing and D1 holds on random terms") {
  TermGen gen(reg(), 12, {3, true, false});
  for (int i = 0; i < 300; ++i) {
    Mor f = gen.any(), g;
    MorType t = testing::type_of(f);
    g = gen.term(t.dom, t.cod, 3);
    MorType td = testing::type_of(diff(f));
    CHECK(td.dom == Obj::prod(t.dom, t.dom));
    CHECK(td.cod == t.cod);
    CHECK(nf(Mor::d(Mor::sum(f, g))) == nf(Mor::sum(Mor::d(f), Mor::d(g))));
  }
}

TEST_CASE("D2 holds pointwise in the Euclidean model") {
  std::mt19937_64 rng(5);
  for (const char* s : {"sin", "exp o cube", "mul", "norm2", "p3 o tanh"}) {
    Mor f = parse(s);
    MorType t = testing::type_of(f);
    Mor df = diff(f);
    for (int i = 0; i < 20; ++i) {
      euclid::Val h = euclid::random_value(t.dom, rng), k = euclid::random_value(t.dom, rng);
      euclid::Val v = euclid::random_value(t.dom, rng);
      auto hk = euclid::flatten(h), kk = euclid::flatten(k);
      for (std::size_t j = 0; j < hk.size(); ++j) hk[j] += kk[j];
      euclid::Val sum = euclid::unflatten(t.dom, hk);
      auto a = euclid::flatten(euclid::eval(df, euclid::Val::pair(sum, v), reg()));
      auto b = euclid::flatten(euclid::eval(df, euclid::Val::pair(h, v), reg()));
      auto c = euclid::flatten(euclid::eval(df, euclid::Val::pair(k, v), reg()));
      for (std::size_t j = 0; j < a.size(); ++j) CHECK(euclid::discrepancy(a[j], b[j] + c[j]) < 1e-9);
      auto z = euclid::flatten(euclid::eval(df, euclid::Val::pair(euclid::zero_value(t.dom), v), reg()));
      for (double x : z) CHECK(x == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("interchange of the second derivative holds numerically") {
  // i, h, g, k are the four projections out of (X x X) x (X x X).
  const std::string before = " o <<pi1 o pi1, pi2 o pi1>, <pi1 o pi2, pi2 o pi2>>";
  const std::string after = " o <<pi1 o pi1, pi1 o pi2>, <pi2 o pi1, pi2 o pi2>>";
  for (auto [g, x] : {std::pair{"sin", "R"}, {"exp", "R"}, {"tanh", "R"}, {"p3", "R"}, {"norm2", "R2"},
                      {"mul", "R x R"}}) {
    std::string dd = std::string("D(D(") + g + "))";
    std::string tx = std::string("(") + x + ") x (" + x + ")";
    auto [l, r] = testing::parse2(dd + before, dd + after, "(" + tx + ") x (" + tx + ")");
    CHECK_MESSAGE(euclid::law_check(l, r, 100, 3, 1e-6, reg()).pass, g);
  }
}
