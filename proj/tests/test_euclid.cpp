#include <cmath>

#include "cdc/errors.hpp"
#include "cdc/euclid/builtins.hpp"
#include "cdc/euclid/eval.hpp"
#include "cdc/tangent.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cdc;
using namespace cdc::euclid;
using testing::parse;
using testing::reg;

namespace {
Val num(double x) { return Val::scalars({x}); }
Val pr(Val a, Val b) { return Val::pair(std::move(a), std::move(b)); }
std::vector<double> flat(const Val& v) { return flatten(v); }
}  // namespace

TEST_CASE("evaluation") {
  CHECK(flat(eval(parse("pi1", "R x R"), pr(num(1), num(2)), reg())) == std::vector<double>{1});
  CHECK(flat(eval(parse("id + id", "R"), num(3), reg())) == std::vector<double>{6});
  CHECK(flat(eval(parse("sin"), num(0), reg())) == std::vector<double>{0});
  CHECK(flat(eval(parse("mul"), pr(num(2), num(5)), reg())) == std::vector<double>{10});
  CHECK(flat(eval(parse("ev o <curry(mul), id>", "R"), num(3), reg())) == std::vector<double>{9});
  CHECK_THROWS_AS(eval(parse("pi1", "R x R"), num(1), reg()), ShapeMismatch);
  CHECK_THROWS_AS(eval(parse("g"), num(1), reg()), MissingBody);
}

TEST_CASE("pushforward examples") {
  DualValue id = pushforward(parse("id", "R"), {num(4), num(7)}, reg());
  CHECK(flat(id.tangent) == std::vector<double>{4});
  CHECK(flat(id.point) == std::vector<double>{7});
  DualValue sq = pushforward(parse("sq"), {num(1), num(3)}, reg());
  CHECK(flat(sq.tangent)[0] == doctest::Approx(6.0));
  CHECK(flat(sq.point)[0] == doctest::Approx(9.0));
  // The shuffle underlying mu, pushed forward, agrees with evaluation of mu.
  Obj r = parse_obj("R");
  Mor mu = tangent::mu(r);
  Val x = pr(pr(num(1), num(2)), pr(num(3), num(4)));
  DualValue m = pushforward(mu, {x, x}, reg());
  CHECK(flat(m.point) == flat(eval(mu, x, reg())));
  CHECK(flat(m.tangent) == flat(eval(mu, x, reg())));
}

TEST_CASE("finite differences") {
  auto j = finite_difference(parse("sin"), num(0), 1e-4, reg());
  CHECK(std::abs(j[0][0] - 1.0) < 1e-6);
  auto q = finite_difference(parse("sq"), num(3), 1e-4, reg());
  CHECK(std::abs(q[0][0] - 6.0) < 1e-6);
  auto s = finite_difference(parse("sigma", "(R x R) x (R x R)"), pr(pr(num(0.5), num(0.25)), pr(num(1), num(0.125))), 1e-4,
                             reg());
  double want[4][4] = {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(std::abs(s[a][b] - want[a][b]) < 1e-12);
}

TEST_CASE("pushforward matches finite differences for every generator with a body") {
  std::mt19937_64 rng(99);
  for (const auto& name : reg().names()) {
    const GenSig& g = reg().get(name);
    if (g.body.empty()) continue;
    Mor f = Mor::gen(name);
    for (int i = 0; i < 100; ++i) {
      Val x = random_value(g.dom, rng);
      auto jac = finite_difference(f, x, 1e-4, reg());
      std::vector<double> xs = flatten(x);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        std::vector<double> e(xs.size(), 0.0);
        e[j] = 1.0;
        DualValue out = pushforward(f, {unflatten(g.dom, e), x}, reg());
        auto t = flatten(out.tangent);
        for (std::size_t o = 0; o < t.size(); ++o)
          CHECK_MESSAGE(discrepancy(t[o], jac[o][j]) < 1e-5, name);
      }
    }
  }
}

TEST_CASE("pushforward obeys the chain rule") {
  std::mt19937_64 rng(3);
  for (auto [outer, inner] : {std::pair{"sin", "exp"}, {"tanh", "cube"}, {"p3", "norm2"}, {"exp", "mul"}}) {
    Mor f = parse(outer), g = parse(inner);
    Mor fg = Mor::compose(f, g);
    MorType t = testing::type_of(g);
    for (int i = 0; i < 50; ++i) {
      Val x = random_value(t.dom, rng), dx = random_value(t.dom, rng);
      DualValue whole = pushforward(fg, {dx, x}, reg());
      DualValue staged = pushforward(f, pushforward(g, {dx, x}, reg()), reg());
      auto a = flatten(whole.tangent), b = flatten(staged.tangent);
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(discrepancy(a[k], b[k]) < 1e-9);
    }
  }
}

TEST_CASE("symbolic derivative agrees with the pushforward") {
  std::mt19937_64 rng(8);
  for (const char* s : {"sin o exp", "mul o <sin, cos>", "mul o <sq, tanh>", "p3 o sum2", "cube + dbl"}) {
    Mor f = parse(s);
    MorType t = testing::type_of(f);
    for (int i = 0; i < 20; ++i) {
      Val x = random_value(t.dom, rng), dx = random_value(t.dom, rng);
      auto sym = flatten(eval(Mor::d(f), pr(dx, x), reg()));
      auto fwd = flatten(pushforward(f, {dx, x}, reg()).tangent);
      for (std::size_t k = 0; k < sym.size(); ++k) CHECK(discrepancy(sym[k], fwd[k]) < 1e-9);
    }
  }
}

TEST_CASE("law check") {
  auto [l, r] = testing::parse2("mu o etaT", "id", "R x R");
  LawResult ok = law_check(l, r, 100, 1, 1e-12, reg());
  CHECK(ok.pass);
  CHECK_FALSE(ok.witness);

  auto [p, q] = testing::parse2("psi", "psitilde", "(R x R) x (R x R)");
  CHECK(law_check(p, q, 100, 1, 1e-12, reg()).pass);

  auto [a, b] = testing::parse2("pi1", "pi2", "R x R");
  LawResult bad = law_check(a, b, 100, 1, 1e-12, reg());
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness);
  CHECK(bad.witness->error > 1e-12);

  // Seeded: the same seed gives the same witness.
  LawResult again = law_check(a, b, 100, 1, 1e-12, reg());
  CHECK(show(again.witness->input) == show(bad.witness->input));
}

TEST_CASE("operation counter") {
  ops::Scope s;
  eval(parse("sin o exp"), num(0.5), reg());
  CHECK(s.ops() == 2);
  ops::Scope d;
  pushforward(parse("sin o exp"), {num(1), num(0.5)}, reg());
  CHECK(d.ops() > 2);
  CHECK(d.ops() <= 8);
}

TEST_CASE("builtin names parse") {
  for (const auto& n : builtin_names()) CHECK_FALSE(n.empty());
  CHECK(parse_builtin("poly:1,0,3").coeffs.size() == 3);
  CHECK_THROWS_AS(parse_builtin("nosuch"), Error);
}
