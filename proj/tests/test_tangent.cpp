#include "cdc/euclid/eval.hpp"
#include "cdc/tangent.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cdc;
using testing::parse;
using testing::reg;
using testing::verdict;

namespace {
const Obj A = Obj::base("A");
const Obj R = parse_obj("R");

euclid::Val num(double x) { return euclid::Val::scalars({x}); }
euclid::Val pr(euclid::Val a, euclid::Val b) { return euclid::Val::pair(std::move(a), std::move(b)); }
std::vector<double> at(const Mor& f, const euclid::Val& v) { return euclid::flatten(euclid::eval(f, v, reg())); }
}  // namespace

TEST_CASE("T is a functor") {
  CHECK(verdict("T(id)", "id", "A x A") == Verdict::Proved);
  CHECK(verdict("T(h o g)", "T(h) o T(g)", "A x A") == Verdict::Proved);
  CHECK(testing::type_of(tangent::T_mor(Mor::gen("g"), reg())).cod == Obj::prod(Obj::base("B"), Obj::base("B")));
  // T(sq) at (x' = 1, x = 3).
  CHECK(at(tangent::T_mor(Mor::gen("sq"), reg()), pr(num(1), num(3))) == std::vector<double>{6, 9});
}

TEST_CASE("T on a linear morphism is f x f") {
  Mor s = Mor::gen("sum2");
  CHECK(equal_mod_theory(tangent::T_mor(s, reg()), tangent::T_linear(s, reg()), reg()).verdict == Verdict::Proved);
}

TEST_CASE("eta") {
  CHECK(at(tangent::eta(R), num(5)) == std::vector<double>{0, 5});
  MorType t = testing::type_of(tangent::eta(A));
  CHECK(t.dom == A);
  CHECK(t.cod == Obj::prod(A, A));
  CHECK(verdict("T(g) o eta", "eta o g", "A") == Verdict::Proved);
  CHECK(verdict("T(sin) o eta", "eta o sin", "R") == Verdict::Proved);
}

TEST_CASE("mu") {
  CHECK(at(tangent::mu(R), pr(pr(num(1), num(2)), pr(num(3), num(4)))) == std::vector<double>{5, 4});
  CHECK(verdict("mu o etaT", "id", "A x A") == Verdict::Proved);
  CHECK(verdict("mu o Teta", "id", "A x A") == Verdict::Proved);
}

TEST_CASE("strength") {
  // t(x, (y', y)) = ((0, y'), (x, y))
  CHECK(at(tangent::strength(R, R), pr(num(1), pr(num(2), num(3)))) == std::vector<double>{0, 2, 1, 3});
  CHECK(verdict("t o (id x eta)", "eta", "A x B") == Verdict::Proved);
  CHECK(verdict("t'", "T(c) o t o c", "(A x A) x B") == Verdict::Proved);
}

TEST_CASE("psi and the commutativity of T") {
  Mor psi = tangent::psi(R, R);
  CHECK(at(psi, pr(pr(num(1), num(2)), pr(num(3), num(4)))) == std::vector<double>{1, 3, 2, 4});
  CHECK(testing::nf(psi) == testing::nf(tangent::psi_tilde(R, R)));
  CHECK(verdict("psi o <T(g), T(k)>", "T(<g, k>)", "A x A") == Verdict::Proved);
}

TEST_CASE("sigma as a distributive law") {
  CHECK(verdict("sigma o sigma", "id", "(A x A) x (A x A)") == Verdict::Proved);
  CHECK(verdict("sigma o etaT", "Teta", "A x A") == Verdict::Proved);
  CHECK(verdict("sigma o Tmu", "muT o Tsigma o sigmaT", "((A x A) x (A x A)) x ((A x A) x (A x A))") ==
        Verdict::Proved);
}

TEST_CASE("closed structure") {
  const char* dom = "(A => B) x (A x A)";
  CHECK(verdict("T(ev) o t", "<D(ev) o t, ev o (id x pi2)>", dom) == Verdict::Proved);
  CHECK(verdict("T(ev) o psi", "<ev o (pi1 x pi2) + D(ev) o t o (pi2 x id), ev o (pi2 x pi2)>",
                "((A => B) x (A => B)) x (A x A)") == Verdict::Proved);
  CHECK(verdict("Tbar o curry(f)", "curry(T(f) o t)", "A") == Verdict::Proved);
  MorType tu = testing::type_of(tangent::underline_T(A, Obj::base("B")));
  CHECK(tu.cod.is_exp());
  MorType th = testing::type_of(tangent::psi_hat(A, Obj::base("B")));
  CHECK(th.dom == Obj::prod(Obj::exp(A, Obj::base("B")), Obj::exp(A, Obj::base("B"))));
}

TEST_CASE("T of a curried morphism") {
  Mor f = Mor::gen("f");
  Mor tc = tangent::T_curry(f, reg());
  MorType t = testing::type_of(tc);
  Obj b = Obj::base("B"), c = Obj::base("C");
  CHECK(t.dom == Obj::prod(A, A));
  CHECK(t.cod == Obj::prod(Obj::exp(b, c), Obj::exp(b, c)));
  CHECK(equal_mod_theory(tc, tangent::T_mor(Mor::curry(f, A, b), reg()), reg()).verdict == Verdict::Proved);
  CHECK(verdict("curry(f o pi2 o t')", "curry(f) o pi2", "A x A") == Verdict::Proved);
}
