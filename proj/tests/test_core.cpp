#include <fstream>
#include <sstream>

#include "cdc/derived.hpp"
#include "cdc/errors.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace cdc;
using testing::reg;

namespace {
const Obj A = Obj::base("A");
const Obj B = Obj::base("B");
const Obj R = parse_obj("R");
}  // namespace

TEST_CASE("objects parse and print") {
  CHECK(parse_obj("R2 x R").str() == "R2xR");
  CHECK(parse_obj("(A => B) x A").left().is_exp());
  CHECK(parse_obj("A x B => C").is_exp());
  CHECK(parse_obj("R3").dim() == 3);
  CHECK(parse_obj("R x R").first_order());
  CHECK_FALSE(parse_obj("(R => R) x R").first_order());
  CHECK(parse_obj("U").is_unit());
  CHECK(parse_obj("(R2 x R) x R3").flat_dim() == 6);
  CHECK_THROWS_AS(parse_obj("R x"), ParseError);
}

TEST_CASE("typecheck of the basic combinators") {
  Mor ip = Mor::pair(Mor::proj1(A, B), Mor::proj2(A, B));
  MorType t = typecheck(ip, reg());
  CHECK(t.dom == Obj::prod(A, B));
  CHECK(t.cod == Obj::prod(A, B));

  MorType te = typecheck(Mor::ev(A, B), reg());
  CHECK(te.dom == Obj::prod(Obj::exp(A, B), A));
  CHECK(te.cod == B);

  Mor p = Mor::proj1(A, B);
  CHECK_THROWS_AS(typecheck(Mor::compose(p, p), reg()), TypeMismatch);
  CHECK_THROWS_AS(typecheck(Mor::sum(Mor::id(A), Mor::id(B)), reg()), TypeMismatch);
  CHECK_THROWS_AS(typecheck(Mor::gen("nosuch"), reg()), UnknownGenerator);
}

TEST_CASE("type mismatch reports the subterm and both objects") {
  try {
    typecheck(Mor::compose(Mor::proj1(A, B), Mor::proj1(A, B)), reg());
    FAIL("expected TypeMismatch");
  } catch (const TypeMismatch& e) {
    CHECK_FALSE(e.subterm().empty());
    CHECK(e.expected() != e.actual());
  }
}

TEST_CASE("derived constructors expand into pairings") {
  CHECK(derived::sym(A, B) == Mor::pair(Mor::proj2(A, B), Mor::proj1(A, B)));
  CHECK(derived::lunit(A) == Mor::pair(Mor::bang(A), Mor::id(A)));
  Mor f = Mor::gen("g"), g = Mor::gen("k");
  Mor fg = derived::times(f, A, g, A);
  CHECK(fg == Mor::pair(Mor::compose(f, Mor::proj1(A, A)), Mor::compose(g, Mor::proj2(A, A))));
  MorType ta = typecheck(derived::assoc(A, B, R), reg());
  CHECK(ta.dom == Obj::prod(Obj::prod(A, B), R));
  CHECK(ta.cod == Obj::prod(A, Obj::prod(B, R)));
  MorType ts = typecheck(derived::shuffle(A, B, R, A), reg());
  CHECK(ts.cod == Obj::prod(Obj::prod(A, R), Obj::prod(B, A)));
}

TEST_CASE("structural equality is syntactic") {
  CHECK(structural_eq(Mor::id(A), Mor::id(A)));
  CHECK_FALSE(structural_eq(Mor::pair(Mor::proj1(A, A), Mor::proj2(A, A)), Mor::id(Obj::prod(A, A))));
  Mor f = Mor::gen("g"), g = Mor::gen("u");
  CHECK_FALSE(structural_eq(Mor::sum(f, g), Mor::sum(g, f)));
}

TEST_CASE("parser infers types and expands macros") {
  Mor m = testing::parse("sin o pi1", "R x R");
  MorType t = testing::type_of(m);
  CHECK(t.dom.str() == "RxR");
  CHECK(t.cod.str() == "R");

  MorType te = testing::type_of(testing::parse("eta", "R2"));
  CHECK(te.cod.str() == "R2xR2");

  MorType tt = testing::type_of(testing::parse("t", "R x (R2 x R2)"));
  CHECK(tt.cod.str() == "(RxR2)x(RxR2)");

  CHECK(testing::parse("<pi1, pi2>", "A x B") == Mor::pair(Mor::proj1(A, B), Mor::proj2(A, B)));
  CHECK_THROWS_AS(testing::parse("sin o", "R"), ParseError);
  CHECK_THROWS_AS(testing::parse("nosuch", "R"), UnknownGenerator);
  CHECK_THROWS_AS(testing::parse("sin o norm2 o sin", "R"), Error);
}

TEST_CASE("annotated printing re-parses to the same term") {
  for (const char* s : {"mu o Teta", "T(sin x exp) o t", "curry(f) o k", "D(D(h)) o sigma", "psi o psiinv"}) {
    Mor m = testing::parse(s);
    CHECK(testing::parse(m.str_annotated()) == m);
  }
}

TEST_CASE("compiled-in registry equals data/registry.json") {
  std::ifstream in(std::string(CDC_SOURCE_DIR) + "/data/registry.json");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(nlohmann::json::parse(ss.str()) == nlohmann::json::parse(Registry::default_json()));
  Registry fresh = Registry::from_json_text(ss.str());
  CHECK(fresh.names() == reg().names());
}

TEST_CASE("registry validation") {
  CHECK_THROWS_AS(Registry::from_json_text(R"([{"name": "q", "dom": "R", "cod": "R", "derivative": "pi1 o pi1"}])"),
                  Error);
  CHECK_THROWS_AS(Registry::from_json_text(R"([{"name": "pi1", "dom": "R", "cod": "R"}])"), Error);
  Registry ok = Registry::from_json_text(
      R"([{"name": "q", "dom": "R", "cod": "R", "body": "square"},
          {"name": "l2", "dom": "R", "cod": "R", "body": "scale:2", "linear": true, "derivative": "l2 o pi1"}])");
  CHECK(ok.size() == 2);
  CHECK(ok.get("l2").linear);
}
