#include "cdc/laws.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cdc;
using testing::reg;

TEST_CASE("every suite passes") {
  for (const auto& suite : suite_names()) {
    auto out = run_suite(suite, reg());
    CHECK_FALSE(out.empty());
    for (const auto& o : out) {
      CHECK_MESSAGE(o.symbolic == Verdict::Proved, (o.law->name + ": " + o.reason));
      CHECK_MESSAGE(o.ok(), o.law->name);
      for (const auto& n : o.numeric) CHECK_MESSAGE(n.pass, (o.law->name + " on " + n.dom));
    }
  }
}

TEST_CASE("suite sizes") {
  CHECK(run_suite("monad", reg()).size() == 3);
  CHECK(run_suite("strength", reg()).size() == 4);
  CHECK(run_suite("distributive", reg()).size() == 4);
  CHECK_THROWS_AS(run_suite("nosuch", reg()), Error);
}

TEST_CASE("a wrong law is caught numerically") {
  Law wrong{"naturality", "wrong", "T(g) o mu", "mu o T(g x g)", "(A x A) x (A x A)",
            {{"T(sin) o mu", "mu o (T(sin) x T(sin))", "(R x R) x (R x R)", 1e-9}}};
  LawOutcome o = run_law(wrong, reg());
  CHECK_FALSE(o.ok());
  REQUIRE(o.numeric.size() == 1);
  CHECK_FALSE(o.numeric[0].pass);
  CHECK(o.numeric[0].witness);
}
