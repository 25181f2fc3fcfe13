#include "cdc/errors.hpp"
#include "cdc/replay.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cdc;
using testing::nf;
using testing::reg;

namespace {
std::filesystem::path data(const char* name) { return std::filesystem::path(CDC_SOURCE_DIR) / "tests/data" / name; }
ProofScript corpus(const char* name) { return load_script(default_corpus_dir() / (std::string(name) + ".json")); }
}  // namespace

TEST_CASE("the shipped corpus replays") {
  auto files = corpus_files(default_corpus_dir());
  REQUIRE(files.size() >= 30);
  for (const auto& f : files) {
    ReplayReport r = replay(load_script(f), reg());
    CHECK_MESSAGE(r.ok, (f.filename().string() + ": " + r.error));
  }
}

TEST_CASE("every step of every script preserves the normal form of its side") {
  for (const auto& f : corpus_files(default_corpus_dir())) {
    ReplayReport r = replay(load_script(f), reg());
    REQUIRE(r.ok);
    Mor want[2] = {nf(r.initial_lhs), nf(r.initial_rhs)};
    CHECK_MESSAGE(want[0] == want[1], f.filename().string());
    for (const auto& s : r.steps) {
      int k = s.side == Side::Lhs ? 0 : 1;
      CHECK_MESSAGE(nf(s.value) == want[k], (f.filename().string() + " step " + std::to_string(s.index)));
    }
  }
}

TEST_CASE("named scripts") {
  ReplayReport lu = replay(corpus("lem-left-unit"), reg());
  CHECK(lu.ok);
  CHECK(lu.steps.size() == 7);
  ReplayReport la = replay(corpus("lem-assoc"), reg());
  CHECK(la.ok);
  CHECK_FALSE(la.steps.empty());

  ProofScript cd = corpus("cor-D-interchange");
  CHECK(cd.steps.front().rule == "lemma-D-interchange");
  CHECK(replay(cd, reg()).ok);
}

TEST_CASE("a broken script stops at the failing step") {
  ReplayReport r = replay(load_script(data("broken.json")), reg());
  CHECK_FALSE(r.ok);
  CHECK(r.error_kind == "StepMismatch");
  REQUIRE(r.failed_step);
  CHECK(*r.failed_step == 1);
  CHECK(r.steps.size() == 2);
  CHECK(r.steps[0].ok);

  try {
    replay_or_throw(load_script(data("broken.json")), reg());
    FAIL("expected StepMismatch");
  } catch (const StepMismatch& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("a wrong path is reported as PathInvalid") {
  ReplayReport r = replay(load_script(data("wrong-path.json")), reg());
  CHECK(r.error_kind == "PathInvalid");
  CHECK(*r.failed_step == 1);
  CHECK_THROWS_AS(replay_or_throw(load_script(data("wrong-path.json")), reg()), PathInvalid);
}

TEST_CASE("an expectation that is not met is a StepMismatch") {
  ReplayReport r = replay(load_script(data("wrong-expect.json")), reg());
  CHECK(r.error_kind == "StepMismatch");
  CHECK(*r.failed_step == 0);
}

TEST_CASE("sides that do not meet") {
  ProofScript s = parse_script(R"({"name": "short", "lhs": "mu o etaT", "rhs": "id", "dom": "X x X",
                                   "steps": [{"rule": "eq:circ-pair"}]})");
  ReplayReport r = replay(s, reg());
  CHECK(r.error_kind == "FinalMismatch");
  CHECK_FALSE(r.failed_step);
}

TEST_CASE("script parsing") {
  ProofScript s = parse_script(R"({"name": "x", "lhs": "id", "rhs": "<pi1, pi2>", "dom": "A x B",
    "steps": [{"rule": "eq:id-pair", "dir": "rtl", "side": "lhs", "path": [], "note": "expand"}]})");
  REQUIRE(s.steps.size() == 1);
  CHECK(s.steps[0].dir == Dir::Rtl);
  CHECK(s.steps[0].path->empty());
  CHECK(replay(s, reg()).ok);
  CHECK_THROWS_AS(parse_script("{"), Error);
  ProofScript unknown = parse_script(R"({"name": "x", "lhs": "id", "rhs": "id", "steps": [{"rule": "zzz"}]})");
  CHECK(replay(unknown, reg()).error_kind == "StepMismatch");
}
