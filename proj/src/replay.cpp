#include "cdc/replay.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cdc/errors.hpp"
#include "cdc/syntax.hpp"
#include "cdc/typecheck.hpp"

namespace cdc {

using K = Mor::Kind;
using json = nlohmann::json;

namespace {

constexpr std::size_t kMaxApplications = 1000;

std::string squash(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '\t' && ch != '\n') out += ch;
  return out;
}

int arity(const Mor& m) {
  switch (m.kind()) {
    case K::Pair:
    case K::Compose:
    case K::Sum: return 2;
    case K::Curry:
    case K::D: return 1;
    default: return 0;
  }
}

const Mor& child(const Mor& m, int i) { return i == 0 ? m.first() : m.second(); }

Mor with_child(const Mor& m, int i, const Mor& c) {
  switch (m.kind()) {
    case K::Pair: return i == 0 ? Mor::pair(c, m.second()) : Mor::pair(m.first(), c);
    case K::Compose: return i == 0 ? Mor::compose(c, m.second()) : Mor::compose(m.first(), c);
    case K::Sum: return i == 0 ? Mor::sum(c, m.second()) : Mor::sum(m.first(), c);
    case K::Curry: return Mor::curry(c, m.obj1(), m.obj2());
    case K::D: return Mor::d(c);
    default: return m;
  }
}

std::string path_str(const std::vector<int>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

// Tries `visit` at every node in pre-order and rebuilds the term around the
// first success.
using Visit = std::function<std::optional<Mor>(const Mor&)>;

std::optional<Mor> first_match(const Mor& m, const Visit& visit) {
  if (auto r = visit(m)) return r;
  for (int i = 0; i < arity(m); ++i)
    if (auto r = first_match(child(m, i), visit)) return with_child(m, i, *r);
  return std::nullopt;
}

bool contains_text(const Mor& m, const std::string& text) {
  if (squash(m.str()) == text) return true;
  for (int i = 0; i < arity(m); ++i)
    if (contains_text(child(m, i), text)) return true;
  return false;
}

class Replayer {
 public:
  Replayer(const Registry& reg, std::ostream* trace) : reg_(reg), typer_(reg), ctx_{reg, typer_}, trace_(trace) {}

  // Applies one step to `term` and returns the new term and the number of
  // rule applications.
  std::pair<Mor, std::size_t> step(const ProofStep& s, std::size_t index, const Mor& term) {
    const RewriteRule* rule = find_rule(s.rule);
    if (!rule) throw StepMismatch(index, "a known rule", s.rule, "unknown rule id");
    if (s.dir == Dir::Rtl && !rule->bidirectional())
      throw StepMismatch(index, "a bidirectional rule", s.rule, "rule has no right-to-left form");

    auto apply = [&](const Mor& sub, bool allow_same) -> std::optional<Mor> {
      std::optional<Mor> r;
      try {
        r = rule->apply(sub, s.dir, ctx_);
      } catch (const TypeMismatch&) {
        return std::nullopt;  // a pattern that only fits ill-typed instances
      }
      if (!r) return std::nullopt;
      Mor out = right_assoc(*r);
      if (!allow_same && out == sub) return std::nullopt;
      MorType before = typer_(sub);
      MorType after = typer_(out);
      if (!(before == after))
        throw StepMismatch(index, before.str(), after.str(), "rule " + s.rule + " changed the type of " + sub.str());
      return out;
    };

    if (s.path) {
      const auto& p = *s.path;
      std::vector<Mor> spine{term};
      for (std::size_t i = 0; i < p.size(); ++i) {
        const Mor& cur = spine.back();
        if (p[i] < 0 || p[i] >= arity(cur))
          throw PathInvalid(index, "path " + path_str(p) + " leaves the term at " + cur.str());
        spine.push_back(child(cur, p[i]));
      }
      auto r = apply(spine.back(), true);
      if (!r) throw StepMismatch(index, rule->lhs, spine.back().str(), "rule " + s.rule + " does not match");
      Mor acc = *r;
      for (std::size_t i = p.size(); i-- > 0;) acc = with_child(spine[i], p[i], acc);
      return {right_assoc(acc), 1};
    }

    std::optional<std::string> at;
    if (s.at) {
      at = squash(*s.at);
      if (!contains_text(term, *at)) throw PathInvalid(index, "no subterm '" + *s.at + "' in " + term.str());
    }
    auto visit_with = [&](bool allow_same) -> Visit {
      return [&, allow_same](const Mor& sub) -> std::optional<Mor> {
        if (at && squash(sub.str()) != *at) return std::nullopt;
        return apply(sub, allow_same);
      };
    };

    if (!s.all) {
      auto r = first_match(term, visit_with(true));
      if (!r) throw StepMismatch(index, rule->lhs, s.at ? *s.at : term.str(), "rule " + s.rule + " does not match");
      return {right_assoc(*r), 1};
    }

    Mor cur = term;
    std::size_t n = 0;
    while (auto r = first_match(cur, visit_with(false))) {
      cur = right_assoc(*r);
      if (++n > kMaxApplications)
        throw StepMismatch(index, "a fixpoint", cur.str(), "rule " + s.rule + " keeps applying");
      if (at && !contains_text(cur, *at)) break;
    }
    if (n == 0) throw StepMismatch(index, rule->lhs, s.at ? *s.at : term.str(), "rule " + s.rule + " does not match");
    return {cur, n};
  }

  Typer& typer() { return typer_; }

 private:
  const Registry& reg_;
  Typer typer_;
  RuleCtx ctx_;
  std::ostream* trace_;
};

Dir parse_dir(const std::string& s) {
  if (s == "ltr" || s == "->") return Dir::Ltr;
  if (s == "rtl" || s == "<-") return Dir::Rtl;
  throw Error("unknown direction '" + s + "'");
}

ReplayReport run(const ProofScript& script, const Registry& reg, const ReplayOptions& opts, bool rethrow) {
  ReplayReport rep;
  rep.name = script.name;
  std::ostream* tr = opts.trace;
  Mor sides[2];
  try {
    ParseOptions po;
    if (script.dom) po.dom = parse_obj(*script.dom);
    if (script.cod) po.cod = parse_obj(*script.cod);
    auto parsed = parse_same_type({script.lhs, script.rhs}, reg, po);
    sides[0] = right_assoc(parsed[0]);
    sides[1] = right_assoc(parsed[1]);
    rep.initial_lhs = sides[0];
    rep.initial_rhs = sides[1];
  } catch (const Error& e) {
    if (rethrow) throw;
    rep.error = e.what();
    rep.error_kind = "ParseError";
    return rep;
  }

  Replayer rp(reg, tr);
  if (tr) {
    *tr << script.name << " : " << rp.typer()(sides[0]).str() << "\n";
    *tr << "  lhs  " << sides[0].str() << "\n  rhs  " << sides[1].str() << "\n";
  }
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const ProofStep& s = script.steps[i];
    int k = s.side == Side::Lhs ? 0 : 1;
    StepResult sr;
    sr.index = i;
    sr.rule = s.rule;
    sr.side = s.side;
    try {
      auto [next, n] = rp.step(s, i, sides[k]);
      sr.applications = n;
      sr.term = next.str();
      sr.value = next;
      if (s.expect && squash(*s.expect) != squash(sr.term))
        throw StepMismatch(i, *s.expect, sr.term, "result differs from the expected term");
      sides[k] = next;
      sr.ok = true;
      if (tr) *tr << "  [" << i << "] " << (k ? "rhs " : "lhs ") << s.rule << (s.dir == Dir::Rtl ? " (rtl)" : "")
                  << "\n       " << sr.term << "\n";
      rep.steps.push_back(sr);
    } catch (const StepMismatch& e) {
      if (rethrow) throw;
      sr.message = e.what();
      rep.steps.push_back(sr);
      rep.error = e.what();
      rep.error_kind = "StepMismatch";
      rep.failed_step = i;
      break;
    } catch (const PathInvalid& e) {
      if (rethrow) throw;
      sr.message = e.what();
      rep.steps.push_back(sr);
      rep.error = e.what();
      rep.error_kind = "PathInvalid";
      rep.failed_step = i;
      break;
    }
  }
  rep.final_lhs = sides[0].str();
  rep.final_rhs = sides[1].str();
  if (!rep.error.empty()) return rep;

  Mor a = ac_canon(sides[0], rp.typer());
  Mor b = ac_canon(sides[1], rp.typer());
  if (!(a == b)) {
    std::string msg = "sides do not meet: " + a.str() + "  vs  " + b.str();
    if (a.str() == b.str()) msg += " (they differ only in object annotations)";
    if (rethrow) throw StepMismatch(script.steps.size(), b.str(), a.str(), msg);
    rep.error = msg;
    rep.error_kind = "FinalMismatch";
    return rep;
  }
  rep.ok = true;
  return rep;
}

}  // namespace

ProofScript parse_script(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("proof script is not valid JSON: ") + e.what());
  }
  try {
    ProofScript s;
    s.name = j.at("name").get<std::string>();
    s.lhs = j.at("lhs").get<std::string>();
    s.rhs = j.at("rhs").get<std::string>();
    if (j.contains("dom")) s.dom = j["dom"].get<std::string>();
    if (j.contains("cod")) s.cod = j["cod"].get<std::string>();
    for (const auto& js : j.value("steps", json::array())) {
      ProofStep st;
      st.rule = js.at("rule").get<std::string>();
      st.dir = parse_dir(js.value("dir", std::string("ltr")));
      if (js.contains("path")) st.path = js["path"].get<std::vector<int>>();
      if (js.contains("at")) st.at = js["at"].get<std::string>();
      st.all = js.value("all", false);
      std::string side = js.value("side", std::string("lhs"));
      if (side != "lhs" && side != "rhs") throw Error("unknown side '" + side + "'");
      st.side = side == "lhs" ? Side::Lhs : Side::Rhs;
      if (js.contains("expect")) st.expect = js["expect"].get<std::string>();
      st.note = js.value("note", std::string());
      s.steps.push_back(std::move(st));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed proof script: ") + e.what());
  }
}

ProofScript load_script(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open proof script " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

ReplayReport replay(const ProofScript& script, const Registry& reg, const ReplayOptions& opts) {
  return run(script, reg, opts, false);
}

ReplayReport replay_or_throw(const ProofScript& script, const Registry& reg) { return run(script, reg, {}, true); }

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path default_corpus_dir() { return std::filesystem::path(CDC_SOURCE_DIR) / "proofs"; }

}  // namespace cdc
