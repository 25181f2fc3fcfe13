// Command-line front end: differentiate, normalize, decide equality, run
// the law suites and replay the proof corpus.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdc/diff.hpp"
#include "cdc/errors.hpp"
#include "cdc/euclid/eval.hpp"
#include "cdc/laws.hpp"
#include "cdc/replay.hpp"
#include "cdc/rewrite.hpp"
#include "cdc/rules.hpp"
#include "cdc/syntax.hpp"
#include "cdc/typecheck.hpp"
#include "cdc/version.hpp"

using json = nlohmann::json;
using namespace cdc;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::optional<std::string> registry;
  bool json_out = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json witness_json(const euclid::Witness& w) {
  return {{"input", euclid::show(w.input)},
          {"lhs", euclid::show(w.lhs)},
          {"rhs", euclid::show(w.rhs)},
          {"error", w.error}};
}

json header(const std::string& command) { return {{"command", command}, {"version", kVersion}}; }

ParseOptions parse_opts(const std::optional<std::string>& dom, const std::optional<std::string>& cod) {
  ParseOptions po;
  if (dom) po.dom = parse_obj(*dom);
  if (cod) po.cod = parse_obj(*cod);
  return po;
}

// d ------------------------------------------------------------------------

struct DArgs {
  std::string expr;
  std::optional<std::string> dom;
  bool raw = false;
  bool second = false;
};

int cmd_d(const DArgs& a, const Common& c) {
  auto t0 = std::chrono::steady_clock::now();
  Registry reg = Registry::load(c.registry);
  Mor f = parse_mor(a.expr, reg, parse_opts(a.dom, std::nullopt));
  DiffResult d = a.second ? second_derivative(f, reg) : differentiate(f, reg);
  Mor out = d.term;
  bool exhausted = false;
  if (!a.raw) {
    NormalizeResult nr = normalize(d.term, reg);
    out = nr.term;
    exhausted = nr.exhausted;
  }
  MorType ty = typecheck(out, reg);
  if (c.json_out) {
    json j = header("d");
    j["inputs"] = {{"expr", a.expr}, {"second", a.second}, {"normalized", !a.raw}};
    j["input_type"] = typecheck(f, reg).str();
    j["term"] = out.str();
    j["annotated"] = out.str_annotated();
    j["type"] = ty.str();
    j["residual_D_nodes"] = d.residual_D_nodes;
    j["fuel_exhausted"] = exhausted;
    j["seconds"] = seconds_since(t0);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << out.str() << " : " << ty.str() << "\n";
    if (d.residual_D_nodes) std::cout << "residual D nodes: " << d.residual_D_nodes << "\n";
    if (exhausted) std::cout << "warning: normalization fuel exhausted\n";
  }
  return kOk;
}

// nf -----------------------------------------------------------------------

struct NfArgs {
  std::string expr;
  std::optional<std::string> dom;
  std::size_t fuel = 10000;
};

int cmd_nf(const NfArgs& a, const Common& c) {
  Registry reg = Registry::load(c.registry);
  Mor f = parse_mor(a.expr, reg, parse_opts(a.dom, std::nullopt));
  NormalizeResult nr = normalize(f, reg, a.fuel);
  MorType ty = typecheck(nr.term, reg);
  if (c.json_out) {
    json j = header("nf");
    j["inputs"] = {{"expr", a.expr}, {"fuel", a.fuel}};
    j["term"] = nr.term.str();
    j["type"] = ty.str();
    j["steps"] = nr.steps;
    j["fuel_exhausted"] = nr.exhausted;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << nr.term.str() << " : " << ty.str() << "\n";
    if (nr.exhausted) std::cout << "warning: normalization fuel exhausted\n";
  }
  return nr.exhausted ? kFail : kOk;
}

// eq -----------------------------------------------------------------------

struct EqArgs {
  std::string lhs, rhs;
  std::optional<std::string> dom;
  bool numeric = false;
  std::size_t points = 100;
  std::uint64_t seed = 20240601;
  double tol = 1e-9;
};

int cmd_eq(const EqArgs& a, const Common& c) {
  auto t0 = std::chrono::steady_clock::now();
  Registry reg = Registry::load(c.registry);
  auto terms = parse_same_type({a.lhs, a.rhs}, reg, parse_opts(a.dom, std::nullopt));
  EqualityOptions eo;
  eo.numeric = a.numeric;
  eo.points = a.points;
  eo.seed = a.seed;
  eo.tol = a.tol;
  EqualityResult r = equal_mod_theory(terms[0], terms[1], reg, eo);
  if (c.json_out) {
    json j = header("eq");
    j["inputs"] = {{"lhs", a.lhs}, {"rhs", a.rhs}, {"numeric", a.numeric}, {"points", a.points}, {"tol", a.tol}};
    j["seed"] = a.seed;
    j["type"] = typecheck(terms[0], reg).str();
    j["verdict"] = to_string(r.verdict);
    j["reason"] = r.reason;
    j["lhs_nf"] = r.lhs_nf.str();
    j["rhs_nf"] = r.rhs_nf.str();
    j["max_error"] = r.max_error;
    j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
    j["seconds"] = seconds_since(t0);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_string(r.verdict) << " (" << r.reason << ")\n";
    if (r.verdict != Verdict::Proved) {
      std::cout << "  lhs nf: " << r.lhs_nf.str() << "\n  rhs nf: " << r.rhs_nf.str() << "\n";
    }
    if (r.witness) {
      std::cout << "  witness: " << euclid::show(r.witness->input) << "\n    lhs = " << euclid::show(r.witness->lhs)
                << "\n    rhs = " << euclid::show(r.witness->rhs) << "\n    discrepancy = " << r.witness->error
                << "\n";
    }
  }
  return r.verdict == Verdict::Proved ? kOk : kFail;
}

// laws ---------------------------------------------------------------------

struct LawsArgs {
  std::string suite = "all";
  std::size_t points = 100;
  std::uint64_t seed = 20240601;
  bool symbolic_only = false;
};

int cmd_laws(const LawsArgs& a, const Common& c) {
  auto t0 = std::chrono::steady_clock::now();
  Registry reg = Registry::load(c.registry);
  SuiteOptions so;
  so.points = a.points;
  so.seed = a.seed;
  so.numeric = !a.symbolic_only;
  auto outcomes = run_suite(a.suite, reg, so);
  std::size_t proved = 0, passed = 0;
  for (const auto& o : outcomes) {
    proved += o.symbolic == Verdict::Proved;
    passed += o.ok();
  }
  if (c.json_out) {
    json j = header("laws");
    j["inputs"] = {{"suite", a.suite}, {"points", a.points}, {"numeric", so.numeric}};
    j["seed"] = a.seed;
    json laws = json::array();
    for (const auto& o : outcomes) {
      json l = {{"suite", o.law->suite}, {"name", o.law->name}, {"lhs", o.law->lhs}, {"rhs", o.law->rhs},
                {"symbolic", to_string(o.symbolic)}, {"reason", o.reason}, {"seconds", o.seconds}};
      json nums = json::array();
      for (const auto& n : o.numeric) {
        json nj = {{"dom", n.dom}, {"verdict", n.pass ? "Pass" : "Fail"}, {"max_error", n.max_error}, {"tol", n.tol}};
        if (n.witness) nj["witness"] = witness_json(*n.witness);
        if (!n.error.empty()) nj["error"] = n.error;
        nums.push_back(nj);
      }
      l["numeric"] = nums;
      laws.push_back(l);
    }
    j["laws"] = laws;
    j["proved"] = proved;
    j["passed"] = passed;
    j["total"] = outcomes.size();
    j["seconds"] = seconds_since(t0);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& o : outcomes) {
      std::cout << (o.ok() ? "ok    " : "FAIL  ") << o.law->suite << "/" << o.law->name << ": " << o.law->lhs
                << " = " << o.law->rhs << "  [" << to_string(o.symbolic) << "]";
      for (const auto& n : o.numeric) {
        std::cout << "  numeric on " << n.dom << ": " << (n.pass ? "Pass" : "Fail") << " (max " << n.max_error << ")";
        if (!n.error.empty()) std::cout << " error: " << n.error;
      }
      std::cout << "\n";
      if (o.symbolic != Verdict::Proved) {
        std::cout << "      " << o.reason << "\n      lhs nf: " << o.lhs_nf << "\n      rhs nf: " << o.rhs_nf << "\n";
      }
    }
    std::cout << proved << "/" << outcomes.size() << " Proved, " << passed << "/" << outcomes.size()
              << " passed all checks (" << seconds_since(t0) << " s)\n";
  }
  return passed == outcomes.size() ? kOk : kFail;
}

// replay -------------------------------------------------------------------

struct ReplayArgs {
  std::vector<std::string> files;
  bool corpus = false;
  std::optional<std::string> dir;
  bool trace = false;
};

int cmd_replay(const ReplayArgs& a, const Common& c) {
  auto t0 = std::chrono::steady_clock::now();
  Registry reg = Registry::load(c.registry);
  std::vector<std::filesystem::path> files(a.files.begin(), a.files.end());
  if (a.corpus) {
    auto more = corpus_files(a.dir ? std::filesystem::path(*a.dir) : default_corpus_dir());
    files.insert(files.end(), more.begin(), more.end());
  }
  if (files.empty()) throw CLI::ValidationError("replay", "give script files or --corpus");
  ReplayOptions ro;
  if (a.trace) ro.trace = &std::cerr;

  json reports = json::array();
  std::size_t ok = 0;
  for (const auto& f : files) {
    ReplayReport r;
    try {
      r = replay(load_script(f), reg, ro);
    } catch (const Error& e) {
      r.name = f.filename().string();
      r.error = e.what();
      r.error_kind = "ScriptError";
    }
    ok += r.ok;
    if (c.json_out) {
      json steps = json::array();
      for (const auto& s : r.steps)
        steps.push_back({{"index", s.index}, {"rule", s.rule}, {"ok", s.ok}, {"applications", s.applications},
                         {"term", s.term}, {"message", s.message}});
      json j = {{"file", f.string()}, {"name", r.name}, {"verdict", r.ok ? "Pass" : "Fail"}, {"steps", steps},
                {"final_lhs", r.final_lhs}, {"final_rhs", r.final_rhs}};
      if (!r.ok) {
        j["error"] = r.error;
        j["error_kind"] = r.error_kind;
        if (r.failed_step) j["failed_step"] = *r.failed_step;
      }
      reports.push_back(j);
    } else {
      std::cout << (r.ok ? "pass  " : "FAIL  ") << r.name << " (" << r.steps.size() << " steps)";
      if (!r.ok) std::cout << "\n      " << r.error_kind << ": " << r.error;
      std::cout << "\n";
    }
  }
  if (c.json_out) {
    json j = header("replay");
    j["inputs"] = {{"corpus", a.corpus}, {"files", files.size()}};
    j["scripts"] = reports;
    j["passed"] = ok;
    j["total"] = files.size();
    j["seconds"] = seconds_since(t0);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << ok << "/" << files.size() << " scripts replayed\n";
  }
  return ok == files.size() ? kOk : kFail;
}

// rules --------------------------------------------------------------------

int cmd_rules(const Common& c) {
  if (c.json_out) {
    json j = header("rules");
    json rs = json::array();
    for (const auto& r : rule_table())
      rs.push_back({{"id", r.id}, {"group", r.group}, {"lhs", r.lhs}, {"rhs", r.rhs},
                    {"orientation", r.bidirectional() ? "bidirectional" : "left-to-right"},
                    {"side_condition", r.side_condition}});
    j["rules"] = rs;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& r : rule_table()) {
    std::cout << r.id << " [" << r.group << "]  " << r.lhs << (r.bidirectional() ? "  <->  " : "  ->  ") << r.rhs;
    if (!r.side_condition.empty()) std::cout << "   if " << r.side_condition;
    std::cout << "\n";
  }
  return kOk;
}

void report_error(const std::string& kind, const std::string& msg, const Common& c) {
  if (c.json_out) {
    std::cout << json{{"error", kind}, {"message", msg}, {"version", kVersion}}.dump(2) << "\n";
  } else {
    std::cerr << "error: " << msg << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic kernel for cartesian differential categories and the tangent bundle monad"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common common;
  app.add_option("--registry", common.registry, "Generator registry JSON (default: $CDC_REGISTRY, then built-in)");
  app.add_flag("--json", common.json_out, "Emit a JSON report");

  DArgs da;
  auto* d = app.add_subcommand("d", "Differentiate an expression and print the normalized derivative");
  d->add_option("expr", da.expr, "Morphism expression")->required();
  d->add_option("--dom", da.dom, "Domain of the expression");
  d->add_flag("--raw", da.raw, "Print the structural derivative without normalizing");
  d->add_flag("--second", da.second, "Differentiate twice");

  NfArgs na;
  auto* nf = app.add_subcommand("nf", "Normalize an expression");
  nf->add_option("expr", na.expr, "Morphism expression")->required();
  nf->add_option("--dom", na.dom, "Domain of the expression");
  nf->add_option("--fuel", na.fuel, "Step budget");

  EqArgs ea;
  auto* eq = app.add_subcommand("eq", "Decide equality modulo the theory");
  eq->add_option("lhs", ea.lhs)->required();
  eq->add_option("rhs", ea.rhs)->required();
  eq->add_option("--dom", ea.dom, "Common domain");
  eq->add_flag("--numeric", ea.numeric, "Fall back to random-point evaluation");
  eq->add_option("--points", ea.points, "Number of sample points");
  eq->add_option("--seed", ea.seed, "Sampling seed");
  eq->add_option("--tol", ea.tol, "Relative tolerance");

  LawsArgs la;
  auto* laws = app.add_subcommand("laws", "Run a law suite symbolically and numerically");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  laws->add_option("--suite", la.suite, "Suite name")->check(CLI::IsMember(suites));
  laws->add_option("--points", la.points, "Sample points per numeric instance");
  laws->add_option("--seed", la.seed, "Sampling seed");
  laws->add_flag("--symbolic-only", la.symbolic_only, "Skip numeric checks");

  ReplayArgs ra;
  auto* rp = app.add_subcommand("replay", "Replay proof scripts");
  rp->add_option("files", ra.files, "Proof script files");
  rp->add_flag("--corpus", ra.corpus, "Replay every script in the shipped corpus");
  rp->add_option("--dir", ra.dir, "Corpus directory for --corpus");
  rp->add_flag("--trace", ra.trace, "Print every intermediate term to stderr");

  auto* rules = app.add_subcommand("rules", "List the rewrite rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*d) return cmd_d(da, common);
    if (*nf) return cmd_nf(na, common);
    if (*eq) return cmd_eq(ea, common);
    if (*laws) return cmd_laws(la, common);
    if (*rp) return cmd_replay(ra, common);
    if (*rules) return cmd_rules(common);
  } catch (const CLI::ValidationError& e) {
    report_error("UsageError", e.what(), common);
    return kUsage;
  } catch (const ParseError& e) {
    report_error("ParseError", e.what(), common);
    return kUsage;
  } catch (const TypeMismatch& e) {
    report_error("TypeMismatch", e.what(), common);
    return kUsage;
  } catch (const UnknownGenerator& e) {
    report_error("UnknownGenerator", e.what(), common);
    return kUsage;
  } catch (const RegistryError& e) {
    report_error("RegistryError", e.what(), common);
    return kUsage;
  } catch (const Error& e) {
    report_error("Error", e.what(), common);
    return kFail;
  }
  return kUsage;
}
