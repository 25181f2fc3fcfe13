#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"
#include "cdc/rules.hpp"

namespace cdc {

enum class Side { Lhs, Rhs };

/// One rewrite. The redex is chosen by `path` (child indexes: 0/1 into
/// Pair, Compose and Sum, 0 into Curry and D), or by `at` (the printed
/// subterm), or else it is the first node in pre-order where the rule
/// matches. With `all` the rule is applied everywhere until it no longer
/// changes anything. Compositions are kept right-nested throughout, so
/// associativity is never a step of its own.
struct ProofStep {
  std::string rule;
  Dir dir = Dir::Ltr;
  std::optional<std::vector<int>> path;
  std::optional<std::string> at;
  bool all = false;
  Side side = Side::Lhs;
  std::optional<std::string> expect;  // printed form of the side afterwards
  std::string note;
};

/// A proof transcription. Both sides are rewritten by their own steps; the
/// proof succeeds when they meet.
struct ProofScript {
  std::string name;
  std::string lhs, rhs;
  std::optional<std::string> dom, cod;
  std::vector<ProofStep> steps;
};

struct StepResult {
  std::size_t index = 0;
  std::string rule;
  bool ok = false;
  std::size_t applications = 0;
  std::string term;     // the rewritten side
  Mor value;            // the same, as a term
  Side side = Side::Lhs;
  std::string message;  // empty on success
};

struct ReplayReport {
  std::string name;
  bool ok = false;
  std::vector<StepResult> steps;
  std::string final_lhs, final_rhs;
  Mor initial_lhs, initial_rhs;  // both sides as parsed, before any step
  std::string error;                    // empty on success
  std::string error_kind;               // StepMismatch, PathInvalid, FinalMismatch, ...
  std::optional<std::size_t> failed_step;
};

struct ReplayOptions {
  std::ostream* trace = nullptr;  // prints every intermediate term
};

ProofScript parse_script(const std::string& json_text);
ProofScript load_script(const std::filesystem::path& file);

/// Replays a script and reports every step; stops at the first failure.
ReplayReport replay(const ProofScript& script, const Registry& reg, const ReplayOptions& opts = {});

/// As replay, but throws StepMismatch or PathInvalid on the failing step.
ReplayReport replay_or_throw(const ProofScript& script, const Registry& reg);

/// Sorted list of *.json files in a corpus directory.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

/// The shipped proof corpus.
std::filesystem::path default_corpus_dir();

}  // namespace cdc
