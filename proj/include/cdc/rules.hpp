#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"
#include "cdc/typecheck.hpp"

namespace cdc {

enum class Dir { Ltr, Rtl };

struct RuleCtx {
  const Registry& reg;
  Typer& typer;
};

/// One equation of the theory, keyed by the anchor it comes from. The
/// matchers work on right-nested composition chains: a rule at a node
/// f o rest sees f as the head and, for two-element patterns, the first
/// element of rest as the next factor.
struct RewriteRule {
  std::string id;
  std::string group;           // category, cartesian, closed, additive, D, derived
  std::string lhs, rhs;        // display patterns
  std::string side_condition;  // empty when unconditional
  std::function<std::optional<Mor>(const Mor&, RuleCtx&)> ltr;
  std::function<std::optional<Mor>(const Mor&, RuleCtx&)> rtl;  // may be empty

  bool bidirectional() const { return static_cast<bool>(rtl); }
  /// The rewritten node, or nullopt when the rule does not match here.
  std::optional<Mor> apply(const Mor& m, Dir d, RuleCtx& ctx) const;
};

/// All rules in priority order: category and cartesian laws, then the
/// additive laws, then the D axioms, then derived lemmas.
const std::vector<RewriteRule>& rule_table();
/// nullptr if there is no rule with this id.
const RewriteRule* find_rule(const std::string& id);

// Composition chains ---------------------------------------------------------

/// f o g with the result kept right-nested.
Mor chain(const Mor& f, const Mor& g);
/// Re-nests every composition to the right, recursively.
Mor right_assoc(const Mor& m);
/// Flattens sums (at every level), drops zero summands and orders the rest
/// by the total term order. Also right-nests compositions.
Mor ac_canon(const Mor& m, Typer& typer);

}  // namespace cdc
