#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

namespace cdc {

/// Optional constraints on the type of a parsed expression.
struct ParseOptions {
  std::optional<Obj> dom, cod;
};

/// Parses the expression grammar
///
///   mor ::= id | pi1 | pi2 | 0 | ! | ev | <mor, mor> | mor o mor | mor + mor
///         | mor x mor | curry(mor) | D(mor) | T(mor) | macro | generator
///         | mor : Obj | mor : Obj -> Obj
///
/// with `+` loosest, then right-associative `o`, then `x`. Annotations are
/// postfix on atoms and give the domain (and optionally the codomain).
/// Types are inferred by unification; anything left open becomes a fresh
/// base object of dimension 1. Macros (eta, mu, t, t', psi, sigma, ...)
/// expand into core terms.
Mor parse_mor(const std::string& text, const Registry& reg, const ParseOptions& opts = {});

/// Parses several expressions under the constraint that they share one type.
std::vector<Mor> parse_same_type(const std::vector<std::string>& texts, const Registry& reg,
                                 const ParseOptions& opts = {});

/// Macro names recognised by the parser.
const std::vector<std::string>& macro_names();

}  // namespace cdc
