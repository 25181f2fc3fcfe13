#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdc/euclid/eval.hpp"
#include "cdc/registry.hpp"
#include "cdc/rewrite.hpp"

namespace cdc {

/// A first-order instance of a law, checked in the Euclidean model.
struct NumericInstance {
  std::string lhs, rhs, dom;
  double tol = 1e-12;
};

/// One law of the tangent bundle monad, stated over generic objects.
struct Law {
  std::string suite;  // monad, strength, commutative, distributive, naturality, closed
  std::string name;   // the anchor of the statement it checks
  std::string lhs, rhs;
  std::string dom;  // object of both sides, over generic base objects
  std::vector<NumericInstance> numeric;
};

const std::vector<Law>& law_table();
/// Suites in table order; "all" is accepted by run_suite but not listed.
std::vector<std::string> suite_names();

struct NumericOutcome {
  std::string dom;
  bool pass = false;
  double max_error = 0;
  double tol = 0;
  std::optional<euclid::Witness> witness;
  std::string error;  // non-empty if the instance could not be evaluated
};

struct LawOutcome {
  const Law* law = nullptr;
  Verdict symbolic = Verdict::Unknown;
  std::string reason;
  std::string lhs_nf, rhs_nf;
  std::vector<NumericOutcome> numeric;
  double seconds = 0;
  bool ok() const;
};

struct SuiteOptions {
  std::size_t points = 100;
  std::uint64_t seed = 20240601;
  bool numeric = true;
};

/// Throws Error for an unknown suite name.
std::vector<LawOutcome> run_suite(const std::string& suite, const Registry& reg, const SuiteOptions& opts = {});
LawOutcome run_law(const Law& law, const Registry& reg, const SuiteOptions& opts = {});

}  // namespace cdc
