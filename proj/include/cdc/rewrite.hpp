#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cdc/euclid/eval.hpp"
#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

namespace cdc {

struct NormalizeResult {
  Mor term;
  bool exhausted = false;  // fuel ran out; term is the input unchanged
  std::size_t steps = 0;
};

/// Canonical form modulo the equational theory. Sums come out flattened and
/// ordered, pairings fully distributed and projections resolved.
NormalizeResult normalize(const Mor& f, const Registry& reg, std::size_t fuel = 10000);

enum class Verdict { Proved, Refuted, Unknown };
std::string to_string(Verdict v);

struct EqualityOptions {
  bool numeric = true;  // fall back to random-point evaluation
  std::size_t points = 100;
  std::uint64_t seed = 20240601;
  double tol = 1e-9;
  std::size_t fuel = 10000;
};

struct EqualityResult {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::optional<euclid::Witness> witness;
  Mor lhs_nf, rhs_nf;
  double max_error = 0;
};

/// Proved if the canonical forms coincide; otherwise Refuted with a witness
/// when a numeric check on a first-order type finds a disagreement, and
/// Unknown in every other case. Throws TypeMismatch when the types differ.
EqualityResult equal_mod_theory(const Mor& f, const Mor& g, const Registry& reg, const EqualityOptions& opts = {});

}  // namespace cdc
