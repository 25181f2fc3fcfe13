#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cdc/euclid/value.hpp"
#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

namespace cdc::euclid {

/// Denotation in the category of smooth maps between Euclidean spaces.
/// D(f) is evaluated by dual-number propagation, nested at most three deep.
/// Throws ShapeMismatch, MissingBody or HigherOrderUnsupported.
Val eval(const Mor& f, const Val& x, const Registry& reg);

struct DualValue {
  Val tangent, point;
};

/// (J_f(x) x', f(x)) by forward-mode propagation. First-order only.
DualValue pushforward(const Mor& f, const DualValue& in, const Registry& reg);

/// Jacobian by central differences; entry [i][j] is d out_i / d in_j.
std::vector<std::vector<double>> finite_difference(const Mor& f, const Val& x, double h, const Registry& reg);

/// A uniformly random first-order value with coordinates in [lo, hi].
Val random_value(const Obj& o, std::mt19937_64& rng, double lo = -2.0, double hi = 2.0);

/// The zero value of an object; an empty closure at exponentials.
Val zero_value(const Obj& o);

struct Witness {
  Val input, lhs, rhs;
  double error = 0;
};

struct LawResult {
  bool pass = true;
  double max_error = 0;
  std::optional<Witness> witness;
};

/// Samples `points` inputs uniformly from [-2, 2] per coordinate with a
/// seeded generator and compares both sides. The discrepancy at a
/// coordinate is |a - b| / max(1, |a|, |b|).
LawResult law_check(const Mor& lhs, const Mor& rhs, std::size_t points, std::uint64_t seed, double tol,
                    const Registry& reg);

/// Relative discrepancy used by law_check.
double discrepancy(double a, double b);

}  // namespace cdc::euclid
