#pragma once

#include <cstddef>

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

namespace cdc {

struct DiffResult {
  Mor term;
  /// D applications left opaque: on generators without a derivative, on ev,
  /// and on such terms again.
  std::size_t residual_D_nodes = 0;
};

/// Pushes D through the combinators. The output contains only core nodes.
DiffResult differentiate(const Mor& f, const Registry& reg);
/// differentiate applied twice; the domain is (X x X) x (X x X).
DiffResult second_derivative(const Mor& f, const Registry& reg);
/// Conservative: false means unknown.
bool is_linear(const Mor& f, const Registry& reg);
/// f o pi1. Throws NotLinear unless is_linear(f).
Mor linear_shortcut(const Mor& f, const Registry& reg);

}  // namespace cdc
