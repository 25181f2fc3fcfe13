#pragma once

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

// Cartesian macros. Each returns its combinator expansion; no new node kinds.
namespace cdc::derived {

/// a : (X x Y) x Z -> X x (Y x Z)
Mor assoc(const Obj& x, const Obj& y, const Obj& z);
/// l : X -> 1 x X
Mor lunit(const Obj& x);
/// r : X -> X x 1
Mor runit(const Obj& x);
/// c : X x Y -> Y x X
Mor sym(const Obj& x, const Obj& y);
/// delta : X -> X x X
Mor diag(const Obj& x);
/// sigma : (A x B) x (C x D) -> (A x C) x (B x D)
Mor shuffle(const Obj& a, const Obj& b, const Obj& c, const Obj& d);
/// f x g = <f o pi1, g o pi2> for f : X -> _, g : U -> _.
Mor times(const Mor& f, const Obj& x, const Mor& g, const Obj& u);
Mor times(const Mor& f, const Mor& g, const Registry& reg);

}  // namespace cdc::derived
