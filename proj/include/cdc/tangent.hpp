#pragma once

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

// The tangent bundle monad and its companions, all as macro expansions into
// core terms. Objects are passed explicitly; TX is always X x X.
namespace cdc::tangent {

Obj T(const Obj& x);

/// T(f) = <D(f), f o pi2> with D left symbolic. f : X -> Y.
Mor T_sym(const Mor& f, const Obj& x);
/// T(f) with D(f) pushed inward by the differentiator.
Mor T_mor(const Mor& f, const Registry& reg);
/// f x f, which equals T(f) whenever f is linear.
Mor T_linear(const Mor& f, const Registry& reg);

/// eta : X -> TX
Mor eta(const Obj& x);
/// mu : TTX -> TX
Mor mu(const Obj& x);
/// t : X x TY -> T(X x Y)
Mor strength(const Obj& x, const Obj& y);
/// t' : TX x Y -> T(X x Y), in pairing form.
Mor costrength(const Obj& x, const Obj& y);
/// mu o T(t) o t' : TX x TY -> T(X x Y)
Mor psi(const Obj& x, const Obj& y);
/// mu o T(t') o t : TX x TY -> T(X x Y)
Mor psi_tilde(const Obj& x, const Obj& y);
/// <pi1 x pi1, pi2 x pi2> : T(X x Y) -> TX x TY
Mor psi_inv(const Obj& x, const Obj& y);
/// The shuffle sigma at X x X, as a map TTX -> TTX.
Mor sigma_law(const Obj& x);
/// curry(T(ev) o psi) : T(X => Y) -> (TX => TY)
Mor psi_hat(const Obj& x, const Obj& y);
/// curry(T(ev) o t) : (X => Y) -> (TX => TY)
Mor underline_T(const Obj& x, const Obj& y);
/// <curry(pi1 o h), curry(pi2 o h)> with h = T(g) o t', for g : A x B -> C.
Mor T_curry(const Mor& g, const Registry& reg);

// Whiskered forms used by the monad and distributive-law diagrams.
Mor eta_T(const Obj& x);    // eta at TX
Mor T_eta(const Obj& x);    // T(eta_X)
Mor mu_T(const Obj& x);     // mu at TX
Mor T_mu(const Obj& x);     // T(mu_X)
Mor sigma_T(const Obj& x);  // sigma at TX
Mor T_sigma(const Obj& x);  // T(sigma_X)

}  // namespace cdc::tangent
