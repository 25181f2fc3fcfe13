#include "cdc/tangent.hpp"

#include "cdc/derived.hpp"
#include "cdc/diff.hpp"
#include "cdc/errors.hpp"
#include "cdc/typecheck.hpp"

namespace cdc::tangent {

namespace {

Mor c(const Mor& f, const Mor& g) { return Mor::compose(f, g); }

}  // namespace

Obj T(const Obj& x) { return Obj::prod(x, x); }

Mor T_sym(const Mor& f, const Obj& x) { return Mor::pair(Mor::d(f), c(f, Mor::proj2(x, x))); }

Mor T_mor(const Mor& f, const Registry& reg) {
  MorType t = typecheck(f, reg);
  return Mor::pair(differentiate(f, reg).term, c(f, Mor::proj2(t.dom, t.dom)));
}

Mor T_linear(const Mor& f, const Registry& reg) {
  MorType t = typecheck(f, reg);
  return derived::times(f, t.dom, f, t.dom);
}

Mor eta(const Obj& x) { return Mor::pair(Mor::zero(x, x), Mor::id(x)); }

Mor mu(const Obj& x) {
  Obj tx = T(x);
  auto p11 = c(Mor::proj1(x, x), Mor::proj1(tx, tx));
  auto p21 = c(Mor::proj2(x, x), Mor::proj1(tx, tx));
  auto p12 = c(Mor::proj1(x, x), Mor::proj2(tx, tx));
  auto p22 = c(Mor::proj2(x, x), Mor::proj2(tx, tx));
  return Mor::pair(Mor::sum(p21, p12), p22);
}

Mor strength(const Obj& x, const Obj& y) {
  Obj ty = T(y);
  auto p1 = Mor::proj1(x, ty);
  auto p2 = Mor::proj2(x, ty);
  return Mor::pair(Mor::pair(Mor::zero(Obj::prod(x, ty), x), c(Mor::proj1(y, y), p2)),
                   Mor::pair(p1, c(Mor::proj2(y, y), p2)));
}

Mor costrength(const Obj& x, const Obj& y) {
  Obj tx = T(x);
  auto p1 = Mor::proj1(tx, y);
  auto p2 = Mor::proj2(tx, y);
  return Mor::pair(Mor::pair(c(Mor::proj1(x, x), p1), Mor::zero(Obj::prod(tx, y), y)),
                   Mor::pair(c(Mor::proj2(x, x), p1), p2));
}

Mor psi(const Obj& x, const Obj& y) {
  Obj xy = Obj::prod(x, y);
  return c(mu(xy), c(T_sym(strength(x, y), Obj::prod(x, T(y))), costrength(x, T(y))));
}

Mor psi_tilde(const Obj& x, const Obj& y) {
  Obj xy = Obj::prod(x, y);
  return c(mu(xy), c(T_sym(costrength(x, y), Obj::prod(T(x), y)), strength(T(x), y)));
}

Mor psi_inv(const Obj& x, const Obj& y) {
  Obj xy = Obj::prod(x, y);
  return Mor::pair(derived::times(Mor::proj1(x, y), xy, Mor::proj1(x, y), xy),
                   derived::times(Mor::proj2(x, y), xy, Mor::proj2(x, y), xy));
}

Mor sigma_law(const Obj& x) { return derived::shuffle(x, x, x, x); }

Mor psi_hat(const Obj& x, const Obj& y) {
  Obj fx = Obj::exp(x, y);
  Mor tev = T_sym(Mor::ev(x, y), Obj::prod(fx, x));
  return Mor::curry(c(tev, psi(fx, x)), T(fx), T(x));
}

Mor underline_T(const Obj& x, const Obj& y) {
  Obj fx = Obj::exp(x, y);
  Mor tev = T_sym(Mor::ev(x, y), Obj::prod(fx, x));
  return Mor::curry(c(tev, strength(fx, x)), fx, T(x));
}

Mor T_curry(const Mor& g, const Registry& reg) {
  MorType t = typecheck(g, reg);
  if (!t.dom.is_prod())
    throw TypeMismatch(g.str(), "A x B", t.dom.str(), "T_curry needs a morphism out of a product");
  const Obj& a = t.dom.left();
  const Obj& b = t.dom.right();
  const Obj& cc = t.cod;
  Mor h = c(T_mor(g, reg), costrength(a, b));
  return Mor::pair(Mor::curry(c(Mor::proj1(cc, cc), h), T(a), b), Mor::curry(c(Mor::proj2(cc, cc), h), T(a), b));
}

Mor eta_T(const Obj& x) { return eta(T(x)); }
Mor T_eta(const Obj& x) { return T_sym(eta(x), x); }
Mor mu_T(const Obj& x) { return mu(T(x)); }
Mor T_mu(const Obj& x) { return T_sym(mu(x), T(T(x))); }
Mor sigma_T(const Obj& x) { return sigma_law(T(x)); }
Mor T_sigma(const Obj& x) { return T_sym(sigma_law(x), T(T(x))); }

}  // namespace cdc::tangent
