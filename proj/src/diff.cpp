#include "cdc/diff.hpp"

#include "cdc/errors.hpp"
#include "cdc/tangent.hpp"
#include "cdc/typecheck.hpp"

namespace cdc {

namespace {

using K = Mor::Kind;

class Differentiator {
 public:
  explicit Differentiator(const Registry& reg) : reg_(reg), ty_(reg) {}

  // D applied to f, pushed inward as far as the axioms allow.
  Mor d(const Mor& f) {
    MorType t = ty_(f);
    const Obj& x = t.dom;
    Obj xx = Obj::prod(x, x);
    switch (f.kind()) {
      case K::Id:
        return Mor::proj1(x, x);
      case K::Proj1:
      case K::Proj2:
        return Mor::compose(f, Mor::proj1(x, x));
      case K::Pair:
        return Mor::pair(d(f.first()), d(f.second()));
      case K::Compose: {
        const Mor& g = f.second();
        Obj gd = ty_(g).dom;
        return Mor::compose(d(f.first()), Mor::pair(d(g), Mor::compose(g, Mor::proj2(gd, gd))));
      }
      case K::Zero:
        return Mor::zero(xx, t.cod);
      case K::Bang:
        return Mor::bang(xx);
      case K::Sum:
        return Mor::sum(d(f.first()), d(f.second()));
      case K::Curry: {
        const Obj& z = f.obj1();
        const Obj& a = f.obj2();
        return Mor::curry(Mor::compose(d(f.first()), tangent::costrength(z, a)), Obj::prod(z, z), a);
      }
      case K::Gen: {
        const GenSig& s = reg_.get(f.name());
        if (s.derivative) return *s.derivative;
        if (s.linear) return Mor::compose(f, Mor::proj1(x, x));
        if (s.bilinear) {
          const Obj& a = x.left();
          const Obj& b = x.right();
          auto p1 = Mor::proj1(x, x), p2 = Mor::proj2(x, x);
          auto l = [&](const Mor& p) { return Mor::compose(Mor::proj1(a, b), p); };
          auto r = [&](const Mor& p) { return Mor::compose(Mor::proj2(a, b), p); };
          return Mor::sum(Mor::compose(f, Mor::pair(l(p1), r(p2))), Mor::compose(f, Mor::pair(l(p2), r(p1))));
        }
        return Mor::d(f);
      }
      case K::Ev:
        return Mor::d(f);
      case K::D:
        if (opaque(f.first())) return Mor::d(f);
        return d(d(f.first()));
    }
    throw Error("differentiate: corrupt term");
  }

 private:
  bool opaque(const Mor& f) {
    if (f.is(K::Ev)) return true;
    if (f.is(K::Gen)) {
      const GenSig& s = reg_.get(f.name());
      return !s.derivative && !s.linear && !s.bilinear;
    }
    if (f.is(K::D)) return opaque(f.first());
    return false;
  }

  const Registry& reg_;
  Typer ty_;
};

std::size_t count_d(const Mor& f) {
  switch (f.kind()) {
    case K::D: return 1 + count_d(f.first());
    case K::Pair:
    case K::Compose:
    case K::Sum: return count_d(f.first()) + count_d(f.second());
    case K::Curry: return count_d(f.first());
    default: return 0;
  }
}

bool linear(const Mor& f, const Registry& reg) {
  switch (f.kind()) {
    case K::Id:
    case K::Proj1:
    case K::Proj2:
    case K::Zero:
    case K::Bang:
      return true;
    case K::Gen:
      return reg.get(f.name()).linear;
    case K::Pair:
    case K::Compose:
    case K::Sum:
      return linear(f.first(), reg) && linear(f.second(), reg);
    case K::D:
      // D(f) = f o pi1 for linear f.
      return linear(f.first(), reg);
    case K::Ev:
    case K::Curry:
      return false;
  }
  return false;
}

}  // namespace

DiffResult differentiate(const Mor& f, const Registry& reg) {
  typecheck(f, reg);
  Differentiator d(reg);
  Mor t = d.d(f);
  return {t, count_d(t)};
}

DiffResult second_derivative(const Mor& f, const Registry& reg) {
  Mor once = differentiate(f, reg).term;
  return differentiate(once, reg);
}

bool is_linear(const Mor& f, const Registry& reg) {
  typecheck(f, reg);
  return linear(f, reg);
}

Mor linear_shortcut(const Mor& f, const Registry& reg) {
  if (!is_linear(f, reg)) throw NotLinear("'" + f.str() + "' is not known to be linear");
  MorType t = typecheck(f, reg);
  return Mor::compose(f, Mor::proj1(t.dom, t.dom));
}

}  // namespace cdc
