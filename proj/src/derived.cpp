#include "cdc/derived.hpp"

#include "cdc/typecheck.hpp"

namespace cdc::derived {

Mor assoc(const Obj& x, const Obj& y, const Obj& z) {
  Obj xy = Obj::prod(x, y);
  return Mor::pair(Mor::compose(Mor::proj1(x, y), Mor::proj1(xy, z)),
                   Mor::pair(Mor::compose(Mor::proj2(x, y), Mor::proj1(xy, z)), Mor::proj2(xy, z)));
}

Mor lunit(const Obj& x) { return Mor::pair(Mor::bang(x), Mor::id(x)); }

Mor runit(const Obj& x) { return Mor::pair(Mor::id(x), Mor::bang(x)); }

Mor sym(const Obj& x, const Obj& y) { return Mor::pair(Mor::proj2(x, y), Mor::proj1(x, y)); }

Mor diag(const Obj& x) { return Mor::pair(Mor::id(x), Mor::id(x)); }

Mor shuffle(const Obj& a, const Obj& b, const Obj& c, const Obj& d) {
  Obj ab = Obj::prod(a, b), cd = Obj::prod(c, d);
  auto p1 = Mor::proj1(ab, cd), p2 = Mor::proj2(ab, cd);
  return Mor::pair(Mor::pair(Mor::compose(Mor::proj1(a, b), p1), Mor::compose(Mor::proj1(c, d), p2)),
                   Mor::pair(Mor::compose(Mor::proj2(a, b), p1), Mor::compose(Mor::proj2(c, d), p2)));
}

Mor times(const Mor& f, const Obj& x, const Mor& g, const Obj& u) {
  return Mor::pair(Mor::compose(f, Mor::proj1(x, u)), Mor::compose(g, Mor::proj2(x, u)));
}

Mor times(const Mor& f, const Mor& g, const Registry& reg) {
  Typer ty(reg);
  return times(f, ty(f).dom, g, ty(g).dom);
}

}  // namespace cdc::derived
