#include "cdc/typecheck.hpp"

#include "cdc/errors.hpp"

namespace cdc {

namespace {

[[noreturn]] void mismatch(const Mor& at, const Obj& expected, const Obj& actual, const char* what) {
  throw TypeMismatch(at.str(), expected.str(), actual.str(), what);
}

}  // namespace

MorType Typer::operator()(const Mor& f) {
  auto it = memo_.find(f.identity());
  if (it != memo_.end()) return it->second.second;
  MorType t = compute(f);
  memo_.emplace(f.identity(), std::make_pair(f, t));
  return t;
}

MorType Typer::compute(const Mor& f) {
  using K = Mor::Kind;
  switch (f.kind()) {
    case K::Id:
      return {f.obj1(), f.obj1()};
    case K::Proj1:
      return {Obj::prod(f.obj1(), f.obj2()), f.obj1()};
    case K::Proj2:
      return {Obj::prod(f.obj1(), f.obj2()), f.obj2()};
    case K::Zero:
      return {f.obj1(), f.obj2()};
    case K::Bang:
      return {f.obj1(), Obj::unit()};
    case K::Ev:
      return {Obj::prod(Obj::exp(f.obj1(), f.obj2()), f.obj1()), f.obj2()};
    case K::Gen: {
      const GenSig& s = reg_.get(f.name());
      return {s.dom, s.cod};
    }
    case K::Pair: {
      MorType a = (*this)(f.first()), b = (*this)(f.second());
      if (!(a.dom == b.dom)) mismatch(f, a.dom, b.dom, "pairing components disagree on domain");
      return {a.dom, Obj::prod(a.cod, b.cod)};
    }
    case K::Compose: {
      MorType a = (*this)(f.first()), b = (*this)(f.second());
      if (!(a.dom == b.cod)) mismatch(f, a.dom, b.cod, "composition boundary");
      return {b.dom, a.cod};
    }
    case K::Sum: {
      MorType a = (*this)(f.first()), b = (*this)(f.second());
      if (!(a.dom == b.dom)) mismatch(f, a.dom, b.dom, "summands disagree on domain");
      if (!(a.cod == b.cod)) mismatch(f, a.cod, b.cod, "summands disagree on codomain");
      return a;
    }
    case K::Curry: {
      MorType a = (*this)(f.first());
      Obj want = Obj::prod(f.obj1(), f.obj2());
      if (!(a.dom == want)) mismatch(f, want, a.dom, "curry body domain");
      return {f.obj1(), Obj::exp(f.obj2(), a.cod)};
    }
    case K::D: {
      MorType a = (*this)(f.first());
      return {Obj::prod(a.dom, a.dom), a.cod};
    }
  }
  throw Error("typecheck: corrupt term");
}

MorType typecheck(const Mor& f, const Registry& reg) {
  Typer t(reg);
  return t(f);
}

}  // namespace cdc
