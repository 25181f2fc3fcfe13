#include "cdc/euclid/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdc/euclid/builtins.hpp"
#include "cdc/typecheck.hpp"

namespace cdc::euclid {

namespace {

constexpr int kMaxDualDepth = 3;

template <class S>
Value<S> zero_of(const Obj& o) {
  switch (o.kind()) {
    case Obj::Kind::Unit: return Value<S>::unit();
    case Obj::Kind::Base:
      return Value<S>::scalars(std::vector<S>(static_cast<std::size_t>(o.dim()), ops::constant<S>(0.0)));
    case Obj::Kind::Prod: return Value<S>::pair(zero_of<S>(o.left()), zero_of<S>(o.right()));
    case Obj::Kind::Exp: return Value<S>::closure({});
  }
  return Value<S>::unit();
}

template <class S>
Value<S> add_values(const Value<S>& a, const Value<S>& b) {
  if (a.k != b.k) throw ShapeMismatch("sum of values with different shapes");
  switch (a.k) {
    case Value<S>::K::Unit: return a;
    case Value<S>::K::Scalars: {
      if (a.xs.size() != b.xs.size()) throw ShapeMismatch("sum of vectors with different lengths");
      std::vector<S> r;
      r.reserve(a.xs.size());
      for (std::size_t i = 0; i < a.xs.size(); ++i) r.push_back(ops::add(a.xs[i], b.xs[i]));
      return Value<S>::scalars(std::move(r));
    }
    case Value<S>::K::Pair:
      return Value<S>::pair(add_values(a.first(), b.first()), add_values(a.second(), b.second()));
    case Value<S>::K::Closure: {
      // Pointwise sum of functions: keep both sets of summands.
      auto ps = a.parts;
      ps.insert(ps.end(), b.parts.begin(), b.parts.end());
      return Value<S>::closure(std::move(ps));
    }
  }
  return a;
}

// Packs (tangent, point) into one value over dual scalars.
template <class S>
Value<Dual<S>> lift(const Value<S>& tangent, const Value<S>& point) {
  if (tangent.k != point.k) throw ShapeMismatch("tangent and point have different shapes");
  switch (point.k) {
    case Value<S>::K::Unit: return Value<Dual<S>>::unit();
    case Value<S>::K::Scalars: {
      if (tangent.xs.size() != point.xs.size()) throw ShapeMismatch("tangent and point have different lengths");
      std::vector<Dual<S>> r;
      r.reserve(point.xs.size());
      for (std::size_t i = 0; i < point.xs.size(); ++i) r.push_back({point.xs[i], tangent.xs[i]});
      return Value<Dual<S>>::scalars(std::move(r));
    }
    case Value<S>::K::Pair:
      return Value<Dual<S>>::pair(lift(tangent.first(), point.first()), lift(tangent.second(), point.second()));
    case Value<S>::K::Closure: break;
  }
  throw HigherOrderUnsupported("cannot differentiate at a function-valued point");
}

template <class S>
void split(const Value<Dual<S>>& v, Value<S>* tangent, Value<S>* point) {
  switch (v.k) {
    case Value<Dual<S>>::K::Unit:
      if (tangent) *tangent = Value<S>::unit();
      if (point) *point = Value<S>::unit();
      return;
    case Value<Dual<S>>::K::Scalars: {
      std::vector<S> t, p;
      for (const auto& x : v.xs) {
        t.push_back(x.d);
        p.push_back(x.v);
      }
      if (tangent) *tangent = Value<S>::scalars(std::move(t));
      if (point) *point = Value<S>::scalars(std::move(p));
      return;
    }
    case Value<Dual<S>>::K::Pair: {
      Value<S> t1, p1, t2, p2;
      split(v.first(), tangent ? &t1 : nullptr, point ? &p1 : nullptr);
      split(v.second(), tangent ? &t2 : nullptr, point ? &p2 : nullptr);
      if (tangent) *tangent = Value<S>::pair(std::move(t1), std::move(t2));
      if (point) *point = Value<S>::pair(std::move(p1), std::move(p2));
      return;
    }
    case Value<Dual<S>>::K::Closure: break;
  }
  throw HigherOrderUnsupported("derivative of a function-valued map");
}

template <class S>
Value<S> run(const Mor& f, const Value<S>& x, const Registry& reg);

template <class S>
Value<S> apply_gen(const GenSig& g, const Value<S>& x) {
  if (g.body.empty()) throw MissingBody(g.name);
  Builtin b = parse_builtin(g.body);
  std::vector<S> in = flatten(x);
  return unflatten(g.cod, apply_builtin(b, in));
}

template <class S>
Value<S> run_d(const Mor& inner, const Value<S>& x, const Registry& reg) {
  if constexpr (dual_depth<S>::value >= kMaxDualDepth) {
    throw HigherOrderUnsupported("derivatives nested more than " + std::to_string(kMaxDualDepth) + " deep");
  } else {
    if (x.k != Value<S>::K::Pair) throw ShapeMismatch("D(f) expects a (tangent, point) pair");
    Value<Dual<S>> y = run(inner, lift(x.first(), x.second()), reg);
    Value<S> t;
    split<S>(y, &t, nullptr);
    return t;
  }
}

template <class S>
Value<S> run(const Mor& f, const Value<S>& x, const Registry& reg) {
  using K = Mor::Kind;
  switch (f.kind()) {
    case K::Id: return x;
    case K::Proj1:
    case K::Proj2:
      if (x.k != Value<S>::K::Pair) throw ShapeMismatch("projection of a non-pair value");
      return f.is(K::Proj1) ? x.first() : x.second();
    case K::Pair: return Value<S>::pair(run(f.first(), x, reg), run(f.second(), x, reg));
    case K::Compose: return run(f.first(), run(f.second(), x, reg), reg);
    case K::Zero: return zero_of<S>(f.obj2());
    case K::Sum: return add_values(run(f.first(), x, reg), run(f.second(), x, reg));
    case K::Bang: return Value<S>::unit();
    case K::Curry:
      return Value<S>::closure({ClosurePart<S>{f.first(), std::make_shared<const Value<S>>(x)}});
    case K::Ev: {
      if (x.k != Value<S>::K::Pair || x.first().k != Value<S>::K::Closure)
        throw ShapeMismatch("ev expects a (closure, argument) pair");
      const auto& parts = x.first().parts;
      if (parts.empty()) return zero_of<S>(f.obj2());
      Value<S> acc = run(parts[0].body, Value<S>::pair(*parts[0].env, x.second()), reg);
      for (std::size_t i = 1; i < parts.size(); ++i)
        acc = add_values(acc, run(parts[i].body, Value<S>::pair(*parts[i].env, x.second()), reg));
      return acc;
    }
    case K::Gen: return apply_gen(reg.get(f.name()), x);
    case K::D: return run_d(f.first(), x, reg);
  }
  throw Error("unreachable morphism kind");
}

void require_first_order(const MorType& t, const char* what) {
  if (!t.dom.first_order() || !t.cod.first_order())
    throw HigherOrderUnsupported(std::string(what) + " needs first-order objects, got " + t.str());
}

void show_into(const Val& v, std::ostringstream& os) {
  switch (v.k) {
    case Val::K::Unit: os << "()"; return;
    case Val::K::Scalars:
      if (v.xs.size() == 1) {
        os << v.xs[0];
        return;
      }
      os << "[";
      for (std::size_t i = 0; i < v.xs.size(); ++i) os << (i ? ", " : "") << v.xs[i];
      os << "]";
      return;
    case Val::K::Pair:
      os << "(";
      show_into(v.first(), os);
      os << ", ";
      show_into(v.second(), os);
      os << ")";
      return;
    case Val::K::Closure: os << "<closure/" << v.parts.size() << ">"; return;
  }
}

}  // namespace

std::string show(const Val& v) {
  std::ostringstream os;
  os.precision(17);
  show_into(v, os);
  return os.str();
}

Val zero_value(const Obj& o) { return zero_of<double>(o); }

Val eval(const Mor& f, const Val& x, const Registry& reg) {
  MorType t = typecheck(f, reg);
  if (!matches(x, t.dom)) throw ShapeMismatch("input does not match " + t.dom.str());
  Val y = run(f, x, reg);
  if (!matches(y, t.cod)) throw ShapeMismatch("output does not match " + t.cod.str());
  return y;
}

DualValue pushforward(const Mor& f, const DualValue& in, const Registry& reg) {
  MorType t = typecheck(f, reg);
  require_first_order(t, "pushforward");
  if (!matches(in.point, t.dom) || !matches(in.tangent, t.dom))
    throw ShapeMismatch("dual input does not match " + t.dom.str());
  Value<Dual<double>> y = run(f, lift(in.tangent, in.point), reg);
  DualValue out;
  split<double>(y, &out.tangent, &out.point);
  return out;
}

std::vector<std::vector<double>> finite_difference(const Mor& f, const Val& x, double h, const Registry& reg) {
  if (!(h > 0)) throw Error("finite difference step must be positive");
  MorType t = typecheck(f, reg);
  require_first_order(t, "finite_difference");
  if (!matches(x, t.dom)) throw ShapeMismatch("input does not match " + t.dom.str());
  std::vector<double> base = flatten(x);
  std::size_t m = t.cod.flat_dim();
  std::vector<std::vector<double>> jac(m, std::vector<double>(base.size(), 0.0));
  for (std::size_t j = 0; j < base.size(); ++j) {
    auto hi = base, lo = base;
    hi[j] += h;
    lo[j] -= h;
    auto yh = flatten(run(f, unflatten(t.dom, hi), reg));
    auto yl = flatten(run(f, unflatten(t.dom, lo), reg));
    for (std::size_t i = 0; i < m; ++i) jac[i][j] = (yh[i] - yl[i]) / (2 * h);
  }
  return jac;
}

Val random_value(const Obj& o, std::mt19937_64& rng, double lo, double hi) {
  if (!o.first_order()) throw HigherOrderUnsupported("cannot sample " + o.str());
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> xs(o.flat_dim());
  for (auto& v : xs) v = dist(rng);
  return unflatten(o, xs);
}

double discrepancy(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b) ? 0.0 : INFINITY;
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

LawResult law_check(const Mor& lhs, const Mor& rhs, std::size_t points, std::uint64_t seed, double tol,
                    const Registry& reg) {
  MorType tl = typecheck(lhs, reg);
  MorType tr = typecheck(rhs, reg);
  if (!(tl == tr)) throw TypeMismatch(rhs.str(), tl.str(), tr.str(), "law sides disagree");
  require_first_order(tl, "law_check");
  std::mt19937_64 rng(seed);
  LawResult res;
  for (std::size_t p = 0; p < points; ++p) {
    Val x = random_value(tl.dom, rng);
    Val a = run(lhs, x, reg);
    Val b = run(rhs, x, reg);
    auto fa = flatten(a), fb = flatten(b);
    double worst = 0;
    for (std::size_t i = 0; i < fa.size(); ++i) worst = std::max(worst, discrepancy(fa[i], fb[i]));
    if (worst > res.max_error) res.max_error = worst;
    if (worst > tol && (!res.witness || worst > res.witness->error)) {
      res.pass = false;
      res.witness = Witness{x, a, b, worst};
    }
  }
  return res;
}

}  // namespace cdc::euclid
