#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cdc/errors.hpp"
#include "cdc/mor.hpp"
#include "cdc/obj.hpp"

namespace cdc::euclid {

template <class S>
struct Value;

/// One summand of a closure: body applied to (env, argument).
template <class S>
struct ClosurePart {
  Mor body;
  std::shared_ptr<const Value<S>> env;
};

/// Runtime value. Scalars at base objects, nested pairs at products, and
/// defunctionalised closures at exponentials. A closure is a formal sum of
/// parts so that pointwise addition of functions stays exact.
template <class S>
struct Value {
  enum class K { Unit, Scalars, Pair, Closure };
  K k = K::Unit;
  std::vector<S> xs;
  std::vector<Value> kids;
  std::vector<ClosurePart<S>> parts;

  static Value unit() { return {}; }
  static Value scalars(std::vector<S> v) {
    Value r;
    r.k = K::Scalars;
    r.xs = std::move(v);
    return r;
  }
  static Value pair(Value a, Value b) {
    Value r;
    r.k = K::Pair;
    r.kids.push_back(std::move(a));
    r.kids.push_back(std::move(b));
    return r;
  }
  static Value closure(std::vector<ClosurePart<S>> ps) {
    Value r;
    r.k = K::Closure;
    r.parts = std::move(ps);
    return r;
  }
  const Value& first() const { return kids.at(0); }
  const Value& second() const { return kids.at(1); }
};

using Val = Value<double>;

/// True iff the shape of v matches o exactly.
template <class S>
bool matches(const Value<S>& v, const Obj& o) {
  switch (o.kind()) {
    case Obj::Kind::Unit: return v.k == Value<S>::K::Unit;
    case Obj::Kind::Base: return v.k == Value<S>::K::Scalars && v.xs.size() == static_cast<std::size_t>(o.dim());
    case Obj::Kind::Prod:
      return v.k == Value<S>::K::Pair && matches(v.first(), o.left()) && matches(v.second(), o.right());
    case Obj::Kind::Exp: return v.k == Value<S>::K::Closure;
  }
  return false;
}

/// Coordinates of a first-order value, left to right.
template <class S>
void flatten_into(const Value<S>& v, std::vector<S>& out) {
  switch (v.k) {
    case Value<S>::K::Unit: break;
    case Value<S>::K::Scalars: out.insert(out.end(), v.xs.begin(), v.xs.end()); break;
    case Value<S>::K::Pair:
      flatten_into(v.first(), out);
      flatten_into(v.second(), out);
      break;
    case Value<S>::K::Closure: throw HigherOrderUnsupported("closure value has no coordinates");
  }
}

template <class S>
std::vector<S> flatten(const Value<S>& v) {
  std::vector<S> out;
  flatten_into(v, out);
  return out;
}

template <class S>
Value<S> unflatten(const Obj& o, const std::vector<S>& xs, std::size_t& pos) {
  switch (o.kind()) {
    case Obj::Kind::Unit: return Value<S>::unit();
    case Obj::Kind::Base: {
      std::size_t n = static_cast<std::size_t>(o.dim());
      if (pos + n > xs.size()) throw ShapeMismatch("too few coordinates for " + o.str());
      std::vector<S> v(xs.begin() + static_cast<std::ptrdiff_t>(pos), xs.begin() + static_cast<std::ptrdiff_t>(pos + n));
      pos += n;
      return Value<S>::scalars(std::move(v));
    }
    case Obj::Kind::Prod: {
      Value<S> a = unflatten(o.left(), xs, pos);
      Value<S> b = unflatten(o.right(), xs, pos);
      return Value<S>::pair(std::move(a), std::move(b));
    }
    case Obj::Kind::Exp: throw HigherOrderUnsupported("cannot build a closure from coordinates");
  }
  return Value<S>::unit();
}

template <class S>
Value<S> unflatten(const Obj& o, const std::vector<S>& xs) {
  std::size_t pos = 0;
  Value<S> v = unflatten(o, xs, pos);
  if (pos != xs.size()) throw ShapeMismatch("too many coordinates for " + o.str());
  return v;
}

/// Renders a first-order value as nested tuples, e.g. ((1, 2), 3).
std::string show(const Val& v);

}  // namespace cdc::euclid
