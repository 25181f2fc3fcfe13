#pragma once

#include <cmath>
#include <cstdint>

namespace cdc::euclid {

/// Forward-mode scalar: value and tangent.
template <class S>
struct Dual {
  S v{}, d{};
};

template <class S>
struct dual_depth {
  static constexpr int value = 0;
};
template <class S>
struct dual_depth<Dual<S>> {
  static constexpr int value = 1 + dual_depth<S>::value;
};

namespace ops {

/// Scalar operations performed by this thread. Only double-level calls are
/// counted; dual arithmetic is built from them, so its cost shows up as
/// the double operations it performs.
inline std::uint64_t& counter() {
  thread_local std::uint64_t n = 0;
  return n;
}

/// Counts the operations performed while it is alive.
class Scope {
 public:
  Scope() : start_(counter()) {}
  std::uint64_t ops() const { return counter() - start_; }

 private:
  std::uint64_t start_;
};

template <class S>
S constant(double c) {
  if constexpr (dual_depth<S>::value == 0) {
    return c;
  } else {
    using In = decltype(S{}.v);
    return S{constant<In>(c), constant<In>(0.0)};
  }
}

inline double add(double a, double b) { ++counter(); return a + b; }
inline double sub(double a, double b) { ++counter(); return a - b; }
inline double mul(double a, double b) { ++counter(); return a * b; }
inline double scale(double c, double a) { ++counter(); return c * a; }
inline double neg(double a) { ++counter(); return -a; }
inline double sin(double a) { ++counter(); return std::sin(a); }
inline double cos(double a) { ++counter(); return std::cos(a); }
inline double exp(double a) { ++counter(); return std::exp(a); }
inline double tanh(double a) { ++counter(); return std::tanh(a); }
inline double square(double a) { ++counter(); return a * a; }

// Declared up front so that nested duals resolve every overload.
template <class S> Dual<S> add(const Dual<S>& a, const Dual<S>& b);
template <class S> Dual<S> sub(const Dual<S>& a, const Dual<S>& b);
template <class S> Dual<S> mul(const Dual<S>& a, const Dual<S>& b);
template <class S> Dual<S> scale(double c, const Dual<S>& a);
template <class S> Dual<S> neg(const Dual<S>& a);
template <class S> Dual<S> sin(const Dual<S>& a);
template <class S> Dual<S> cos(const Dual<S>& a);
template <class S> Dual<S> exp(const Dual<S>& a);
template <class S> Dual<S> tanh(const Dual<S>& a);
template <class S> Dual<S> square(const Dual<S>& a);

template <class S>
Dual<S> add(const Dual<S>& a, const Dual<S>& b) { return {add(a.v, b.v), add(a.d, b.d)}; }
template <class S>
Dual<S> sub(const Dual<S>& a, const Dual<S>& b) { return {sub(a.v, b.v), sub(a.d, b.d)}; }
template <class S>
Dual<S> mul(const Dual<S>& a, const Dual<S>& b) { return {mul(a.v, b.v), add(mul(a.d, b.v), mul(a.v, b.d))}; }
template <class S>
Dual<S> scale(double c, const Dual<S>& a) { return {scale(c, a.v), scale(c, a.d)}; }
template <class S>
Dual<S> neg(const Dual<S>& a) { return {neg(a.v), neg(a.d)}; }
template <class S>
Dual<S> sin(const Dual<S>& a) { return {sin(a.v), mul(cos(a.v), a.d)}; }
template <class S>
Dual<S> cos(const Dual<S>& a) { return {cos(a.v), neg(mul(sin(a.v), a.d))}; }
template <class S>
Dual<S> exp(const Dual<S>& a) {
  S e = exp(a.v);
  return {e, mul(e, a.d)};
}
template <class S>
Dual<S> tanh(const Dual<S>& a) {
  S y = tanh(a.v);
  return {y, mul(sub(constant<S>(1.0), square(y)), a.d)};
}
template <class S>
Dual<S> square(const Dual<S>& a) { return {square(a.v), mul(scale(2.0, a.v), a.d)}; }

}  // namespace ops
}  // namespace cdc::euclid
