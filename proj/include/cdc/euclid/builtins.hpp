#pragma once

#include <string>
#include <vector>

#include "cdc/euclid/ops.hpp"
#include "cdc/obj.hpp"

namespace cdc::euclid {

enum class BuiltinKind { Sin, Cos, Exp, Tanh, Square, Cube, Scale, Poly, Mul, Dot, Norm2, Sum };

/// A compiled-in smooth function on flat coordinate vectors.
struct Builtin {
  BuiltinKind kind;
  std::vector<double> coeffs;  // Scale: {a}. Poly: c0, c1, ...
};

/// Parses a body name such as "sin", "scale:2" or "poly:1,0,3".
Builtin parse_builtin(const std::string& body);

/// Throws RegistryError unless the builtin can act on dom -> cod.
void check_builtin(const std::string& body, const Obj& dom, const Obj& cod);

/// Names of all builtin families, for documentation and tests.
const std::vector<std::string>& builtin_names();

/// Applies a builtin to the flattened input coordinates.
template <class S>
std::vector<S> apply_builtin(const Builtin& b, const std::vector<S>& x) {
  std::vector<S> y;
  switch (b.kind) {
    case BuiltinKind::Sin:
      for (const auto& v : x) y.push_back(ops::sin(v));
      break;
    case BuiltinKind::Cos:
      for (const auto& v : x) y.push_back(ops::cos(v));
      break;
    case BuiltinKind::Exp:
      for (const auto& v : x) y.push_back(ops::exp(v));
      break;
    case BuiltinKind::Tanh:
      for (const auto& v : x) y.push_back(ops::tanh(v));
      break;
    case BuiltinKind::Square:
      for (const auto& v : x) y.push_back(ops::square(v));
      break;
    case BuiltinKind::Cube:
      for (const auto& v : x) y.push_back(ops::mul(ops::square(v), v));
      break;
    case BuiltinKind::Scale:
      for (const auto& v : x) y.push_back(ops::scale(b.coeffs[0], v));
      break;
    case BuiltinKind::Poly:
      for (const auto& v : x) {
        // Horner evaluation from the leading coefficient down.
        S acc = ops::constant<S>(b.coeffs.back());
        for (std::size_t i = b.coeffs.size() - 1; i-- > 0;) acc = ops::add(ops::mul(acc, v), ops::constant<S>(b.coeffs[i]));
        y.push_back(acc);
      }
      break;
    case BuiltinKind::Mul:
      y.push_back(ops::mul(x[0], x[1]));
      break;
    case BuiltinKind::Dot: {
      std::size_t n = x.size() / 2;
      S acc = ops::mul(x[0], x[n]);
      for (std::size_t i = 1; i < n; ++i) acc = ops::add(acc, ops::mul(x[i], x[n + i]));
      y.push_back(acc);
      break;
    }
    case BuiltinKind::Norm2: {
      S acc = ops::square(x[0]);
      for (std::size_t i = 1; i < x.size(); ++i) acc = ops::add(acc, ops::square(x[i]));
      y.push_back(acc);
      break;
    }
    case BuiltinKind::Sum: {
      S acc = x[0];
      for (std::size_t i = 1; i < x.size(); ++i) acc = ops::add(acc, x[i]);
      y.push_back(acc);
      break;
    }
  }
  return y;
}

}  // namespace cdc::euclid
