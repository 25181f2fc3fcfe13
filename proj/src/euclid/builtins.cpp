#include "cdc/euclid/builtins.hpp"

#include <charconv>
#include <map>

#include "cdc/errors.hpp"

namespace cdc::euclid {

namespace {

const std::map<std::string, BuiltinKind>& plain_kinds() {
  static const std::map<std::string, BuiltinKind> m = {
      {"sin", BuiltinKind::Sin},       {"cos", BuiltinKind::Cos},   {"exp", BuiltinKind::Exp},
      {"tanh", BuiltinKind::Tanh},     {"square", BuiltinKind::Square}, {"cube", BuiltinKind::Cube},
      {"mul", BuiltinKind::Mul},       {"dot", BuiltinKind::Dot},   {"norm2", BuiltinKind::Norm2},
      {"sum", BuiltinKind::Sum},
  };
  return m;
}

std::vector<double> parse_coeffs(const std::string& body, const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    double v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size())
      throw RegistryError("bad coefficient '" + item + "' in builtin '" + body + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Builtin parse_builtin(const std::string& body) {
  if (auto it = plain_kinds().find(body); it != plain_kinds().end()) return {it->second, {}};
  auto colon = body.find(':');
  if (colon != std::string::npos) {
    std::string head = body.substr(0, colon);
    std::string rest = body.substr(colon + 1);
    if (head == "scale") {
      auto c = parse_coeffs(body, rest);
      if (c.size() != 1) throw RegistryError("scale takes exactly one factor: '" + body + "'");
      return {BuiltinKind::Scale, c};
    }
    if (head == "poly") return {BuiltinKind::Poly, parse_coeffs(body, rest)};
  }
  throw RegistryError("unknown builtin '" + body + "'");
}

void check_builtin(const std::string& body, const Obj& dom, const Obj& cod) {
  Builtin b = parse_builtin(body);
  if (!dom.first_order() || !cod.first_order())
    throw RegistryError("builtin '" + body + "' needs first-order objects");
  std::size_t n = dom.flat_dim();
  std::size_t m = cod.flat_dim();
  auto fail = [&](const std::string& why) {
    throw RegistryError("builtin '" + body + "' cannot act on " + dom.str() + " -> " + cod.str() + ": " + why);
  };
  switch (b.kind) {
    case BuiltinKind::Sin:
    case BuiltinKind::Cos:
    case BuiltinKind::Exp:
    case BuiltinKind::Tanh:
    case BuiltinKind::Square:
    case BuiltinKind::Cube:
    case BuiltinKind::Scale:
    case BuiltinKind::Poly:
      if (n != m || n == 0) fail("elementwise builtins keep the dimension");
      break;
    case BuiltinKind::Mul:
      if (n != 2 || m != 1) fail("mul maps two coordinates to one");
      break;
    case BuiltinKind::Dot:
      if (n == 0 || n % 2 != 0 || m != 1) fail("dot needs an even number of inputs and one output");
      break;
    case BuiltinKind::Norm2:
    case BuiltinKind::Sum:
      if (n == 0 || m != 1) fail("reductions map to one coordinate");
      break;
  }
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"sin",  "cos", "exp", "tanh",  "square", "cube",   "scale:<a>",
                                                 "poly:<c0,c1,...>", "mul", "dot", "norm2", "sum"};
  return names;
}

}  // namespace cdc::euclid
