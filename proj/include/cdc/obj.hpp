#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>

namespace cdc {

/// Object expressions: the unit object, named base spaces carrying a
/// dimension, binary products and exponentials. Immutable, cheap to copy.
class Obj {
 public:
  enum class Kind { Unit, Base, Prod, Exp };

  Obj();  // the unit object

  static Obj unit();
  static Obj base(std::string name, int dim = 1);
  static Obj prod(const Obj& l, const Obj& r);
  static Obj exp(const Obj& arg, const Obj& result);
  /// TX = X x X.
  static Obj tangent(const Obj& x) { return prod(x, x); }

  Kind kind() const;
  bool is_unit() const { return kind() == Kind::Unit; }
  bool is_base() const { return kind() == Kind::Base; }
  bool is_prod() const { return kind() == Kind::Prod; }
  bool is_exp() const { return kind() == Kind::Exp; }

  const std::string& name() const;  // Base only
  int dim() const;                  // Base only
  const Obj& left() const;          // Prod: left factor, Exp: argument
  const Obj& right() const;         // Prod: right factor, Exp: result

  /// True iff the expression contains no exponential.
  bool first_order() const;
  /// True iff the object is terminal up to iso: 1, products of terminals,
  /// or exponentials into a terminal.
  bool terminal() const;
  /// Number of real coordinates of a first-order object.
  std::size_t flat_dim() const;

  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const Obj& a, const Obj& b);
  friend std::strong_ordering operator<=>(const Obj& a, const Obj& b);

 private:
  struct Node;
  explicit Obj(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Parses the object grammar `U | R<n> | Name | (O x O) | (O => O)`.
/// Outer parentheses are optional; `x` binds tighter than `=>`.
Obj parse_obj(const std::string& text);

}  // namespace cdc
