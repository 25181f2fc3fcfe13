#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>

#include "cdc/obj.hpp"

namespace cdc {

/// Morphism terms over the core combinators. Every node carries enough
/// object annotations that its domain and codomain follow from the node and
/// its children alone (see typecheck). Terms are immutable and may share
/// subterms.
class Mor {
 public:
  enum class Kind { Id, Proj1, Proj2, Pair, Compose, Zero, Sum, Bang, Ev, Curry, Gen, D };

  /// An empty handle; only valid as a placeholder.
  Mor() = default;
  explicit operator bool() const { return n_ != nullptr; }

  static Mor id(const Obj& x);
  static Mor proj1(const Obj& l, const Obj& r);
  static Mor proj2(const Obj& l, const Obj& r);
  static Mor pair(const Mor& f, const Mor& g);
  /// f o g: first g, then f.
  static Mor compose(const Mor& f, const Mor& g);
  /// 0 : dom -> cod. Into the unit object this is !_dom.
  static Mor zero(const Obj& dom, const Obj& cod);
  static Mor sum(const Mor& f, const Mor& g);
  static Mor bang(const Obj& dom);
  /// ev : (arg => result) x arg -> result.
  static Mor ev(const Obj& arg, const Obj& result);
  /// curry(f) : dom -> (arg => Y) for f : dom x arg -> Y.
  static Mor curry(const Mor& f, const Obj& dom, const Obj& arg);
  static Mor gen(std::string name);
  static Mor d(const Mor& f);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  /// Children: Pair/Compose/Sum use both, Curry/D use first().
  const Mor& first() const;
  const Mor& second() const;
  /// Object annotations. Id: obj1. Proj1/Proj2: obj1 x obj2. Zero:
  /// obj1 -> obj2. Bang: obj1. Ev: obj1 => obj2. Curry: dom obj1, arg obj2.
  const Obj& obj1() const;
  const Obj& obj2() const;
  const std::string& name() const;

  std::size_t hash() const;
  std::size_t size() const;
  const void* identity() const { return n_.get(); }

  /// Surface syntax in the expression grammar, without annotations.
  std::string str() const;
  /// Surface syntax with a domain annotation on every leaf, re-parseable.
  std::string str_annotated() const;

  friend bool operator==(const Mor& a, const Mor& b);
  friend std::strong_ordering operator<=>(const Mor& a, const Mor& b);

 private:
  struct Node;
  explicit Mor(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Mor make(Kind k, const Mor* a, const Mor* b, const Obj* o1, const Obj* o2, std::string name);
  std::shared_ptr<const Node> n_;
};

/// True iff the two terms are identical trees (no theory reasoning).
inline bool structural_eq(const Mor& f, const Mor& g) { return f == g; }

struct MorHash {
  std::size_t operator()(const Mor& m) const { return m.hash(); }
};

}  // namespace cdc
