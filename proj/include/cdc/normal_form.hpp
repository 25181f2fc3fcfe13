#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "cdc/errors.hpp"
#include "cdc/mor.hpp"
#include "cdc/registry.hpp"
#include "cdc/typecheck.hpp"

namespace cdc {

class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(std::size_t fuel)
      : Error("normalization fuel exhausted after " + std::to_string(fuel) + " steps") {}
};

namespace nbe {

// Semantic values for normalization by evaluation. A value of type A in
// context G stands for a morphism G -> A and is always eta-long:
//
//   terminal A      Unit
//   A = B x C       Pair(value of B, value of C)
//   A base          Sum of neutrals, kept as a sorted multiset
//   A = X => Y      Lam(value of Y in context G x X)
//
// Neutrals are stuck applications whose result type is base or exponential:
// a context projection, a jet g^(k)(p)[t1..tk] of a generator, or a jet of
// an opaque function value F^(k)(x)[y1..yk]. Jets are symmetric and
// multilinear in their tangents, which are single-neutral monomials kept in
// sorted order. That encodes the differential axioms directly.

struct Nf;
struct Ne;
using NfP = std::shared_ptr<const Nf>;
using NeP = std::shared_ptr<const Ne>;
using Path = std::vector<std::uint8_t>;

struct Nf {
  enum class K : std::uint8_t { Unit, Pair, Sum, Lam };
  K k = K::Unit;
  NfP a, b;                // Pair: both. Lam: a is the body.
  std::vector<NeP> ns;     // Sum
  NeP eta;                 // Lam built by eta-expanding this neutral
  std::size_t hash = 0;
};

struct Ne {
  enum class K : std::uint8_t { Var, Atom, Fun };
  K k = K::Var;
  std::string gen;         // Atom
  NfP point;               // Atom, Fun
  std::vector<NfP> tans;   // Atom, Fun
  NeP fn;                  // Fun: the function value, of type X => Y
  Path path;               // Var: into the context. Atom/Fun: into the result.
  Obj ty;                  // type after following path
  std::size_t hash = 0;
};

int compare(const Nf& a, const Nf& b);
int compare(const Ne& a, const Ne& b);
inline bool equal(const NfP& a, const NfP& b) { return a == b || (a->hash == b->hash && compare(*a, *b) == 0); }

/// Evaluates morphisms into values, differentiates values, and reads values
/// back as terms. Not thread-safe; use one instance per thread.
class Normalizer {
 public:
  explicit Normalizer(const Registry& reg, std::size_t fuel = 10000);

  /// Value of f at the identity of its domain.
  NfP eval_closed(const Mor& f);
  /// Value of f o s, where s : ctx -> dom(f).
  NfP eval(const Mor& f, const NfP& s, const Obj& ctx);
  /// Reads back a value of type ty in context ctx.
  Mor reify(const NfP& v, const Obj& ty, const Obj& ctx);
  /// eval_closed followed by reify. Throws FuelExhausted.
  Mor normalize(const Mor& f);

  NfP idnf(const Obj& ctx);
  NfP zero(const Obj& ty);
  NfP add(const NfP& a, const NfP& b);
  /// D of a value: ctx x ctx -> ty.
  NfP dnf(const NfP& v, const Obj& ty, const Obj& ctx);
  NfP subst(const NfP& v, const Obj& ty, const NfP& s, const Obj& ctx);

  std::size_t steps() const { return steps_; }
  void reset_steps() { steps_ = 0; }
  std::size_t fuel() const { return fuel_; }
  Typer& typer() { return typer_; }

 private:
  void tick();
  NfP reflect(const NeP& n, const Obj& ty);
  NfP var(const Path& p, const Obj& ty);
  NfP at(const NfP& v, const Path& p);
  std::vector<NfP> split(const NfP& v, const Obj& ty);
  NfP subst_ne(const Ne& n, const NfP& s, const Obj& ctx);
  NfP dne(const Ne& n, const Obj& ctx);
  NfP atom_jet(const GenSig& g, const NfP& p, std::vector<NfP> ts, const Obj& ctx);
  NfP fun_jet(const NfP& f, const Obj& fty, const NfP& x, std::vector<NfP> ys, const Obj& ctx);
  NfP fun_jet_ne(const NeP& f, const NfP& x, std::vector<NfP> ys);
  NfP jet(const NfP& v, const Obj& ty, const Obj& vctx, const NfP& point, const std::vector<NfP>& tans,
          const Obj& ctx, const std::string& memo_key);
  NfP multilinear(const std::vector<NfP>& ts, const Obj& tty, const Obj& rty,
                  const std::function<NeP(std::vector<NfP>)>& mk);

  NeP as_neutral(const NfP& v, const Obj& ty);
  Mor reify_ne(const Ne& n, const Obj& ctx);
  Mor reify_jet(const Mor& head, const NfP& point, const std::vector<NfP>& tans, const Obj& pty,
                const Obj& ctx);

  const Registry& reg_;
  Typer typer_;
  std::size_t fuel_;
  std::size_t steps_ = 0;
  std::unordered_map<std::size_t, std::vector<std::pair<Obj, NfP>>> id_cache_;
  std::unordered_map<const void*, std::pair<Mor, NfP>> dbody_cache_;
  std::map<std::string, std::pair<Obj, NfP>> djet_cache_;
};

}  // namespace nbe
}  // namespace cdc
