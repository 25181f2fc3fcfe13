#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

namespace cdc {

struct TermGenOptions {
  int max_depth = 4;
  /// Allow curry and ev. Off when the terms must be evaluable numerically.
  bool higher_order = true;
  /// Only use generators that carry a numeric body.
  bool numeric_only = false;
};

/// Seeded generator of well-typed terms over a small pool of objects built
/// from R and R2. Every term it returns typechecks by construction.
class TermGen {
 public:
  TermGen(const Registry& reg, std::uint64_t seed, TermGenOptions opts = {});

  /// A term between two objects drawn from the pool.
  Mor any();
  /// A term dom -> cod of nesting depth at most `depth`.
  Mor term(const Obj& dom, const Obj& cod, int depth);
  const std::vector<Obj>& pool() const { return pool_; }
  const Obj& pick();

 private:
  Mor leaf(const Obj& dom, const Obj& cod);
  std::size_t below(std::size_t n);

  const Registry& reg_;
  std::mt19937_64 rng_;
  TermGenOptions opts_;
  std::vector<Obj> pool_;
  std::vector<const GenSig*> gens_;
};

}  // namespace cdc
