#pragma once

#include <unordered_map>

#include "cdc/mor.hpp"
#include "cdc/registry.hpp"

namespace cdc {

struct MorType {
  Obj dom, cod;
  friend bool operator==(const MorType&, const MorType&) = default;
  std::string str() const { return dom.str() + " -> " + cod.str(); }
};

/// Memoizing type checker. Cached entries pin their terms, so a Typer can
/// be reused across calls without dangling keys.
class Typer {
 public:
  explicit Typer(const Registry& reg) : reg_(reg) {}
  MorType operator()(const Mor& f);
  const Registry& registry() const { return reg_; }

 private:
  MorType compute(const Mor& f);
  const Registry& reg_;
  std::unordered_map<const void*, std::pair<Mor, MorType>> memo_;
};

/// Returns the unique domain and codomain of f. Throws UnknownGenerator or
/// TypeMismatch.
MorType typecheck(const Mor& f, const Registry& reg);

}  // namespace cdc
