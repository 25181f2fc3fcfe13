#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdc/mor.hpp"
#include "cdc/obj.hpp"

namespace cdc {

/// Signature of a generator symbol.
struct GenSig {
  std::string name;
  Obj dom, cod;
  /// Name of a compiled-in numeric builtin, empty if the generator is opaque.
  std::string body;
  /// Registered derivative D(name) : dom x dom -> cod, if any.
  std::optional<Mor> derivative;
  std::string derivative_src;
  bool linear = false;
  /// Bilinear on dom = A x B: linear in each factor separately.
  bool bilinear = false;
};

/// Generator table. Read-only once loaded.
class Registry {
 public:
  Registry() = default;

  /// Adds a signature. Derivatives are checked against the rest of the
  /// table, so add them after the generators they mention.
  void add(GenSig sig);

  const GenSig* find(const std::string& name) const;
  /// Throws UnknownGenerator.
  const GenSig& get(const std::string& name) const;
  std::vector<std::string> names() const;
  std::size_t size() const { return sigs_.size(); }

  /// Array of {name, dom, cod, body?, derivative?, linear?, bilinear?}.
  static Registry from_json_text(const std::string& text);
  static Registry from_file(const std::string& path);
  /// The compiled-in default table (identical to data/registry.json).
  static const std::string& default_json();
  static const Registry& builtin();
  /// Resolution order: explicit path, then $CDC_REGISTRY, then builtin().
  static Registry load(const std::optional<std::string>& path);

 private:
  std::map<std::string, GenSig> sigs_;
};

/// Names that the expression grammar reserves for operators and macros.
bool is_reserved_name(const std::string& name);

}  // namespace cdc
