#pragma once

#include <string>

#include "cdc/registry.hpp"
#include "cdc/rewrite.hpp"
#include "cdc/syntax.hpp"
#include "cdc/typecheck.hpp"

namespace testing {

inline const cdc::Registry& reg() { return cdc::Registry::builtin(); }

inline cdc::Mor parse(const std::string& text, const std::string& dom = "") {
  cdc::ParseOptions o;
  if (!dom.empty()) o.dom = cdc::parse_obj(dom);
  return cdc::parse_mor(text, reg(), o);
}

inline std::pair<cdc::Mor, cdc::Mor> parse2(const std::string& a, const std::string& b, const std::string& dom) {
  cdc::ParseOptions o;
  if (!dom.empty()) o.dom = cdc::parse_obj(dom);
  auto v = cdc::parse_same_type({a, b}, reg(), o);
  return {v[0], v[1]};
}

inline cdc::Mor nf(const cdc::Mor& m) { return cdc::normalize(m, reg()).term; }

inline cdc::Verdict verdict(const std::string& a, const std::string& b, const std::string& dom) {
  auto [l, r] = parse2(a, b, dom);
  return cdc::equal_mod_theory(l, r, reg()).verdict;
}

inline cdc::MorType type_of(const cdc::Mor& m) { return cdc::typecheck(m, reg()); }

}  // namespace testing
