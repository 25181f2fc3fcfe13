#include "cdc/registry.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdc/default_registry.hpp"
#include "cdc/errors.hpp"
#include "cdc/euclid/builtins.hpp"
#include "cdc/normal_form.hpp"
#include "cdc/syntax.hpp"
#include "cdc/typecheck.hpp"

namespace cdc {

void Registry::add(GenSig sig) {
  if (sig.name.empty()) throw RegistryError("generator with an empty name");
  if (is_reserved_name(sig.name)) throw RegistryError("'" + sig.name + "' is a reserved name");
  if (sigs_.count(sig.name)) throw RegistryError("duplicate generator '" + sig.name + "'");
  if (sig.bilinear && !sig.dom.is_prod())
    throw RegistryError("bilinear generator '" + sig.name + "' needs a product domain");
  if (!sig.body.empty()) euclid::check_builtin(sig.body, sig.dom, sig.cod);
  std::string name = sig.name;
  sigs_.emplace(name, std::move(sig));
}

const GenSig* Registry::find(const std::string& name) const {
  auto it = sigs_.find(name);
  return it == sigs_.end() ? nullptr : &it->second;
}

const GenSig& Registry::get(const std::string& name) const {
  if (const GenSig* g = find(name)) return *g;
  throw UnknownGenerator(name);
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : sigs_) out.push_back(n);
  return out;
}

Registry Registry::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw RegistryError(std::string("registry is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw RegistryError("registry must be a JSON array");

  // First pass: signatures. Derivatives may mention any generator in the
  // table, so they are parsed once every name is known.
  Registry reg;
  for (const auto& e : doc) {
    if (!e.is_object() || !e.contains("name") || !e.contains("dom") || !e.contains("cod"))
      throw RegistryError("registry entry needs name, dom and cod: " + e.dump());
    GenSig g;
    try {
      g.name = e.at("name").get<std::string>();
      g.dom = parse_obj(e.at("dom").get<std::string>());
      g.cod = parse_obj(e.at("cod").get<std::string>());
      g.body = e.value("body", std::string());
      g.derivative_src = e.value("derivative", std::string());
      g.linear = e.value("linear", false);
      g.bilinear = e.value("bilinear", false);
    } catch (const nlohmann::json::exception& ex) {
      throw RegistryError("bad registry entry " + e.dump() + ": " + ex.what());
    } catch (const ParseError& ex) {
      throw RegistryError("bad object in registry entry " + e.dump() + ": " + ex.what());
    }
    reg.add(std::move(g));
  }

  for (auto& [name, g] : reg.sigs_) {
    if (g.derivative_src.empty()) continue;
    ParseOptions opts;
    opts.dom = Obj::prod(g.dom, g.dom);
    opts.cod = g.cod;
    try {
      g.derivative = parse_mor(g.derivative_src, reg, opts);
    } catch (const Error& ex) {
      throw RegistryError("derivative of '" + name + "': " + ex.what());
    }
  }

  // A linear generator's registered derivative must be g o pi1.
  for (const auto& [name, g] : reg.sigs_) {
    if (!g.linear || !g.derivative) continue;
    Registry plain = reg;
    plain.sigs_.at(name).derivative.reset();
    nbe::Normalizer n(plain);
    Mor expect = Mor::compose(Mor::gen(name), Mor::proj1(g.dom, g.dom));
    if (!(n.normalize(*g.derivative) == n.normalize(expect)))
      throw RegistryError("linear generator '" + name + "' has derivative " + g.derivative_src +
                          ", which is not " + name + " o pi1");
  }
  return reg;
}

Registry Registry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RegistryError("cannot open registry file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

const std::string& Registry::default_json() {
  static const std::string text = detail::kDefaultRegistryJson;
  return text;
}

const Registry& Registry::builtin() {
  static const Registry reg = from_json_text(default_json());
  return reg;
}

Registry Registry::load(const std::optional<std::string>& path) {
  if (path && !path->empty()) return from_file(*path);
  if (const char* env = std::getenv("CDC_REGISTRY"); env && *env) return from_file(env);
  return builtin();
}

}  // namespace cdc
