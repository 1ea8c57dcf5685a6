#include "ipcmu/json_io.hpp"

#include <stdexcept>
#include <string>

namespace ipcmu {

nlohmann::json to_json(const Formula& f) {
  using nlohmann::json;
  switch (f.kind()) {
    case Kind::Var:
      return json{{"kind", "var"}, {"name", f.name()}};
    case Kind::Top:
      return json{{"kind", "top"}};
    case Kind::Bot:
      return json{{"kind", "bot"}};
    case Kind::And:
      return json{{"kind", "and"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case Kind::Or:
      return json{{"kind", "or"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case Kind::Imp:
      return json{{"kind", "imp"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case Kind::Mu:
      return json{{"kind", "mu"}, {"var", f.name()}, {"body", to_json(f.body())}};
    case Kind::Nu:
      return json{{"kind", "nu"}, {"var", f.name()}, {"body", to_json(f.body())}};
  }
  throw std::logic_error("to_json: unknown node kind");
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("formula json: " + what);
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Formula from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("expected an object");
  std::string kind = string_field(j, "kind");
  if (kind == "var") return Formula::var(string_field(j, "name"));
  if (kind == "top") return Formula::top();
  if (kind == "bot") return Formula::bot();
  if (kind == "and" || kind == "or" || kind == "imp") {
    Formula l = from_json(field(j, "left"));
    Formula r = from_json(field(j, "right"));
    if (kind == "and") return Formula::conj(std::move(l), std::move(r));
    if (kind == "or") return Formula::disj(std::move(l), std::move(r));
    return Formula::imp(std::move(l), std::move(r));
  }
  if (kind == "mu" || kind == "nu") {
    std::string var = string_field(j, "var");
    Formula body = from_json(field(j, "body"));
    return kind == "mu" ? Formula::mu(std::move(var), std::move(body))
                        : Formula::nu(std::move(var), std::move(body));
  }
  bad("unknown kind '" + kind + "'");
}

}  // namespace ipcmu
