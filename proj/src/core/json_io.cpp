#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace posetlab {

FinitePoset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("le"))
    throw parse_error("poset json needs \"elements\" and \"le\"");
  if (!j["elements"].is_array()) throw parse_error("\"elements\" must be an array");
  if (!j["le"].is_array()) throw parse_error("\"le\" must be an array of pairs");
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw parse_error("element names must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> le;
  for (const auto& p : j["le"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw parse_error("\"le\" entries must be [string,string] pairs");
    le.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return FinitePoset::from_relation(std::move(elements), le);
}

FinitePoset poset_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid json: ") + e.what());
  }
  return poset_from_json(j);
}

Json poset_to_json(const FinitePoset& x) {
  Json j;
  j["elements"] = x.elements();
  Json le = Json::array();
  for (const auto& [a, b] : x.relation_pairs()) le.push_back(Json::array({a, b}));
  j["le"] = std::move(le);
  return j;
}

FinitePoset load_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open poset file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return poset_from_json_text(buf.str());
}

}  // namespace posetlab
