#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "posetsheaf/order.hpp"

namespace posetsheaf {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError(std::string(what) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::string dot_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

}  // namespace detail

// {"elements":[...],"leq":[["p","q"],...]}; reflexive pairs may be omitted.
inline FinitePreorder preorder_from_json(const json& j) {
  auto labels = detail::string_list(detail::require(j, "elements"), "elements");
  std::vector<std::pair<std::string, std::string>> rel;
  if (j.contains("leq")) {
    const auto& leq = j.at("leq");
    if (!leq.is_array()) throw InputError("leq must be an array of pairs");
    for (const auto& pr : leq) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
        throw InputError("leq entries must be [\"p\",\"q\"] pairs");
      rel.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
  }
  return FinitePreorder::from_labeled(std::move(labels), rel);
}

inline FinitePoset poset_from_json(const json& j) { return FinitePoset::from(preorder_from_json(j)); }

inline json to_json(const FinitePreorder& P) {
  json j;
  j["elements"] = P.labels();
  json leq = json::array();
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      if (P.leq(p, q)) leq.push_back({P.label(p), P.label(q)});
  j["leq"] = std::move(leq);
  return j;
}

inline json upper_set_json(const FinitePreorder& P, const UpperSet& u) {
  json a = json::array();
  u.members.for_each([&](std::size_t p) { a.push_back(P.label(p)); });
  return a;
}

// Hasse diagram by default; `all_relations` draws every strict relation.
inline std::string to_dot(const FinitePreorder& P, bool all_relations = false, const std::string& name = "poset") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (std::size_t p = 0; p < P.size(); ++p) os << "  " << detail::dot_quote(P.label(p)) << ";\n";
  auto edges = all_relations ? strict_relations(P) : hasse_edges(P);
  for (auto [p, q] : edges) os << "  " << detail::dot_quote(P.label(p)) << " -> " << detail::dot_quote(P.label(q)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace posetsheaf
