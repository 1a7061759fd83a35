#pragma once

#include <string>
#include <vector>

#include "posetsheaf/dlattice.hpp"
#include "posetsheaf/order_io.hpp"

namespace posetsheaf {

inline Polarity polarity_from_string(const std::string& s) {
  if (s == "set") return Polarity::set;
  if (s == "ideal") return Polarity::ideal;
  throw InputError("polarity must be \"set\" or \"ideal\", got \"" + s + "\"");
}

namespace detail {

inline Elem elem_ref(const json& v, const std::vector<std::string>& labels) {
  if (v.is_number_unsigned()) {
    auto i = v.get<std::size_t>();
    if (i >= labels.size()) throw InputError("element index " + std::to_string(i) + " out of range");
    return static_cast<Elem>(i);
  }
  if (v.is_string()) {
    auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
    if (it == labels.end()) throw InputError("unknown lattice element '" + v.get<std::string>() + "'");
    return static_cast<Elem>(it - labels.begin());
  }
  throw InputError("lattice elements are referenced by index or label");
}

inline std::vector<Elem> table_from_json(const json& t, std::size_t n, const std::vector<std::string>& labels,
                                         const char* name) {
  if (!t.is_array() || t.size() != n) throw InputError(std::string(name) + " must be an n x n array");
  std::vector<Elem> out;
  out.reserve(n * n);
  for (const auto& row : t) {
    if (!row.is_array() || row.size() != n) throw InputError(std::string(name) + " must be an n x n array");
    for (const auto& v : row) out.push_back(elem_ref(v, labels));
  }
  return out;
}

}  // namespace detail

// {"elements":[...],"join":[[...]],"meet":[[...]],"generators":[...],"polarity":"set"|"ideal"}
inline DLattice lattice_from_json(const json& j) {
  auto labels = detail::string_list(detail::require(j, "elements"), "elements");
  const std::size_t n = labels.size();
  auto jt = detail::table_from_json(detail::require(j, "join"), n, labels, "join");
  auto mt = detail::table_from_json(detail::require(j, "meet"), n, labels, "meet");
  std::vector<Elem> gens;
  if (j.contains("generators")) {
    if (!j.at("generators").is_array()) throw InputError("generators must be an array");
    for (const auto& g : j.at("generators")) gens.push_back(detail::elem_ref(g, labels));
  }
  Polarity pol = Polarity::set;
  if (j.contains("polarity")) {
    if (!j.at("polarity").is_string()) throw InputError("polarity must be a string");
    pol = polarity_from_string(j.at("polarity").get<std::string>());
  }
  return DLattice::from_tables(std::move(labels), std::move(jt), std::move(mt), std::move(gens), pol);
}

inline json to_json(const DLattice& L) {
  if (L.size() > default_limits().dense_lattice)
    throw ResourceError("dense_lattice", default_limits().dense_lattice, "lattice too large for table output");
  json j;
  j["elements"] = L.labels();
  json jt = json::array(), mt = json::array();
  for (Elem a = 0; a < L.size(); ++a) {
    json r1 = json::array(), r2 = json::array();
    for (Elem b = 0; b < L.size(); ++b) {
      r1.push_back(L.join(a, b));
      r2.push_back(L.meet(a, b));
    }
    jt.push_back(std::move(r1));
    mt.push_back(std::move(r2));
  }
  j["join"] = std::move(jt);
  j["meet"] = std::move(mt);
  json g = json::array();
  for (auto e : L.generators()) g.push_back(L.label(e));
  j["generators"] = std::move(g);
  j["polarity"] = to_string(L.polarity());
  return j;
}

}  // namespace posetsheaf
