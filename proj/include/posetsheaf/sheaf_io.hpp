#pragma once

#include <memory>
#include <string>

#include "posetsheaf/covering_io.hpp"
#include "posetsheaf/dlattice_io.hpp"
#include "posetsheaf/sheaf.hpp"

namespace posetsheaf {

inline Variance variance_from_string(const std::string& s) {
  if (s == "covariant") return Variance::covariant;
  if (s == "contravariant") return Variance::contravariant;
  throw InputError("variance must be \"covariant\" or \"contravariant\", got '" + s + "'");
}

inline std::string to_string(Variance v) { return v == Variance::covariant ? "covariant" : "contravariant"; }

namespace detail {

inline std::size_t horizon_field(const json& j) {
  const auto& h = require(j, "horizon");
  if (!h.is_number_unsigned()) throw InputError("horizon must be a nonnegative integer");
  return h.get<std::size_t>();
}

// Map entries are carrier indices or, when the target carrier is labelled, labels.
inline PDiagram::Map map_from_json(const json& m, const std::vector<std::string>* target_labels, std::size_t target_size) {
  if (!m.is_array()) throw InputError("a transition map must be an array");
  PDiagram::Map out;
  for (const auto& v : m) {
    if (v.is_number_unsigned()) {
      out.push_back(v.get<std::uint32_t>());
    } else if (v.is_string() && target_labels) {
      auto it = std::find(target_labels->begin(), target_labels->end(), v.get<std::string>());
      if (it == target_labels->end()) throw InputError("map value '" + v.get<std::string>() + "' is not in the target carrier");
      out.push_back(static_cast<std::uint32_t>(it - target_labels->begin()));
    } else {
      throw InputError("map values are carrier indices or carrier labels");
    }
    if (out.back() >= target_size) throw InputError("map value outside the target carrier");
  }
  return out;
}

}  // namespace detail

// Tabulated: {"base": poset | "horizon": N, "objects": {p: [labels] | size},
//             "transitions": [{"from","to","map"}], "variance"}.
// Lattice:   {"kind":"lattice","horizon":N,"lattice":{...},"objects":{p: element}, "variance"}.
inline PDiagram diagram_from_json(const json& j) {
  if (!j.is_object()) throw InputError("a diagram must be a JSON object");
  Variance v = j.contains("variance") ? variance_from_string(j.at("variance").get<std::string>()) : Variance::covariant;
  const auto& objs = detail::require(j, "objects");
  if (!objs.is_object()) throw InputError("objects must map base elements to carriers");

  if (j.value("kind", std::string("tabulated")) == "lattice") {
    const std::size_t N = detail::horizon_field(j);
    auto L = std::make_shared<DLattice>(lattice_from_json(detail::require(j, "lattice")));
    auto base = proj_poset(N);
    std::vector<Elem> objects(base.size(), L->bottom());
    std::vector<char> seen(base.size(), 0);
    const auto labels = L->labels();
    for (const auto& [k, val] : objs.items()) {
      auto p = base.index_of(k);
      objects[p] = detail::elem_ref(val, labels);
      seen[p] = 1;
    }
    for (std::size_t p = 0; p < base.size(); ++p)
      if (!seen[p]) throw InputError("no object given at " + base.label(p));
    std::vector<Elem> ks;
    for (std::size_t i = 0; i <= N; ++i) ks.push_back(objects[(std::size_t{1} << i) - 1]);
    auto M = std::make_shared<const IdealCoveringModel>(IdealCoveringModel::make(L, std::move(ks)));
    return PDiagram::lattice(N, std::move(M), std::move(objects), v);
  }

  std::optional<std::size_t> horizon;
  FinitePoset base;
  if (j.contains("base")) {
    base = poset_from_json(j.at("base"));
    if (j.contains("horizon")) horizon = detail::horizon_field(j);
  } else {
    horizon = detail::horizon_field(j);
    base = proj_poset(*horizon);
  }
  if (horizon && !(proj_poset(*horizon) == base)) throw InputError("base does not match the declared horizon");
  std::vector<std::size_t> sizes(base.size(), 0);
  std::vector<std::optional<std::vector<std::string>>> carrier(base.size());
  for (const auto& [k, val] : objs.items()) {
    auto p = base.index_of(k);
    if (val.is_number_unsigned()) {
      sizes[p] = val.get<std::size_t>();
    } else {
      carrier[p] = detail::string_list(val, "carrier");
      sizes[p] = carrier[p]->size();
    }
  }
  for (std::size_t p = 0; p < base.size(); ++p)
    if (sizes[p] == 0) throw InputError("missing or empty carrier at " + base.label(p));
  std::map<std::pair<std::size_t, std::size_t>, PDiagram::Map> maps;
  if (j.contains("transitions")) {
    for (const auto& t : j.at("transitions")) {
      auto s = base.index_of(detail::require(t, "from").get<std::string>());
      auto d = base.index_of(detail::require(t, "to").get<std::string>());
      maps[{s, d}] = detail::map_from_json(detail::require(t, "map"), carrier[d] ? &*carrier[d] : nullptr, sizes[d]);
    }
  }
  return PDiagram::tabulated(std::move(base), std::move(sizes), std::move(maps), v, true, horizon);
}

// Transitions along Hasse edges only; the rest are composites.
inline json to_json(const PDiagram& F) {
  json j;
  j["variance"] = to_string(F.variance());
  if (F.horizon()) j["horizon"] = *F.horizon();
  const auto& B = F.base();
  if (F.kind() == PDiagram::Kind::lattice) {
    j["kind"] = "lattice";
    j["lattice"] = to_json(F.model().lattice());
    json o = json::object();
    for (std::size_t p = 0; p < B.size(); ++p) o[B.label(p)] = F.model().lattice().label(F.object(p));
    j["objects"] = o;
    return j;
  }
  j["kind"] = "tabulated";
  j["base"] = to_json(static_cast<const FinitePreorder&>(B));
  json o = json::object();
  for (std::size_t p = 0; p < B.size(); ++p) o[B.label(p)] = F.carrier_size(p);
  j["objects"] = o;
  json ts = json::array();
  for (auto [p, q] : hasse_edges(B)) {
    auto [s, t] = F.has_arrow(p, q) ? std::pair{p, q} : std::pair{q, p};
    ts.push_back({{"from", B.label(s)}, {"to", B.label(t)}, {"map", F.arrow(s, t)}});
  }
  j["transitions"] = ts;
  return j;
}

}  // namespace posetsheaf
