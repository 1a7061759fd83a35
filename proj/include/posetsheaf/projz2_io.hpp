#pragma once

#include <string>
#include <vector>

#include "posetsheaf/order_io.hpp"
#include "posetsheaf/projz2.hpp"

namespace posetsheaf {

namespace detail {

inline std::vector<std::size_t> index_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw InputError(std::string(what) + " must hold nonnegative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace detail

// {"support":[0,2]}
inline ProjPoint point_from_json(const json& j) {
  return ProjPoint::of(detail::index_list(detail::require(j, "support"), "support"));
}

inline json to_json(const ProjPoint& p) { return {{"support", p.support}}; }

// {"horizon":2,"antichain":[[0],[1,2]]}
inline OpenSetRep open_from_json(const json& j) {
  const auto& h = detail::require(j, "horizon");
  if (!h.is_number_unsigned()) throw InputError("horizon must be a nonnegative integer");
  const auto& a = detail::require(j, "antichain");
  if (!a.is_array()) throw InputError("antichain must be an array of supports");
  std::vector<ProjPoint> gens;
  for (const auto& s : a) gens.push_back(ProjPoint::of(detail::index_list(s, "antichain entry")));
  return make_open(h.get<std::size_t>(), std::move(gens));
}

inline json to_json(const OpenSetRep& U) {
  json a = json::array();
  for (const auto& p : U.antichain) a.push_back(p.support);
  return {{"horizon", U.horizon}, {"antichain", a}};
}

// {"head":{"0":0,"1":0,"2":1},"tail_offset":1}
inline TameSurjection tame_from_json(const json& j) {
  const auto& h = detail::require(j, "head");
  std::vector<std::size_t> head;
  if (h.is_array()) {
    head = detail::index_list(h, "head");
  } else if (h.is_object()) {
    head.assign(h.size(), 0);
    std::vector<char> seen(h.size(), 0);
    for (const auto& [k, v] : h.items()) {
      std::size_t i = 0, used = 0;
      try {
        i = std::stoul(k, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != k.size() || i >= h.size() || seen[i])
        throw InputError("head keys must be exactly 0..L-1, got '" + k + "'");
      if (!v.is_number_unsigned()) throw InputError("head values must be nonnegative integers");
      seen[i] = 1;
      head[i] = v.get<std::size_t>();
    }
  } else {
    throw InputError("head must be an object or an array");
  }
  const auto& o = detail::require(j, "tail_offset");
  if (!o.is_number_unsigned()) throw InputError("tail_offset must be a nonnegative integer");
  return TameSurjection::make(std::move(head), o.get<std::size_t>());
}

inline json to_json(const TameSurjection& t) {
  json h = json::object();
  for (std::size_t i = 0; i < t.head().size(); ++i) h[std::to_string(i)] = t.head()[i];
  return {{"head", h}, {"tail_offset", t.offset()}};
}

}  // namespace posetsheaf
