#pragma once

#include "posetsheaf/covering.hpp"
#include "posetsheaf/order_io.hpp"
#include "posetsheaf/projz2_io.hpp"

namespace posetsheaf {

// {"ground":["A",...],"parts":[["A","B"],...]}
inline CoveringSpec covering_from_json(const json& j) {
  auto ground = detail::string_list(detail::require(j, "ground"), "ground");
  const auto& p = detail::require(j, "parts");
  if (!p.is_array()) throw InputError("parts must be an array of label lists");
  std::vector<std::vector<std::string>> parts;
  for (const auto& part : p) parts.push_back(detail::string_list(part, "part"));
  return CoveringSpec::make(std::move(ground), parts);
}

inline json to_json(const CoveringSpec& C) {
  json parts = json::array();
  for (const auto& p : C.parts) {
    json a = json::array();
    p.for_each([&](std::size_t x) { a.push_back(C.ground[x]); });
    parts.push_back(a);
  }
  return {{"ground", C.ground}, {"parts", parts}};
}

inline json to_json(const CoveringSpec& C, const PartitionSpace& S) {
  json classes = json::array();
  for (std::size_t c = 0; c < S.class_members.size(); ++c) {
    json members = json::array();
    S.class_members[c].for_each([&](std::size_t x) { members.push_back(C.ground[x]); });
    classes.push_back({{"label", S.poset.label(c)}, {"members", members}, {"support", S.class_support[c].indices()}});
  }
  json proj = json::object();
  for (std::size_t x = 0; x < C.ground.size(); ++x) proj[C.ground[x]] = S.poset.label(S.projection[x]);
  return {{"classes", classes}, {"poset", to_json(S.poset)}, {"projection", proj}};
}

inline json to_json(const CoveringSpec& C, const XiResult& r) {
  json value = json::object();
  for (std::size_t x = 0; x < C.ground.size(); ++x) value[C.ground[x]] = r.value[x].support;
  json hat = json::array();
  for (const auto& h : r.hat) hat.push_back(h.support);
  return {{"horizon", r.horizon},
          {"xi", value},
          {"xi_hat", hat},
          {"monotone_from_opposite", r.monotone_from_opposite},
          {"factors_through_partition", r.factors},
          {"order_embedding", r.hat_order_embedding},
          {"ok", r.ok()}};
}

}  // namespace posetsheaf
