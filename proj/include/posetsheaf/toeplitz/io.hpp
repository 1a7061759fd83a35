#pragma once

#include <string>

#include <json.hpp>

#include "posetsheaf/toeplitz/cube.hpp"

namespace posetsheaf::toeplitz {

using json = nlohmann::json;

namespace detail {

inline Rational coeff_from_json(const json& j) {
  if (j.is_null()) return Rational(1);
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError("coefficients must be integers or strings such as \"-2/3\"");
}

inline std::int64_t exponent(const json& j, const char* key, bool nonneg) {
  if (!j.contains(key)) return 0;
  if (!j.at(key).is_number_integer()) throw InputError(std::string("exponent '") + key + "' must be an integer");
  auto v = j.at(key).get<std::int64_t>();
  if (nonneg && v < 0) throw InputError("Toeplitz exponents must be nonnegative");
  return v;
}

}  // namespace detail

// {"T":[{"a":1,"b":0,"c":"1"}]} or {"S":[{"k":-1,"c":"2"}]}.
inline MixedTensor<>::FactorElem factor_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1 || !(j.contains("T") || j.contains("S")))
    throw InputError("a factor literal is an object with a single key \"T\" or \"S\"");
  if (j.contains("T")) {
    ToeplitzElem<> x;
    if (!j.at("T").is_array()) throw InputError("\"T\" must hold a term list");
    for (const auto& t : j.at("T"))
      x.add_term({static_cast<std::uint32_t>(detail::exponent(t, "a", true)),
                  static_cast<std::uint32_t>(detail::exponent(t, "b", true))},
                 detail::coeff_from_json(t.value("c", json())));
    return x;
  }
  CircleElem<> x;
  if (!j.at("S").is_array()) throw InputError("\"S\" must hold a term list");
  for (const auto& t : j.at("S")) x.add_term(detail::exponent(t, "k", false), detail::coeff_from_json(t.value("c", json())));
  return x;
}

inline json to_json(const ToeplitzElem<>& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) terms.push_back({{"a", m.a}, {"b", m.b}, {"c", to_string(c)}});
  return {{"T", terms}};
}

inline json to_json(const CircleElem<>& x) {
  json terms = json::array();
  for (const auto& [k, c] : x.terms()) terms.push_back({{"k", k}, {"c", to_string(c)}});
  return {{"S", terms}};
}

// Accepts {"shape","basis":[{"f":[[a,b] or [k],...],"c"}]},
// {"shape","terms":[[factor,...],...]} (a sum of pure tensors), or
// {"factors":[factor,...]} for a single pure tensor.
inline MixedTensor<> tensor_from_json(const json& j) {
  if (!j.is_object()) throw InputError("a tensor must be a JSON object");
  if (j.contains("factors")) {
    std::vector<MixedTensor<>::FactorElem> fs;
    for (const auto& f : j.at("factors")) fs.push_back(factor_from_json(f));
    auto x = MixedTensor<>::pure(fs);
    if (j.contains("shape") && j.at("shape").get<std::string>() != x.shape())
      throw InputError("declared shape " + j.at("shape").get<std::string>() + " does not match the factors");
    return x;
  }
  if (!j.contains("shape") || !j.at("shape").is_string()) throw InputError("tensor needs a \"shape\" string");
  const auto shape = j.at("shape").get<std::string>();
  MixedTensor<> x(shape);
  if (j.contains("basis")) {
    for (const auto& t : j.at("basis")) {
      if (!t.contains("f") || !t.at("f").is_array() || t.at("f").size() != shape.size())
        throw InputError("basis entry needs \"f\" with one exponent list per position");
      Basis b;
      for (std::size_t p = 0; p < shape.size(); ++p) {
        const auto& e = t.at("f")[p];
        if (!e.is_array() || e.empty() || e.size() > 2) throw InputError("basis exponents are [a,b] or [k]");
        b.push_back({e[0].get<std::int64_t>(), e.size() == 2 ? e[1].get<std::int64_t>() : 0});
      }
      x.add_term(b, detail::coeff_from_json(t.value("c", json())));
    }
  }
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      std::vector<MixedTensor<>::FactorElem> fs;
      for (const auto& f : t) fs.push_back(factor_from_json(f));
      x += MixedTensor<>::pure(fs);
    }
  }
  return x;
}

inline json to_json(const MixedTensor<>& x) {
  json basis = json::array();
  for (const auto& [b, c] : x.terms()) {
    json f = json::array();
    for (std::size_t p = 0; p < b.size(); ++p)
      f.push_back(x.shape()[p] == 'T' ? json::array({b[p].a, b[p].b}) : json::array({b[p].a}));
    basis.push_back({{"f", f}, {"c", to_string(c)}});
  }
  return {{"shape", x.shape()}, {"basis", basis}};
}

inline std::size_t dimension_from_json(const json& j) {
  if (!j.contains("n") || !j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() < 1)
    throw InputError("document needs a positive integer \"n\"");
  return j.at("n").get<std::size_t>();
}

// {"n":N,"components":[tensor,...]}
inline PullbackTuple<> tuple_from_json(const json& j) {
  PullbackTuple<> t;
  t.n = dimension_from_json(j);
  if (!j.contains("components") || !j.at("components").is_array()) throw InputError("tuple needs \"components\"");
  for (const auto& c : j.at("components")) t.components.push_back(tensor_from_json(c));
  t.validate();
  return t;
}

inline json to_json(const PullbackTuple<>& t) {
  json c = json::array();
  for (const auto& x : t.components) c.push_back(to_json(x));
  return {{"n", t.n}, {"components", c}};
}

// {"n":N,"partial":{"0":tensor,...}}
inline std::pair<Partial<>, std::size_t> partial_from_json(const json& j) {
  auto n = dimension_from_json(j);
  if (!j.contains("partial") || !j.at("partial").is_object()) throw InputError("document needs a \"partial\" object");
  Partial<> p;
  for (const auto& [key, v] : j.at("partial").items()) {
    std::size_t i;
    try {
      std::size_t used = 0;
      i = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError("partial keys must be component indices, got '" + key + "'");
    }
    p.emplace(i, tensor_from_json(v));
  }
  return {std::move(p), n};
}

inline json to_json(const CheckReport& r) {
  json j = {{"ok", r.ok}, {"checked", r.checked}};
  if (!r.ok) j["failure"] = r.failure;
  return j;
}

inline json to_json(const FreenessReport& r) {
  json g = json::object();
  for (const auto& [name, rep] : r.gluing) g[name] = to_json(rep);
  json probes = json::array();
  for (const auto& p : r.probes) {
    json e = {{"I", p.I}, {"m", p.m}, {"separator_nonzero", p.separator_nonzero},
              {"zero_on_samples", p.zero_on_samples}, {"samples", p.samples}};
    if (!p.ok()) e["failure"] = p.failure;
    probes.push_back(e);
  }
  json j = {{"n", r.n}, {"seed", r.seed}, {"antipode", r.antipode}, {"gluing_ok", r.gluing_ok}, {"gluing", g},
            {"freeness_tested", r.freeness_tested}, {"pass", r.pass()}};
  if (r.freeness_tested) {
    j["join_elements"] = r.join_elements;
    j["distinct"] = r.distinct;
    j["ordered"] = r.ordered;
    if (!r.order_failure.empty()) j["order_failure"] = r.order_failure;
    j["probes"] = probes;
  }
  return j;
}

}  // namespace posetsheaf::toeplitz
