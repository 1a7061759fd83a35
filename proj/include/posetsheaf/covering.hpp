#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "posetsheaf/dlattice.hpp"
#include "posetsheaf/order.hpp"
#include "posetsheaf/projz2.hpp"

namespace posetsheaf {

// A finite set with an indexed family of subsets whose union is the set.
// Empty parts are allowed.
struct CoveringSpec {
  std::vector<std::string> ground;
  std::vector<Bits> parts;  // each over ground indices

  static CoveringSpec make(std::vector<std::string> ground, const std::vector<std::vector<std::string>>& parts) {
    if (ground.size() > default_limits().max_ground)
      throw ResourceError("max_ground", default_limits().max_ground, "covering ground set too large");
    if (parts.empty()) throw InputError("a covering needs at least one part");
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (!idx.emplace(ground[i], i).second) throw InputError("duplicate ground label '" + ground[i] + "'");
    CoveringSpec C;
    C.ground = std::move(ground);
    Bits uni(C.ground.size());
    for (const auto& part : parts) {
      Bits b(C.ground.size());
      for (const auto& l : part) {
        auto it = idx.find(l);
        if (it == idx.end()) throw InputError("part mentions '" + l + "', which is not in the ground set");
        b.set(it->second);
      }
      uni |= b;
      C.parts.push_back(std::move(b));
    }
    if (uni.count() != C.ground.size()) {
      auto missing = (Bits::full(C.ground.size()) - uni).first();
      throw InputError("parts do not cover '" + C.ground[missing] + "'");
    }
    return C;
  }

  std::size_t horizon() const { return parts.size() - 1; }
  std::size_t index_of(const std::string& x) const {
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (ground[i] == x) return i;
    throw InputError("'" + x + "' is not in the ground set");
  }
};

// Part indices containing ground element x.
inline Bits support_bits(const CoveringSpec& C, std::size_t x) {
  Bits s(C.parts.size());
  for (std::size_t i = 0; i < C.parts.size(); ++i)
    if (C.parts[i].test(x)) s.set(i);
  return s;
}

inline std::vector<std::size_t> support(const std::string& x, const CoveringSpec& C) {
  return support_bits(C, C.index_of(x)).indices();
}

// x <= y iff supp(x) contains supp(y).
inline FinitePreorder support_preorder(const CoveringSpec& C) {
  std::vector<Bits> s;
  for (std::size_t x = 0; x < C.ground.size(); ++x) s.push_back(support_bits(C, x));
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (x != y && s[y].subset_of(s[x])) rel.emplace_back(x, y);
  return FinitePreorder::from_relation(C.ground, rel);
}

struct PartitionSpace {
  FinitePoset poset;                 // classes, p <= q iff supp(p) contains supp(q)
  std::vector<std::size_t> projection;  // ground index -> class index
  std::vector<Bits> class_support;
  std::vector<Bits> class_members;   // over ground indices
};

// Classes are numbered by first occurrence in the ground set and labelled
// by their members joined with ','.
inline PartitionSpace partition_space(const CoveringSpec& C) {
  PartitionSpace S;
  std::unordered_map<Bits, std::size_t, BitsHash> cls;
  for (std::size_t x = 0; x < C.ground.size(); ++x) {
    auto s = support_bits(C, x);
    auto [it, fresh] = cls.emplace(s, S.class_support.size());
    if (fresh) {
      S.class_support.push_back(s);
      S.class_members.emplace_back(C.ground.size());
    }
    S.projection.push_back(it->second);
    S.class_members[it->second].set(x);
  }
  std::vector<std::string> labels;
  for (const auto& m : S.class_members) {
    std::string l;
    m.for_each([&](std::size_t x) { l += (l.empty() ? "" : ",") + C.ground[x]; });
    labels.push_back(l);
  }
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t p = 0; p < S.class_support.size(); ++p)
    for (std::size_t q = 0; q < S.class_support.size(); ++q)
      if (p != q && S.class_support[q].subset_of(S.class_support[p])) rel.emplace_back(p, q);
  S.poset = FinitePoset::from_relation(std::move(labels), rel);
  return S;
}

inline Bits project(const PartitionSpace& S, const Bits& ground_subset) {
  Bits r(S.class_support.size());
  ground_subset.for_each([&](std::size_t x) { r.set(S.projection[x]); });
  return r;
}

inline Bits pull_back(const PartitionSpace& S, const Bits& classes) {
  Bits r(S.projection.size());
  for (std::size_t x = 0; x < S.projection.size(); ++x)
    if (classes.test(S.projection[x])) r.set(x);
  return r;
}

struct QuotientCheck {
  bool checked = false;  // false when the ground set is above the exhaustive limit
  bool monotone = true;
  bool open = true;
  bool closed = true;
};

// Exhaustive image checks of the projection over every open and closed set.
inline QuotientCheck verify_quotient_map(const CoveringSpec& C, const PartitionSpace& S, std::size_t max_ground = 12) {
  QuotientCheck r;
  auto X = support_preorder(C);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < X.size(); ++y)
      if (X.leq(x, y) && !S.poset.leq(S.projection[x], S.projection[y])) r.monotone = false;
  if (X.size() > max_ground) return r;
  r.checked = true;
  for (const auto& U : alexandrov_opens(X, max_ground)) {
    if (!is_upper_set(S.poset, project(S, U.members))) r.open = false;
    if (!is_lower_set(S.poset, project(S, U.members.complement()))) r.closed = false;
  }
  return r;
}

struct XiResult {
  std::size_t horizon = 0;
  std::vector<ProjPoint> value;      // per ground element
  std::vector<ProjPoint> hat;        // per class
  bool monotone_from_opposite = true;
  bool factors = true;
  bool hat_order_embedding = true;
  bool ok() const { return monotone_from_opposite && factors && hat_order_embedding; }
};

// xi(x) = chi_{supp(x)} in P^N with N + 1 parts.
inline XiResult xi(const CoveringSpec& C) {
  XiResult r;
  r.horizon = C.horizon();
  auto S = partition_space(C);
  for (std::size_t x = 0; x < C.ground.size(); ++x) r.value.push_back(ProjPoint::of(support_bits(C, x).indices()));
  for (const auto& s : S.class_support) r.hat.push_back(ProjPoint::of(s.indices()));
  // x <= y in the opposite of the support preorder iff supp(x) is inside supp(y).
  auto X = support_preorder(C);
  for (std::size_t x = 0; x < X.size(); ++x) {
    if (!(r.value[x] == r.hat[S.projection[x]])) r.factors = false;
    for (std::size_t y = 0; y < X.size(); ++y)
      if (X.leq(y, x) && !r.value[x].subset_of(r.value[y])) r.monotone_from_opposite = false;
  }
  for (std::size_t p = 0; p < r.hat.size(); ++p)
    for (std::size_t q = 0; q < r.hat.size(); ++q) {
      bool op_leq = S.poset.leq(q, p);
      if (op_leq != r.hat[p].subset_of(r.hat[q])) r.hat_order_embedding = false;
      if (p != q && r.hat[p] == r.hat[q]) r.hat_order_embedding = false;
    }
  return r;
}

// Sublattice of the power set of the ground generated by the parts.
inline DLattice covering_lattice(const CoveringSpec& C, std::size_t cap = default_limits().max_lattice) {
  auto sets = detail::close_under<Bits, BitsHash>(
      C.parts, [](const Bits& a, const Bits& b) { return a | b; }, [](const Bits& a, const Bits& b) { return a & b; },
      cap, "max_lattice");
  std::sort(sets.begin(), sets.end(), [](const Bits& a, const Bits& b) {
    auto ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : a < b;
  });
  std::unordered_map<Bits, Elem, BitsHash> idx;
  for (std::size_t i = 0; i < sets.size(); ++i) idx.emplace(sets[i], static_cast<Elem>(i));
  std::vector<Elem> gens;
  for (const auto& p : C.parts) gens.push_back(idx.at(p));
  auto names = C.ground;
  return DLattice::from_sets(std::move(sets), true, Polarity::set, std::move(gens),
                             [names](const Bits& b) { return detail::set_label(names, b); });
}

// Closed sets of the topology with the parts as closed subbasis.
inline std::vector<Bits> closed_sets_from_subbasis(const CoveringSpec& C, std::size_t cap = default_limits().max_lattice) {
  auto seed = C.parts;
  seed.push_back(Bits(C.ground.size()));
  seed.push_back(Bits::full(C.ground.size()));
  auto sets = detail::close_under<Bits, BitsHash>(
      seed, [](const Bits& a, const Bits& b) { return a | b; }, [](const Bits& a, const Bits& b) { return a & b; },
      cap, "max_lattice");
  std::sort(sets.begin(), sets.end());
  return sets;
}

// lambda -> pi(lambda) is a lattice isomorphism from the covering lattice
// onto the lattice generated by the projected parts, inverted by pi^{-1}.
inline bool verify_lattice_iso(const CoveringSpec& C, std::size_t cap = default_limits().max_lattice) {
  auto S = partition_space(C);
  auto L = covering_lattice(C, cap);
  std::vector<Bits> proj_parts;
  for (const auto& p : C.parts) proj_parts.push_back(project(S, p));
  auto target = detail::close_under<Bits, BitsHash>(
      proj_parts, [](const Bits& a, const Bits& b) { return a | b; }, [](const Bits& a, const Bits& b) { return a & b; },
      cap, "max_lattice");
  if (target.size() != L.size()) return false;
  std::unordered_set<Bits, BitsHash> tset(target.begin(), target.end()), seen;
  std::vector<Bits> img(L.size());
  for (Elem a = 0; a < L.size(); ++a) {
    auto lam = *L.set_of(a);
    img[a] = project(S, lam);
    if (!tset.count(img[a]) || !seen.insert(img[a]).second) return false;
    if (pull_back(S, img[a]) != lam) return false;
  }
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b) {
      if (img[L.join(a, b)] != (img[a] | img[b])) return false;
      if (img[L.meet(a, b)] != (img[a] & img[b])) return false;
    }
  return true;
}

}  // namespace posetsheaf
