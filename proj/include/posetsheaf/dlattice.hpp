#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "posetsheaf/bits.hpp"
#include "posetsheaf/error.hpp"
#include "posetsheaf/order.hpp"

namespace posetsheaf {

// `set`: join is the set-like union. `ideal`: join is intersection of
// ideals and meet is their sum, so the order is reverse inclusion.
enum class Polarity { set, ideal };

inline const char* to_string(Polarity p) { return p == Polarity::set ? "set" : "ideal"; }

using Elem = std::uint32_t;

namespace detail {

struct LatticeBackend {
  virtual ~LatticeBackend() = default;
  virtual std::size_t size() const = 0;
  virtual Elem join(Elem a, Elem b) const = 0;
  virtual Elem meet(Elem a, Elem b) const = 0;
  virtual std::string label(Elem a) const = 0;
};

struct TableBackend final : LatticeBackend {
  std::size_t n = 0;
  std::vector<Elem> jt, mt;
  std::vector<std::string> labels;
  std::size_t size() const override { return n; }
  Elem join(Elem a, Elem b) const override { return jt[a * n + b]; }
  Elem meet(Elem a, Elem b) const override { return mt[a * n + b]; }
  std::string label(Elem a) const override { return labels[a]; }
};

// Elements are distinct subsets of a common universe, closed under union
// and intersection.
struct SetBackend final : LatticeBackend {
  std::vector<Bits> sets;
  std::unordered_map<Bits, Elem, BitsHash> index;
  bool join_is_union = true;
  std::function<std::string(const Bits&)> labeler;

  std::size_t size() const override { return sets.size(); }
  Elem lookup(const Bits& b) const {
    auto it = index.find(b);
    if (it == index.end()) throw InternalError("set family is not closed under the lattice operations");
    return it->second;
  }
  Elem join(Elem a, Elem b) const override {
    return lookup(join_is_union ? (sets[a] | sets[b]) : (sets[a] & sets[b]));
  }
  Elem meet(Elem a, Elem b) const override {
    return lookup(join_is_union ? (sets[a] & sets[b]) : (sets[a] | sets[b]));
  }
  std::string label(Elem a) const override { return labeler(sets[a]); }
};

// Same, for universes of at most 64 points; masks are kept sorted.
struct MaskBackend final : LatticeBackend {
  std::vector<std::uint64_t> masks;
  bool join_is_union = true;
  std::function<std::string(std::uint64_t)> labeler;

  std::size_t size() const override { return masks.size(); }
  Elem lookup(std::uint64_t m) const {
    auto it = std::lower_bound(masks.begin(), masks.end(), m);
    if (it == masks.end() || *it != m) throw InternalError("mask family is not closed under the lattice operations");
    return static_cast<Elem>(it - masks.begin());
  }
  Elem join(Elem a, Elem b) const override {
    return lookup(join_is_union ? (masks[a] | masks[b]) : (masks[a] & masks[b]));
  }
  Elem meet(Elem a, Elem b) const override {
    return lookup(join_is_union ? (masks[a] & masks[b]) : (masks[a] | masks[b]));
  }
  std::string label(Elem a) const override { return labeler(masks[a]); }
};

inline std::string set_label(const std::vector<std::string>& names, const Bits& b) {
  std::string s = "{";
  bool first = true;
  b.for_each([&](std::size_t i) {
    if (!first) s += ",";
    s += i < names.size() ? names[i] : std::to_string(i);
    first = false;
  });
  return s + "}";
}

inline std::string mask_label(std::uint64_t m) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 64; ++i)
    if ((m >> i) & 1u) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

}  // namespace detail

struct Distributivity {
  bool distributive = true;
  std::string method;                      // "exhaustive", "sampled", "by construction"
  std::optional<std::array<Elem, 3>> witness;  // (p, q, r) with p^(q v r) != (p^q) v (p^r)
};

class DLattice {
 public:
  DLattice() = default;

  std::size_t size() const { return n_; }
  Elem join(Elem a, Elem b) const { return jt_.empty() ? be_->join(a, b) : jt_[a * n_ + b]; }
  Elem meet(Elem a, Elem b) const { return mt_.empty() ? be_->meet(a, b) : mt_[a * n_ + b]; }
  bool leq(Elem a, Elem b) const { return join(a, b) == b; }
  Elem top() const { return top_; }
  Elem bottom() const { return bottom_; }
  std::string label(Elem a) const { return be_->label(a); }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(n_);
    for (std::size_t a = 0; a < n_; ++a) out.push_back(label(static_cast<Elem>(a)));
    return out;
  }
  std::optional<Elem> find(const std::string& l) const {
    for (std::size_t a = 0; a < n_; ++a)
      if (label(static_cast<Elem>(a)) == l) return static_cast<Elem>(a);
    return std::nullopt;
  }

  Polarity polarity() const { return polarity_; }
  const std::vector<Elem>& generators() const { return gens_; }
  DLattice with_generators(std::vector<Elem> g) const {
    for (auto e : g)
      if (e >= n_) throw InputError("generator index out of range");
    DLattice c = *this;
    c.gens_ = std::move(g);
    return c;
  }

  const Distributivity& distributivity() const { return dist_; }
  bool is_distributive() const { return dist_.distributive; }
  bool has_tables() const { return !jt_.empty() || n_ == 0; }

  // Underlying subset for set-backed lattices.
  std::optional<Bits> set_of(Elem a) const {
    if (auto* s = dynamic_cast<const detail::SetBackend*>(be_.get())) return s->sets[a];
    return std::nullopt;
  }
  std::optional<std::uint64_t> mask_of(Elem a) const {
    if (auto* s = dynamic_cast<const detail::MaskBackend*>(be_.get())) return s->masks[a];
    return std::nullopt;
  }
  std::optional<Elem> find_set(const Bits& b) const {
    if (auto* s = dynamic_cast<const detail::SetBackend*>(be_.get())) {
      auto it = s->index.find(b);
      if (it != s->index.end()) return it->second;
    }
    return std::nullopt;
  }

  // Validates tables (ranges, lattice laws) and records distributivity.
  static DLattice from_tables(std::vector<std::string> labels, std::vector<Elem> join, std::vector<Elem> meet,
                              std::vector<Elem> gens = {}, Polarity pol = Polarity::set) {
    const std::size_t n = labels.size();
    if (n == 0) throw InputError("a lattice needs at least one element");
    if (join.size() != n * n || meet.size() != n * n) throw InputError("join/meet tables must be n x n");
    for (auto v : join)
      if (v >= n) throw InputError("join table entry out of range");
    for (auto v : meet)
      if (v >= n) throw InputError("meet table entry out of range");
    {
      std::unordered_set<std::string> seen;
      for (auto& l : labels)
        if (!seen.insert(l).second) throw InputError("duplicate lattice label '" + l + "'");
    }
    auto be = std::make_shared<detail::TableBackend>();
    be->n = n;
    be->jt = std::move(join);
    be->mt = std::move(meet);
    be->labels = std::move(labels);
    DLattice L;
    L.init(be, std::move(gens), pol, true);
    L.check_laws();
    L.dist_ = L.check_distributive();
    return L;
  }

  static DLattice from_sets(std::vector<Bits> sets, bool join_is_union, Polarity pol, std::vector<Elem> gens,
                            std::function<std::string(const Bits&)> labeler) {
    auto be = std::make_shared<detail::SetBackend>();
    be->join_is_union = join_is_union;
    be->labeler = std::move(labeler);
    be->sets = std::move(sets);
    for (std::size_t i = 0; i < be->sets.size(); ++i)
      if (!be->index.emplace(be->sets[i], static_cast<Elem>(i)).second) throw InputError("duplicate set in lattice family");
    if (be->sets.empty()) throw InputError("a lattice needs at least one element");
    DLattice L;
    L.init(be, std::move(gens), pol, false);
    L.dist_ = {true, "by construction", std::nullopt};
    return L;
  }

  // `masks` must be sorted and closed under | and &.
  static DLattice from_masks(std::vector<std::uint64_t> masks, bool join_is_union, Polarity pol, std::vector<Elem> gens,
                             std::function<std::string(std::uint64_t)> labeler) {
    auto be = std::make_shared<detail::MaskBackend>();
    be->join_is_union = join_is_union;
    be->labeler = std::move(labeler);
    be->masks = std::move(masks);
    if (be->masks.empty()) throw InputError("a lattice needs at least one element");
    if (!std::is_sorted(be->masks.begin(), be->masks.end()) ||
        std::adjacent_find(be->masks.begin(), be->masks.end()) != be->masks.end())
      throw InputError("mask family must be sorted and duplicate-free");
    DLattice L;
    L.init(be, std::move(gens), pol, false);
    L.dist_ = {true, "by construction", std::nullopt};
    return L;
  }

  // Elements reachable from `gens` inside `ambient`, with ambient indices.
  static DLattice induced(const DLattice& ambient, std::vector<Elem> members, std::vector<Elem> gens) {
    std::unordered_map<Elem, Elem> local;
    for (std::size_t i = 0; i < members.size(); ++i) local.emplace(members[i], static_cast<Elem>(i));
    const std::size_t n = members.size();
    auto be = std::make_shared<detail::TableBackend>();
    be->n = n;
    be->jt.resize(n * n);
    be->mt.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      be->labels.push_back(ambient.label(members[a]));
      for (std::size_t b = 0; b < n; ++b) {
        be->jt[a * n + b] = local.at(ambient.join(members[a], members[b]));
        be->mt[a * n + b] = local.at(ambient.meet(members[a], members[b]));
      }
    }
    for (auto& g : gens) g = local.at(g);
    DLattice L;
    L.init(be, std::move(gens), ambient.polarity(), true);
    if (ambient.dist_.distributive && ambient.dist_.method != "sampled")
      L.dist_ = {true, "inherited", std::nullopt};
    else
      L.dist_ = L.check_distributive();
    return L;
  }

 private:
  void init(std::shared_ptr<const detail::LatticeBackend> be, std::vector<Elem> gens, Polarity pol, bool tabled) {
    be_ = std::move(be);
    n_ = be_->size();
    polarity_ = pol;
    for (auto g : gens)
      if (g >= n_) throw InputError("generator index out of range");
    gens_ = std::move(gens);
    if (!tabled && n_ <= default_limits().dense_lattice) {
      jt_.resize(n_ * n_);
      mt_.resize(n_ * n_);
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b) {
          jt_[a * n_ + b] = be_->join(a, b);
          mt_[a * n_ + b] = be_->meet(a, b);
        }
    }
    top_ = bottom_ = 0;
    for (Elem a = 1; a < n_; ++a) {
      top_ = join(top_, a);
      bottom_ = meet(bottom_, a);
    }
  }

  void check_laws() const {
    auto fail = [&](const std::string& what) { throw DomainError("not a lattice: " + what); };
    for (Elem a = 0; a < n_; ++a) {
      if (join(a, a) != a || meet(a, a) != a) fail("idempotence fails at '" + label(a) + "'");
      for (Elem b = 0; b < n_; ++b) {
        if (join(a, b) != join(b, a) || meet(a, b) != meet(b, a))
          fail("commutativity fails at '" + label(a) + "', '" + label(b) + "'");
        if (join(a, meet(a, b)) != a || meet(a, join(a, b)) != a)
          fail("absorption fails at '" + label(a) + "', '" + label(b) + "'");
      }
    }
    auto assoc = [&](Elem a, Elem b, Elem c) {
      if (join(join(a, b), c) != join(a, join(b, c)) || meet(meet(a, b), c) != meet(a, meet(b, c)))
        fail("associativity fails at '" + label(a) + "', '" + label(b) + "', '" + label(c) + "'");
    };
    if (n_ <= 12) {
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
          for (Elem c = 0; c < n_; ++c) assoc(a, b, c);
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n_ - 1));
      for (int s = 0; s < 20000; ++s) assoc(pick(rng), pick(rng), pick(rng));
    }
  }

  Distributivity check_distributive() const {
    auto bad = [&](Elem p, Elem q, Elem r) { return meet(p, join(q, r)) != join(meet(p, q), meet(p, r)); };
    if (n_ <= 64) {
      for (Elem p = 0; p < n_; ++p)
        for (Elem q = 0; q < n_; ++q)
          for (Elem r = 0; r < n_; ++r)
            if (bad(p, q, r)) return {false, "exhaustive", std::array<Elem, 3>{p, q, r}};
      return {true, "exhaustive", std::nullopt};
    }
    std::mt19937_64 rng(0xd157);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n_ - 1));
    for (int s = 0; s < 200000; ++s) {
      Elem p = pick(rng), q = pick(rng), r = pick(rng);
      if (bad(p, q, r)) return {false, "sampled", std::array<Elem, 3>{p, q, r}};
    }
    return {true, "sampled", std::nullopt};
  }

  std::shared_ptr<const detail::LatticeBackend> be_;
  std::size_t n_ = 0;
  std::vector<Elem> jt_, mt_;
  std::vector<Elem> gens_;
  Polarity polarity_ = Polarity::set;
  Elem top_ = 0, bottom_ = 0;
  Distributivity dist_;
};

// The order of a lattice as a poset on its labels.
inline FinitePoset lattice_order(const DLattice& L) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      if (a != b && L.leq(a, b)) rel.emplace_back(a, b);
  return FinitePoset::from_relation(L.labels(), rel);
}

// c is meet irreducible iff c is not top and c differs from the meet of
// everything strictly above it (for finite lattices this is the pairwise
// definition: c = a ^ b forces c in {a, b}, and something is not below c).
inline std::vector<Elem> meet_irreducibles(const DLattice& L) {
  std::vector<Elem> out;
  for (Elem c = 0; c < L.size(); ++c) {
    if (c == L.top()) continue;
    std::optional<Elem> m;
    for (Elem x = 0; x < L.size(); ++x)
      if (x != c && L.leq(c, x)) m = m ? L.meet(*m, x) : x;
    if (m && *m != c) out.push_back(c);
  }
  return out;
}

inline bool is_meet_irreducible(const DLattice& L, Elem c) {
  if (c == L.top()) return false;
  std::optional<Elem> m;
  for (Elem x = 0; x < L.size(); ++x)
    if (x != c && L.leq(c, x)) m = m ? L.meet(*m, x) : x;
  return m && *m != c;
}

namespace detail {

// Closure of `seed` under two binary operations; gives up past `cap` elements.
template <class T, class Hash, class Join, class Meet>
std::vector<T> close_under(std::vector<T> seed, Join&& join, Meet&& meet, std::size_t cap, const char* bound) {
  std::vector<T> elems;
  std::unordered_set<T, Hash> seen;
  auto add = [&](T v) {
    if (seen.insert(v).second) {
      elems.push_back(std::move(v));
      if (elems.size() > cap)
        throw ResourceError(bound, cap, "generated lattice exceeds " + std::to_string(cap) + " elements");
    }
  };
  for (auto& s : seed) add(std::move(s));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      T a = elems[i], b = elems[j];
      add(join(a, b));
      add(meet(a, b));
    }
  return elems;
}

}  // namespace detail

// Ambient indices of the sublattice generated by `gens`.
inline std::vector<Elem> generate_sublattice_indices(const DLattice& ambient, const std::vector<Elem>& gens,
                                                     std::size_t cap = default_limits().max_lattice) {
  for (auto g : gens)
    if (g >= ambient.size()) throw InputError("generator index out of range");
  auto elems = detail::close_under<Elem, std::hash<Elem>>(
      gens, [&](Elem a, Elem b) { return ambient.join(a, b); }, [&](Elem a, Elem b) { return ambient.meet(a, b); },
      cap, "max_lattice");
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Generators keep their order (duplicates included).
inline DLattice generate_sublattice(const DLattice& ambient, const std::vector<Elem>& gens,
                                    std::size_t cap = default_limits().max_lattice) {
  if (gens.empty()) throw InputError("at least one generator is required");
  auto members = generate_sublattice_indices(ambient, gens, cap);
  return DLattice::induced(ambient, std::move(members), gens);
}

// All subsets of an n-set under union/intersection.
inline DLattice power_set_lattice(std::size_t n) {
  if (n > 16) throw ResourceError("power_set_n", 16, "power set lattice too large");
  std::vector<std::uint64_t> masks(std::size_t{1} << n);
  for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = m;
  return DLattice::from_masks(std::move(masks), true, Polarity::set, {}, detail::mask_label);
}

// 0 < 1 < ... < n-1.
inline DLattice chain_lattice(std::size_t n) {
  if (n == 0) throw InputError("a chain needs at least one element");
  std::vector<std::string> labels;
  std::vector<Elem> j(n * n), m(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      j[a * n + b] = static_cast<Elem>(std::max(a, b));
      m[a * n + b] = static_cast<Elem>(std::min(a, b));
    }
  }
  return DLattice::from_tables(std::move(labels), std::move(j), std::move(m));
}

// Upper sets of P. Under `ideal` polarity join is intersection and meet is
// union; under `set` polarity it is the other way round.
inline DLattice upper_set_lattice(const FinitePreorder& P, Polarity pol = Polarity::ideal,
                                  std::size_t max_elems = default_limits().max_elems) {
  auto opens = alexandrov_opens(P, max_elems);
  std::vector<Bits> sets;
  sets.reserve(opens.size());
  for (auto& u : opens) sets.push_back(std::move(u.members));
  auto names = P.labels();
  return DLattice::from_sets(std::move(sets), pol == Polarity::set, pol, {},
                             [names](const Bits& b) { return detail::set_label(names, b); });
}

struct BirkhoffPair {
  DLattice lattice;
  std::vector<Elem> irreducibles;  // poset element k is lattice element irreducibles[k]
  FinitePoset irreducible_poset;
  std::vector<Bits> iso;           // iso[a] = { k : irreducibles[k] >= a }
};

inline BirkhoffPair birkhoff(const DLattice& L) {
  const auto& d = L.distributivity();
  if (!d.distributive) {
    const auto& w = *d.witness;
    throw DomainError("lattice is not distributive: p ^ (q v r) != (p ^ q) v (p ^ r) for p='" + L.label(w[0]) +
                      "', q='" + L.label(w[1]) + "', r='" + L.label(w[2]) + "'");
  }
  BirkhoffPair bp;
  bp.lattice = L;
  bp.irreducibles = meet_irreducibles(L);
  const auto& M = bp.irreducibles;
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t x = 0; x < M.size(); ++x) {
    labels.push_back(L.label(M[x]));
    for (std::size_t y = 0; y < M.size(); ++y)
      if (x != y && L.leq(M[x], M[y])) rel.emplace_back(x, y);
  }
  bp.irreducible_poset = FinitePoset::from_relation(std::move(labels), rel);
  bp.iso.assign(L.size(), Bits(M.size()));
  for (Elem a = 0; a < L.size(); ++a)
    for (std::size_t x = 0; x < M.size(); ++x)
      if (L.leq(a, M[x])) bp.iso[a].set(x);
  return bp;
}

// Up(M) with the ideal convention; its element for iso[a] corresponds to a.
inline DLattice reconstruct(const BirkhoffPair& bp, std::size_t max_elems = default_limits().max_elems) {
  return upper_set_lattice(bp.irreducible_poset, Polarity::ideal, max_elems);
}

// Checks that iso is a bijection onto the upper sets of the irreducible
// poset carrying meets to unions and joins to intersections.
inline bool verify_birkhoff(const BirkhoffPair& bp, std::size_t max_elems = default_limits().max_elems) {
  const auto& L = bp.lattice;
  std::unordered_set<Bits, BitsHash> img;
  for (const auto& s : bp.iso) {
    if (!is_upper_set(bp.irreducible_poset, s)) return false;
    if (!img.insert(s).second) return false;
  }
  if (img.size() != count_opens(bp.irreducible_poset, max_elems)) return false;
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b) {
      if (bp.iso[L.meet(a, b)] != (bp.iso[a] | bp.iso[b])) return false;
      if (bp.iso[L.join(a, b)] != (bp.iso[a] & bp.iso[b])) return false;
    }
  return true;
}

// Order isomorphism (equivalently lattice isomorphism) by backtracking over
// elements sorted by (|down|, |up|). Returns f with f[a] in L2.
inline std::optional<std::vector<Elem>> find_isomorphism(const DLattice& L1, const DLattice& L2) {
  const std::size_t n = L1.size();
  if (n != L2.size()) return std::nullopt;
  auto sig = [](const DLattice& L) {
    std::vector<std::pair<std::size_t, std::size_t>> s(L.size());
    for (Elem a = 0; a < L.size(); ++a)
      for (Elem b = 0; b < L.size(); ++b) {
        if (L.leq(b, a)) ++s[a].first;
        if (L.leq(a, b)) ++s[a].second;
      }
    return s;
  };
  auto s1 = sig(L1), s2 = sig(L2);
  {
    auto a = s1, b = s2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return s1[a] < s1[b]; });
  std::vector<Elem> f(n, 0);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == n) return true;
    Elem a = order[k];
    for (Elem c = 0; c < n; ++c) {
      if (used[c] || s2[c] != s1[a]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t) {
        Elem b = order[t];
        if (L1.leq(a, b) != L2.leq(c, f[b]) || L1.leq(b, a) != L2.leq(f[b], c)) ok = false;
      }
      if (!ok) continue;
      f[a] = c;
      used[c] = 1;
      if (rec(k + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return f;
}

inline bool are_isomorphic(const DLattice& L1, const DLattice& L2) { return find_isomorphism(L1, L2).has_value(); }

namespace detail {

// Bit s-1 of an upper-set mask stands for the nonempty subset s of {0..n-1}.
inline std::string free_label(std::uint64_t up, std::size_t n) {
  std::vector<std::uint64_t> mins;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    if (!((up >> (s - 1)) & 1u)) continue;
    bool minimal = true;
    for (std::uint64_t t = (s - 1) & s; t; t = (t - 1) & s)
      if ((up >> (t - 1)) & 1u) {
        minimal = false;
        break;
      }
    if (minimal) mins.push_back(s);
  }
  std::string out;
  for (std::size_t k = 0; k < mins.size(); ++k) {
    if (k) out += "|";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      if ((mins[k] >> i) & 1u) {
        if (!first) out += "&";
        out += "x" + std::to_string(i);
        first = false;
      }
  }
  return out;
}

}  // namespace detail

// Free distributive lattice (no bounds) on n generators: nonempty upper sets
// of the nonempty subsets of {0..n-1}, join = union, meet = intersection.
// Generator i is the set of subsets containing i.
inline DLattice free_distributive_lattice(std::size_t n, bool allow_six = false) {
  if (n < 1 || n > 6) throw ResourceError("free_n", 6, "free_distributive_lattice needs 1 <= n <= 6, got " + std::to_string(n));
  if (n == 6 && !allow_six)
    throw ResourceError("free_n", 5, "n = 6 (7828352 elements) needs the explicit large-lattice flag");
  const std::size_t m = (std::size_t{1} << n) - 1;
  std::vector<std::uint64_t> up(m), down(m);
  for (std::uint64_t s = 1; s <= m; ++s)
    for (std::uint64_t t = 1; t <= m; ++t)
      if ((s & ~t) == 0) {
        up[s - 1] |= std::uint64_t{1} << (t - 1);
        down[t - 1] |= std::uint64_t{1} << (s - 1);
      }
  std::vector<std::uint64_t> masks;
  detail::enumerate_upper_masks(up, down, [&](std::uint64_t u) {
    if (u) masks.push_back(u);
  });
  std::sort(masks.begin(), masks.end());
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t g = up[(std::uint64_t{1} << i) - 1];
    gens.push_back(static_cast<Elem>(std::lower_bound(masks.begin(), masks.end(), g) - masks.begin()));
  }
  return DLattice::from_masks(std::move(masks), true, Polarity::set, std::move(gens),
                              [n](std::uint64_t u) { return detail::free_label(u, n); });
}

struct FreenessVerdict {
  bool free = true;
  std::string clause;  // "distinct", "order", "irreducible" or empty
  std::vector<std::size_t> I, J;
};

// c_I = join of gens over I for nonempty proper I.
inline FreenessVerdict is_free_on(const DLattice& L, const std::vector<Elem>& gens) {
  if (gens.empty()) throw InputError("is_free_on needs at least one generator");
  if (gens.size() > 20) throw ResourceError("free_gens", 20, "too many generators for the freeness criterion");
  if (generate_sublattice_indices(L, gens).size() != L.size())
    throw DomainError("the given generators do not generate the lattice");
  const std::size_t n = gens.size();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto idx = [&](std::uint64_t I) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
      if ((I >> i) & 1u) v.push_back(i);
    return v;
  };
  std::vector<std::uint64_t> subsets;
  std::vector<Elem> c;
  for (std::uint64_t I = 1; I < full; ++I) {
    subsets.push_back(I);
    std::optional<Elem> acc;
    for (std::size_t i = 0; i < n; ++i)
      if ((I >> i) & 1u) acc = acc ? L.join(*acc, gens[i]) : gens[i];
    c.push_back(*acc);
  }
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = x + 1; y < c.size(); ++y)
      if (c[x] == c[y]) return {false, "distinct", idx(subsets[x]), idx(subsets[y])};
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      bool sub = (subsets[x] & ~subsets[y]) == 0;
      if (L.leq(c[x], c[y]) != sub) return {false, "order", idx(subsets[x]), idx(subsets[y])};
    }
  for (std::size_t x = 0; x < c.size(); ++x)
    if (!is_meet_irreducible(L, c[x])) return {false, "irreducible", idx(subsets[x]), {}};
  return {};
}

}  // namespace posetsheaf
