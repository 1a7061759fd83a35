#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "posetsheaf/covering.hpp"
#include "posetsheaf/dlattice.hpp"
#include "posetsheaf/order.hpp"
#include "posetsheaf/projz2.hpp"

namespace posetsheaf {

// Ideals of a covered algebra A as elements of an ideal-polarity lattice:
// join is intersection, meet is sum. The top is the zero ideal and the
// bottom stands for A itself.
class IdealCoveringModel {
 public:
  static IdealCoveringModel make(std::shared_ptr<const DLattice> L, std::vector<Elem> kernels) {
    if (!L) throw InputError("ideal model needs a lattice");
    if (L->polarity() != Polarity::ideal) throw InputError("ideal model needs an ideal-polarity lattice");
    if (kernels.empty()) throw InputError("ideal model needs at least one kernel");
    for (auto k : kernels)
      if (k >= L->size()) throw InputError("kernel index out of range");
    IdealCoveringModel M;
    M.L_ = std::move(L);
    M.K_ = std::move(kernels);
    Elem meet_all = M.K_[0];
    for (auto k : M.K_) meet_all = M.intersect(meet_all, k);
    if (meet_all != M.zero()) throw DomainError("the kernels do not intersect to the zero ideal");
    return M;
  }

  // A = functions on the ground set of C, K_i = functions vanishing on C_i.
  // Ideals are stored by their zero sets, so intersection of ideals is
  // union of zero sets and sum is intersection.
  static IdealCoveringModel from_zero_sets(const CoveringSpec& C, std::size_t cap = default_limits().max_lattice) {
    auto seed = C.parts;
    seed.push_back(Bits(C.ground.size()));  // zero set of A
    auto sets = detail::close_under<Bits, BitsHash>(
        seed, [](const Bits& a, const Bits& b) { return a | b; }, [](const Bits& a, const Bits& b) { return a & b; },
        cap, "max_lattice");
    std::sort(sets.begin(), sets.end(), [](const Bits& a, const Bits& b) {
      auto ca = a.count(), cb = b.count();
      return ca != cb ? ca < cb : a < b;
    });
    std::unordered_map<Bits, Elem, BitsHash> idx;
    for (std::size_t i = 0; i < sets.size(); ++i) idx.emplace(sets[i], static_cast<Elem>(i));
    std::vector<Elem> ks;
    for (const auto& p : C.parts) ks.push_back(idx.at(p));
    auto names = C.ground;
    auto L = std::make_shared<DLattice>(DLattice::from_sets(
        std::move(sets), true, Polarity::ideal, ks, [names](const Bits& b) { return "I" + detail::set_label(names, b); }));
    return make(std::move(L), std::move(ks));
  }

  const DLattice& lattice() const { return *L_; }
  std::shared_ptr<const DLattice> lattice_ptr() const { return L_; }
  const std::vector<Elem>& kernels() const { return K_; }
  std::size_t horizon() const { return K_.size() - 1; }

  Elem intersect(Elem a, Elem b) const { return L_->join(a, b); }
  Elem sum(Elem a, Elem b) const { return L_->meet(a, b); }
  // a is contained in b as ideals.
  bool included(Elem a, Elem b) const { return L_->leq(b, a); }
  Elem zero() const { return L_->top(); }
  Elem whole() const { return L_->bottom(); }
  Elem kernel(std::size_t i) const { return i < K_.size() ? K_[i] : whole(); }

  // Same lattice and the same kernels, ignoring trailing copies of A.
  friend bool operator==(const IdealCoveringModel& a, const IdealCoveringModel& b) {
    if (a.L_ != b.L_) return false;
    std::size_t n = std::max(a.K_.size(), b.K_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a.kernel(i) != b.kernel(i)) return false;
    return true;
  }

 private:
  std::shared_ptr<const DLattice> L_;
  std::vector<Elem> K_;
};

namespace detail {

template <class Kernel>
Elem R_eval(const OpenSetRep& U, const IdealCoveringModel& M, Kernel&& kernel) {
  if (U.empty()) return M.whole();
  std::optional<Elem> acc;
  for (const auto& a : U.antichain) {
    Elem s = kernel(a.support.front());
    for (auto i : a.support) s = M.sum(s, kernel(i));
    acc = acc ? M.intersect(*acc, s) : s;
  }
  return *acc;
}

}  // namespace detail

// R(U) = intersection over minimal a of sum_{i in a} K_i; R(empty) = A.
inline Elem R_of(const OpenSetRep& U, const IdealCoveringModel& M) {
  for (std::size_t i = U.horizon + 1; i < M.kernels().size(); ++i)
    if (M.kernel(i) != M.whole())
      throw InputError("kernel " + std::to_string(i) + " lies beyond the horizon " + std::to_string(U.horizon));
  return detail::R_eval(U, M, [&](std::size_t i) { return M.kernel(i); });
}

enum class Variance { covariant, contravariant };

// A diagram over a finite poset. Covariant diagrams have an arrow p -> q
// for every p <= q; contravariant ones (pattern views) have q -> p.
// Objects are finite carriers {0..n-1} with map tables, or ideals of an
// IdealCoveringModel standing for the quotients A/I with quotient arrows.
class PDiagram {
 public:
  enum class Kind { tabulated, lattice };
  using Map = std::vector<std::uint32_t>;

  // `maps` may hold any set of arrows; missing ones are composed along
  // covering relations. With `validate`, functoriality is enforced.
  static PDiagram tabulated(FinitePoset base, std::vector<std::size_t> sizes,
                            std::map<std::pair<std::size_t, std::size_t>, Map> maps,
                            Variance v = Variance::covariant, bool validate = true,
                            std::optional<std::size_t> horizon = std::nullopt) {
    if (sizes.size() != base.size()) throw InputError("need one object per base element");
    for (auto s : sizes)
      if (s == 0) throw InputError("empty carriers are not supported");
    PDiagram F;
    F.kind_ = Kind::tabulated;
    F.base_ = std::move(base);
    F.variance_ = v;
    F.sizes_ = std::move(sizes);
    F.horizon_ = horizon;
    for (auto& [key, m] : maps) {
      auto [s, t] = key;
      if (s >= F.base_.size() || t >= F.base_.size()) throw InputError("transition endpoint out of range");
      if (!F.has_arrow(s, t))
        throw InputError("no arrow from '" + F.base_.label(s) + "' to '" + F.base_.label(t) + "' in this variance");
      if (m.size() != F.sizes_[s]) throw InputError("transition from '" + F.base_.label(s) + "' has the wrong length");
      for (auto x : m)
        if (x >= F.sizes_[t]) throw InputError("transition into '" + F.base_.label(t) + "' leaves the carrier");
    }
    F.maps_ = std::move(maps);
    F.complete_maps();
    if (validate)
      if (auto why = F.functoriality_violation()) throw DomainError("diagram is not functorial: " + *why);
    return F;
  }

  // Lattice-valued diagram over proj_poset(horizon); objects indexed by proj index.
  static PDiagram lattice(std::size_t horizon, std::shared_ptr<const IdealCoveringModel> model, std::vector<Elem> objects,
                          Variance v = Variance::covariant) {
    PDiagram F;
    F.kind_ = Kind::lattice;
    F.base_ = proj_poset(horizon);
    if (v == Variance::contravariant) F.base_ = opposite(F.base_);
    F.variance_ = v;
    F.horizon_ = horizon;
    if (objects.size() != F.base_.size()) throw InputError("need one object per point of P^" + std::to_string(horizon));
    for (auto o : objects)
      if (o >= model->lattice().size()) throw InputError("object is not an element of the ideal lattice");
    F.model_ = std::move(model);
    F.objects_ = std::move(objects);
    return F;
  }

  Kind kind() const { return kind_; }
  const FinitePoset& base() const { return base_; }
  Variance variance() const { return variance_; }
  std::optional<std::size_t> horizon() const { return horizon_; }

  bool has_arrow(std::size_t s, std::size_t t) const {
    return variance_ == Variance::covariant ? base_.leq(s, t) : base_.leq(t, s);
  }

  std::size_t carrier_size(std::size_t p) const { return sizes_.at(p); }
  const Map& arrow(std::size_t s, std::size_t t) const {
    auto it = maps_.find({s, t});
    if (it == maps_.end()) throw InputError("no arrow from '" + base_.label(s) + "' to '" + base_.label(t) + "'");
    return it->second;
  }
  const std::map<std::pair<std::size_t, std::size_t>, Map>& arrows() const { return maps_; }

  Elem object(std::size_t p) const { return objects_.at(p); }
  const std::vector<Elem>& objects() const { return objects_; }
  const IdealCoveringModel& model() const { return *model_; }
  std::shared_ptr<const IdealCoveringModel> model_ptr() const { return model_; }

  // The object standing for 0: a one-point carrier or the quotient A/A.
  bool is_zero_object(std::size_t p) const {
    return kind_ == Kind::tabulated ? sizes_[p] == 1 : objects_[p] == model_->whole();
  }

  std::optional<std::string> functoriality_violation() const {
    if (kind_ == Kind::lattice) return std::nullopt;
    const std::size_t n = base_.size();
    for (std::size_t p = 0; p < n; ++p) {
      const auto& id = arrow(p, p);
      for (std::size_t x = 0; x < id.size(); ++x)
        if (id[x] != x) return "arrow at '" + base_.label(p) + "' is not the identity";
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (p == q || !has_arrow(p, q)) continue;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == q || !has_arrow(q, r)) continue;
          const auto &f = arrow(p, q), &g = arrow(q, r), &h = arrow(p, r);
          for (std::size_t x = 0; x < f.size(); ++x)
            if (g[f[x]] != h[x])
              return "arrows '" + base_.label(p) + "'->'" + base_.label(q) + "'->'" + base_.label(r) +
                     "' do not compose to '" + base_.label(p) + "'->'" + base_.label(r) + "'";
        }
      }
    return std::nullopt;
  }

  // Every arrow surjective. For ideal objects an arrow A/I -> A/J exists
  // (and is onto) exactly when I is inside J.
  bool is_flabby() const { return !flabby_violation(); }
  std::optional<std::pair<std::size_t, std::size_t>> flabby_violation() const {
    const std::size_t n = base_.size();
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t || !has_arrow(s, t)) continue;
        if (kind_ == Kind::lattice) {
          if (!model_->included(objects_[s], objects_[t])) return std::pair{s, t};
          continue;
        }
        std::vector<char> hit(sizes_[t], 0);
        for (auto y : arrow(s, t)) hit[y] = 1;
        if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return std::pair{s, t};
      }
    return std::nullopt;
  }

  friend bool operator==(const PDiagram& a, const PDiagram& b) {
    if (a.kind_ != b.kind_ || a.variance_ != b.variance_ || !(a.base_ == b.base_)) return false;
    if (a.kind_ == Kind::lattice)
      return (a.model_ == b.model_ || (a.model_ && b.model_ && *a.model_ == *b.model_)) && a.objects_ == b.objects_;
    return a.sizes_ == b.sizes_ && a.maps_ == b.maps_;
  }

 private:
  friend PDiagram pattern_view(const PDiagram&);

  // Fills identities and composites along covering relations.
  void complete_maps() {
    const std::size_t n = base_.size();
    for (std::size_t p = 0; p < n; ++p)
      if (!maps_.count({p, p})) {
        Map id(sizes_[p]);
        for (std::size_t x = 0; x < id.size(); ++x) id[x] = static_cast<std::uint32_t>(x);
        maps_[{p, p}] = std::move(id);
      }
    // Strict arrows by increasing length of the underlying interval.
    std::vector<std::pair<std::size_t, std::size_t>> todo;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (s != t && has_arrow(s, t) && !maps_.count({s, t})) todo.emplace_back(s, t);
    auto span = [&](std::size_t s, std::size_t t) {
      Bits b = variance_ == Variance::covariant ? (base_.up(s) & base_.down(t)) : (base_.down(s) & base_.up(t));
      return b.count();
    };
    std::sort(todo.begin(), todo.end(), [&](auto a, auto b) { return span(a.first, a.second) < span(b.first, b.second); });
    for (auto [s, t] : todo) {
      bool done = false;
      for (std::size_t r = 0; r < n && !done; ++r) {
        if (r == s || r == t || !has_arrow(s, r) || !has_arrow(r, t)) continue;
        auto a = maps_.find({s, r}), b = maps_.find({r, t});
        if (a == maps_.end() || b == maps_.end()) continue;
        Map m(sizes_[s]);
        for (std::size_t x = 0; x < m.size(); ++x) m[x] = b->second[a->second[x]];
        maps_[{s, t}] = std::move(m);
        done = true;
      }
      if (!done)
        throw InputError("missing transition from '" + base_.label(s) + "' to '" + base_.label(t) + "'");
    }
  }

  Kind kind_ = Kind::tabulated;
  FinitePoset base_;
  Variance variance_ = Variance::covariant;
  std::optional<std::size_t> horizon_;
  std::vector<std::size_t> sizes_;
  std::map<std::pair<std::size_t, std::size_t>, Map> maps_;
  std::shared_ptr<const IdealCoveringModel> model_;
  std::vector<Elem> objects_;
};

// Same objects and arrows over the opposite base; the variance flips, so
// applying it twice gives back the original diagram.
inline PDiagram pattern_view(const PDiagram& F) {
  PDiagram G = F;
  G.base_ = opposite(F.base_);
  G.variance_ = F.variance_ == Variance::covariant ? Variance::contravariant : Variance::covariant;
  return G;
}

// A contravariant diagram all of whose restrictions are epimorphisms.
inline bool is_global_pattern(const PDiagram& G) {
  return G.variance() == Variance::contravariant && G.is_flabby();
}

struct Limit {
  std::vector<std::size_t> points;               // sorted members of U
  std::vector<std::vector<std::uint32_t>> tuples;  // tuples[k][t] is the component at points[t]
};

// Compatible families over U. Points are visited sources-first, so each
// value is either forced by an earlier arrow or a free choice.
inline Limit limit_over(const PDiagram& F, const Bits& U) {
  if (F.kind() != PDiagram::Kind::tabulated) throw InputError("limit_over needs tabulated objects");
  Limit L;
  L.points = U.indices();
  const std::size_t m = L.points.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> rank(m);
  for (std::size_t t = 0; t < m; ++t) {
    Bits below = F.variance() == Variance::covariant ? F.base().down(L.points[t]) : F.base().up(L.points[t]);
    rank[t] = (below & U).count();
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
  std::vector<std::uint32_t> cur(m, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m) {
      L.tuples.push_back(cur);
      return;
    }
    std::size_t t = order[k];
    std::size_t v = L.points[t];
    std::optional<std::uint32_t> forced;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t u = L.points[order[j]];
      if (u == v || !F.has_arrow(u, v)) continue;
      auto val = F.arrow(u, v)[cur[order[j]]];
      if (forced && *forced != val) return;
      forced = val;
    }
    if (forced) {
      cur[t] = *forced;
      rec(k + 1);
      return;
    }
    for (std::uint32_t x = 0; x < F.carrier_size(v); ++x) {
      cur[t] = x;
      rec(k + 1);
    }
  };
  rec(0);
  return L;
}

namespace detail {

inline std::vector<Bits> close_intersections(std::vector<Bits> sets) {
  std::unordered_set<Bits, BitsHash> seen(sets.begin(), sets.end());
  std::vector<Bits> out(seen.begin(), seen.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Bits c = out[i] & out[j];
      if (seen.insert(c).second) out.push_back(c);
    }
  std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) {
    auto ca = a.count(), cb = b.count();
    return ca != cb ? ca > cb : a < b;
  });
  return out;
}

// Sections over an open V: an element of F_p when V = up(p), otherwise a
// compatible family over V (a one-element set when V is empty).
struct SectionSpace {
  Bits V;
  std::optional<std::size_t> min;
  std::vector<std::size_t> points;
  std::vector<std::vector<std::uint32_t>> elems;
};

inline SectionSpace sections(const PDiagram& F, const Bits& V) {
  SectionSpace S;
  S.V = V;
  S.points = V.indices();
  for (auto p : S.points)
    if (F.base().up(p) == V) S.min = p;
  if (S.min) {
    for (std::uint32_t x = 0; x < F.carrier_size(*S.min); ++x) S.elems.push_back({x});
  } else {
    S.elems = limit_over(F, V).tuples;
  }
  return S;
}

// Restriction of section `s` of V to W inside V.
inline std::vector<std::uint32_t> restrict(const PDiagram& F, const SectionSpace& V, const std::vector<std::uint32_t>& s,
                                           const SectionSpace& W) {
  auto value_at = [&](std::size_t w) -> std::uint32_t {
    if (V.min) return F.arrow(*V.min, w)[s[0]];
    auto it = std::lower_bound(V.points.begin(), V.points.end(), w);
    return s[static_cast<std::size_t>(it - V.points.begin())];
  };
  if (W.min) return {value_at(*W.min)};
  std::vector<std::uint32_t> out;
  for (auto w : W.points) out.push_back(value_at(w));
  return out;
}

}  // namespace detail

struct SheafVerdict {
  bool holds = true;
  std::string reason;
};

namespace detail {

inline void check_cover_shape(const PDiagram& F, const Bits& U, const std::vector<Bits>& cover) {
  if (F.variance() != Variance::covariant) throw InputError("the sheaf condition is stated for covariant diagrams");
  if (U.size() != F.base().size() || !is_upper_set(F.base(), U)) throw InputError("U is not an open of the base");
  Bits uni(U.size());
  for (const auto& V : cover) {
    if (V.size() != U.size() || !is_upper_set(F.base(), V)) throw InputError("a cover member is not open");
    if (!V.subset_of(U)) throw InputError("a cover member is not inside U");
    uni |= V;
  }
  if (uni != U) throw InputError("the cover does not cover U");
}

inline SheafVerdict lattice_sheaf_check(const PDiagram& F, const Bits& U, const std::vector<Bits>& cover) {
  const auto& M = F.model();
  const std::size_t N = *F.horizon();
  if (!M.lattice().is_distributive()) return {false, "the ideal lattice is not distributive"};
  // The kernels K_i are the objects at the points {i}.
  std::vector<Elem> ks;
  for (std::size_t i = 0; i <= N; ++i) ks.push_back(F.object((std::size_t{1} << i) - 1));
  auto R = [&](const Bits& V) {
    return R_eval(from_upper_set(N, V), M, [&](std::size_t i) { return ks[i]; });
  };
  std::string bad;
  U.for_each([&](std::size_t p) {
    if (bad.empty() && F.object(p) != R(F.base().up(p)))
      bad = "object at " + F.base().label(p) + " differs from the sum of kernels";
  });
  if (!bad.empty()) return {false, bad};
  Elem meet_cover = M.whole();
  for (const auto& V : cover) meet_cover = M.intersect(meet_cover, R(V));
  if (R(U) != meet_cover) return {false, "R(U) differs from the intersection over the cover"};
  for (const auto& V : cover)
    for (const auto& W : cover)
      if (R(V & W) != M.sum(R(V), R(W))) return {false, "R(V n W) differs from R(V) + R(W)"};
  return {};
}

}  // namespace detail

// The canonical map F(U) -> lim over the intersection closure of the cover
// is a bijection. For ideal objects this reduces to lattice identities.
inline SheafVerdict check_sheaf_condition(const PDiagram& F, const Bits& U, const std::vector<Bits>& cover) {
  detail::check_cover_shape(F, U, cover);
  if (F.kind() == PDiagram::Kind::lattice) return detail::lattice_sheaf_check(F, U, cover);
  auto closure = detail::close_intersections(cover);
  std::vector<detail::SectionSpace> spaces;
  for (const auto& V : closure) spaces.push_back(detail::sections(F, V));
  auto top = detail::sections(F, U);
  const std::size_t m = closure.size();

  // Image of the canonical map.
  std::set<std::vector<std::vector<std::uint32_t>>> image;
  for (const auto& s : top.elems) {
    std::vector<std::vector<std::uint32_t>> fam;
    for (const auto& W : spaces) fam.push_back(detail::restrict(F, top, s, W));
    if (!image.insert(fam).second) return {false, "two sections over U agree on the cover"};
  }
  // Compatible families, larger members first.
  std::size_t count = 0;
  std::vector<std::vector<std::uint32_t>> cur(m);
  bool outside = false;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m) {
      ++count;
      if (!image.count(cur)) outside = true;
      return;
    }
    std::optional<std::vector<std::uint32_t>> forced;
    for (std::size_t j = 0; j < k; ++j) {
      if (!closure[k].subset_of(closure[j])) continue;
      auto r = detail::restrict(F, spaces[j], cur[j], spaces[k]);
      if (forced && *forced != r) return;
      forced = std::move(r);
    }
    if (forced) {
      cur[k] = *forced;
      rec(k + 1);
      return;
    }
    for (const auto& s : spaces[k].elems) {
      cur[k] = s;
      rec(k + 1);
    }
  };
  rec(0);
  if (outside) return {false, "a compatible family over the cover does not come from U"};
  if (count != image.size()) return {false, "some section over U restricts to an incompatible family"};
  return {};
}

inline std::vector<Bits> basic_cover(const FinitePreorder& P, const Bits& U) {
  std::vector<Bits> c;
  U.for_each([&](std::size_t p) { c.push_back(P.up(p)); });
  return c;
}

// Psi: objects(p) = R(up p) = sum_{i in p} K_i over proj_poset(N).
inline PDiagram covering_to_sheaf(std::shared_ptr<const IdealCoveringModel> M, std::size_t N) {
  for (std::size_t i = N + 1; i < M->kernels().size(); ++i)
    if (M->kernel(i) != M->whole())
      throw InputError("kernel " + std::to_string(i) + " lies beyond the horizon " + std::to_string(N));
  check_horizon(N);
  const std::uint64_t count = (std::uint64_t{1} << (N + 1)) - 1;
  std::vector<Elem> obj(count);
  for (std::uint64_t a = 1; a <= count; ++a) obj[a - 1] = R_of({N, {ProjPoint::from_mask(a)}}, *M);
  return PDiagram::lattice(N, std::move(M), std::move(obj));
}

inline PDiagram covering_to_sheaf(const IdealCoveringModel& M, std::size_t N) {
  return covering_to_sheaf(std::make_shared<const IdealCoveringModel>(M), N);
}

// Phi: K_i read off at the points {i}.
inline IdealCoveringModel sheaf_to_covering(const PDiagram& F) {
  if (F.kind() != PDiagram::Kind::lattice || !F.horizon() || F.variance() != Variance::covariant)
    throw InputError("sheaf_to_covering needs a covariant ideal-valued diagram over P^N");
  if (auto v = F.flabby_violation())
    throw DomainError("diagram is not flabby: no quotient arrow from " + F.base().label(v->first) + " to " +
                      F.base().label(v->second));
  std::vector<Elem> ks;
  for (std::size_t i = 0; i <= *F.horizon(); ++i) ks.push_back(F.object((std::size_t{1} << i) - 1));
  return IdealCoveringModel::make(F.model().lattice_ptr(), std::move(ks));
}

namespace detail {

inline std::uint64_t image_mask(const TameSurjection& a, std::uint64_t m) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < 64; ++i)
    if ((m >> i) & 1u) {
      auto v = a(i);
      if (v >= 64) return ~std::uint64_t{0};
      r |= std::uint64_t{1} << v;
    }
  return r;
}

}  // namespace detail

// (alpha^*)_* F over P^{N'}: the object at a is F's object at alpha(a),
// and the zero object once alpha(a) leaves {0..N}.
inline PDiagram pushforward(const TameSurjection& alpha, const PDiagram& F, std::optional<std::size_t> target = {}) {
  if (!F.horizon() || F.variance() != Variance::covariant)
    throw InputError("pushforward needs a covariant diagram over P^N");
  const std::size_t N = *F.horizon();
  const std::size_t need = alpha.preimage_horizon(N);
  const std::size_t Np = target.value_or(need);
  if (Np < need)
    throw InputError("target horizon " + std::to_string(Np) + " is below " + std::to_string(need) +
                     ", where the pushforward still has nonzero objects");
  check_horizon(Np);
  const std::uint64_t count = (std::uint64_t{1} << (Np + 1)) - 1;
  const std::uint64_t inside = (std::uint64_t{1} << (N + 1)) - 1;
  std::vector<std::optional<std::size_t>> src(count);  // F's point, if any
  for (std::uint64_t a = 1; a <= count; ++a) {
    auto im = detail::image_mask(alpha, a);
    if ((im & ~inside) == 0) src[a - 1] = static_cast<std::size_t>(im - 1);
  }
  if (F.kind() == PDiagram::Kind::lattice) {
    std::vector<Elem> obj(count);
    for (std::size_t p = 0; p < count; ++p) obj[p] = src[p] ? F.object(*src[p]) : F.model().whole();
    return PDiagram::lattice(Np, F.model_ptr(), std::move(obj));
  }
  auto base = proj_poset(Np);
  std::vector<std::size_t> sizes(count);
  for (std::size_t p = 0; p < count; ++p) sizes[p] = src[p] ? F.carrier_size(*src[p]) : 1;
  std::map<std::pair<std::size_t, std::size_t>, PDiagram::Map> maps;
  for (std::size_t p = 0; p < count; ++p)
    for (std::size_t q = 0; q < count; ++q) {
      if (p == q || !base.leq(p, q)) continue;
      if (src[q])
        maps[{p, q}] = F.arrow(*src[p], *src[q]);
      else
        maps[{p, q}] = PDiagram::Map(sizes[p], 0);
    }
  return PDiagram::tabulated(std::move(base), std::move(sizes), std::move(maps), Variance::covariant, false, Np);
}

// Equal on the common horizon, zero objects beyond it.
inline bool equal_up_to_padding(const PDiagram& F, const PDiagram& G) {
  if (!F.horizon() || !G.horizon() || F.kind() != G.kind()) return false;
  const bool f_small = *F.horizon() <= *G.horizon();
  const PDiagram& S = f_small ? F : G;
  const PDiagram& B = f_small ? G : F;
  const std::uint64_t small = (std::uint64_t{1} << (*S.horizon() + 1)) - 1;
  const std::uint64_t big = (std::uint64_t{1} << (*B.horizon() + 1)) - 1;
  for (std::uint64_t a = 1; a <= big; ++a) {
    std::size_t p = a - 1;
    if ((a & ~small) != 0) {
      if (!B.is_zero_object(p)) return false;
      continue;
    }
    if (S.kind() == PDiagram::Kind::lattice) {
      if (S.object(p) != B.object(p) || !(S.model() == B.model())) return false;
    } else {
      if (S.carrier_size(p) != B.carrier_size(p)) return false;
      for (std::uint64_t b = a; b <= small; b = (b + 1) | a)
        if ((b & a) == a && S.arrow(p, b - 1) != B.arrow(p, b - 1)) return false;
    }
  }
  return true;
}

// A map g of ground sets X' -> X pulls functions on X back to X'. It sends
// ker pi_j into ker pi'_i exactly when g(C'_i) lies in C_j.
struct CoveringMorphism {
  std::vector<std::size_t> g;  // ground index of C' -> ground index of C

  // Same underlying map of global sections.
  friend bool operator==(const CoveringMorphism&, const CoveringMorphism&) = default;
};

namespace detail {

inline Bits image(const CoveringMorphism& m, const Bits& s, std::size_t target_size) {
  Bits r(target_size);
  s.for_each([&](std::size_t x) { r.set(m.g[x]); });
  return r;
}

}  // namespace detail

// alpha(i) = the least (or greatest) j with g(C'_i) inside C_j for i <= N',
// then i -> i - N' - 1, which keeps alpha surjective.
inline TameSurjection tame_for_morphism(const CoveringSpec& C, const CoveringSpec& Cp, const CoveringMorphism& m,
                                        bool least = true) {
  if (m.g.size() != Cp.ground.size()) throw InputError("morphism must be defined on the whole source ground set");
  for (auto x : m.g)
    if (x >= C.ground.size()) throw InputError("morphism value outside the target ground set");
  std::vector<std::size_t> head;
  for (std::size_t i = 0; i < Cp.parts.size(); ++i) {
    auto img = detail::image(m, Cp.parts[i], C.ground.size());
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < C.parts.size(); ++j)
      if (img.subset_of(C.parts[j]) && (!pick || !least)) pick = j;
    if (!pick) throw DomainError("part " + std::to_string(i) + " is not mapped into any part");
    head.push_back(*pick);
  }
  return TameSurjection::make(std::move(head), Cp.parts.size());
}

// For every point a of P^{N'}: g(C'_a) lies in the intersection of C_{alpha(i)}, i in a.
inline bool morphism_compatible(const CoveringSpec& C, const CoveringSpec& Cp, const CoveringMorphism& m,
                                const TameSurjection& alpha) {
  const std::size_t Np = Cp.horizon();
  check_horizon(Np);
  for (std::uint64_t a = 1; a < (std::uint64_t{1} << (Np + 1)); ++a) {
    Bits src = Bits::full(Cp.ground.size()), dst = Bits::full(C.ground.size());
    for (std::size_t i = 0; i <= Np; ++i)
      if ((a >> i) & 1u) {
        if (alpha(i) >= C.parts.size()) return false;
        src &= Cp.parts[i];
        dst &= C.parts[alpha(i)];
      }
    if (!detail::image(m, src, C.ground.size()).subset_of(dst)) return false;
  }
  return true;
}

}  // namespace posetsheaf
