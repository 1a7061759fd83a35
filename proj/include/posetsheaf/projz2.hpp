#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "posetsheaf/error.hpp"
#include "posetsheaf/order.hpp"

namespace posetsheaf {

// A point of P^N(Z/2) or of its finitely supported colimit, given by the
// set of coordinates equal to 1.
struct ProjPoint {
  std::vector<std::size_t> support;  // sorted, distinct, nonempty

  static ProjPoint of(std::vector<std::size_t> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw InputError("a projective point needs a nonempty support");
    return {std::move(s)};
  }
  static ProjPoint from_mask(std::uint64_t m) {
    ProjPoint p;
    for (std::size_t i = 0; i < 64; ++i)
      if ((m >> i) & 1u) p.support.push_back(i);
    if (p.support.empty()) throw InputError("a projective point needs a nonempty support");
    return p;
  }
  std::size_t max_index() const { return support.back(); }
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (auto i : support) {
      if (i >= 64) throw ResourceError("mask_bits", 64, "support index " + std::to_string(i));
      m |= std::uint64_t{1} << i;
    }
    return m;
  }
  bool subset_of(const ProjPoint& o) const { return std::includes(o.support.begin(), o.support.end(), support.begin(), support.end()); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.support < b.support; }
};

inline std::string to_string(const ProjPoint& p) {
  std::string s = "{";
  for (std::size_t k = 0; k < p.support.size(); ++k) s += (k ? "," : "") + std::to_string(p.support[k]);
  return s + "}";
}

inline void check_horizon(std::size_t N) {
  if (N > default_limits().max_proj_horizon)
    throw ResourceError("max_proj_horizon", default_limits().max_proj_horizon,
                        "projective horizon " + std::to_string(N));
}

// Nonempty subsets of {0..N} ordered by inclusion. The element for the
// subset with bitmask m has index m - 1.
inline FinitePoset proj_poset(std::size_t N) {
  check_horizon(N);
  const std::uint64_t count = (std::uint64_t{1} << (N + 1)) - 1;
  std::vector<std::uint64_t> masks(count);
  for (std::uint64_t m = 1; m <= count; ++m) masks[m - 1] = m;
  return FinitePoset::from(FinitePreorder::subset_order(std::move(masks), [](std::uint64_t m) {
    return to_string(ProjPoint::from_mask(m));
  }));
}

inline std::size_t proj_index(const ProjPoint& p) { return static_cast<std::size_t>(p.mask() - 1); }
inline ProjPoint proj_point(std::size_t index) { return ProjPoint::from_mask(static_cast<std::uint64_t>(index) + 1); }

// An open subset of P^N given by the minimal points of the upper set.
struct OpenSetRep {
  std::size_t horizon = 0;
  std::vector<ProjPoint> antichain;  // sorted minimal generators

  bool contains(const ProjPoint& p) const {
    for (const auto& a : antichain)
      if (a.subset_of(p)) return true;
    return false;
  }
  bool contains_mask(std::uint64_t m) const {
    for (const auto& a : antichain)
      if ((a.mask() & ~m) == 0) return true;
    return false;
  }
  bool empty() const { return antichain.empty(); }
  friend bool operator==(const OpenSetRep&, const OpenSetRep&) = default;
};

// Drops non-minimal generators and sorts.
inline OpenSetRep make_open(std::size_t N, std::vector<ProjPoint> gens) {
  for (const auto& g : gens)
    if (g.support.empty() || g.max_index() > N)
      throw InputError("open generator " + to_string(g) + " outside horizon " + std::to_string(N));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<ProjPoint> mins;
  for (const auto& g : gens) {
    bool minimal = true;
    for (const auto& h : gens)
      if (!(h == g) && h.subset_of(g)) {
        minimal = false;
        break;
      }
    if (minimal) mins.push_back(g);
  }
  return {N, std::move(mins)};
}

inline OpenSetRep basic_open(const std::vector<std::size_t>& a, std::size_t N) {
  if (a.empty()) throw InputError("basic_open needs a nonempty index set");
  auto p = ProjPoint::of(a);
  if (p.max_index() > N) throw InputError("index set " + to_string(p) + " exceeds horizon " + std::to_string(N));
  return {N, {p}};
}

inline OpenSetRep whole_space(std::size_t N) {
  std::vector<ProjPoint> g;
  for (std::size_t i = 0; i <= N; ++i) g.push_back({{i}});
  return {N, std::move(g)};
}

inline OpenSetRep open_union(const OpenSetRep& U, const OpenSetRep& V) {
  if (U.horizon != V.horizon) throw InputError("opens at different horizons");
  auto g = U.antichain;
  g.insert(g.end(), V.antichain.begin(), V.antichain.end());
  return make_open(U.horizon, std::move(g));
}

// up(a) intersect up(b) = up(a union b).
inline OpenSetRep open_intersection(const OpenSetRep& U, const OpenSetRep& V) {
  if (U.horizon != V.horizon) throw InputError("opens at different horizons");
  std::vector<ProjPoint> g;
  for (const auto& a : U.antichain)
    for (const auto& b : V.antichain) {
      ProjPoint c;
      std::set_union(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(), std::back_inserter(c.support));
      g.push_back(std::move(c));
    }
  return make_open(U.horizon, std::move(g));
}

// Members as an upper set of proj_poset(horizon).
inline UpperSet to_upper_set(const OpenSetRep& U) {
  check_horizon(U.horizon);
  const std::uint64_t count = (std::uint64_t{1} << (U.horizon + 1)) - 1;
  Bits b(count);
  for (std::uint64_t m = 1; m <= count; ++m)
    if (U.contains_mask(m)) b.set(m - 1);
  return {std::move(b)};
}

inline OpenSetRep from_upper_set(std::size_t N, const Bits& members) {
  std::vector<ProjPoint> g;
  members.for_each([&](std::size_t i) { g.push_back(proj_point(i)); });
  return make_open(N, std::move(g));
}

// All opens of P^N (bounded by the carrier size limit).
inline std::vector<OpenSetRep> all_opens(std::size_t N, std::size_t max_elems = default_limits().max_elems) {
  auto P = proj_poset(N);
  std::vector<OpenSetRep> out;
  for (const auto& u : alexandrov_opens(P, max_elems)) out.push_back(from_upper_set(N, u.members));
  return out;
}

// The inclusion P^N -> P^{N+1}.
inline ProjPoint phi_embed(const ProjPoint& p, std::size_t N) {
  if (p.support.empty() || p.max_index() > N)
    throw InputError("point " + to_string(p) + " is not in P^" + std::to_string(N));
  return p;
}

// Preimage under P^N -> P^{N+1} of an open at horizon N+1.
inline OpenSetRep phi_preimage(const OpenSetRep& U) {
  if (U.horizon == 0) throw InputError("phi_preimage needs an open at horizon >= 1");
  const std::size_t N = U.horizon - 1;
  std::vector<ProjPoint> g;
  for (const auto& a : U.antichain)
    if (a.max_index() <= N) g.push_back(a);
  return make_open(N, std::move(g));
}

// A surjection of the naturals, given by a finite head and a shift:
// i < head.size() maps to head[i], larger i to i - offset.
class TameSurjection {
 public:
  static TameSurjection make(std::vector<std::size_t> head, std::size_t offset) {
    if (offset > head.size())
      throw InputError("tail offset " + std::to_string(offset) + " exceeds head length " + std::to_string(head.size()));
    const std::size_t gap = head.size() - offset;  // tail covers [gap, inf)
    std::vector<char> hit(gap, 0);
    for (auto v : head)
      if (v < gap) hit[v] = 1;
    for (std::size_t v = 0; v < gap; ++v)
      if (!hit[v]) throw InputError("not surjective: " + std::to_string(v) + " has no preimage");
    TameSurjection t;
    t.head_ = std::move(head);
    t.offset_ = offset;
    t.normalize();
    return t;
  }
  static TameSurjection identity() { return make({}, 0); }
  // 0 -> 0, i -> i - 1 for i > 0.
  static TameSurjection boundary() { return make({0}, 1); }
  static TameSurjection transposition(std::size_t a, std::size_t b) {
    std::vector<std::size_t> h(std::max(a, b) + 1);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = i;
    std::swap(h[a], h[b]);
    return make(std::move(h), 0);
  }

  std::size_t operator()(std::size_t i) const { return i < head_.size() ? head_[i] : i - offset_; }
  const std::vector<std::size_t>& head() const { return head_; }
  std::size_t offset() const { return offset_; }

  // alpha^{-1}(a), sorted.
  std::vector<std::size_t> preimage(const std::vector<std::size_t>& a) const {
    std::vector<std::size_t> out;
    for (auto v : a) {
      for (std::size_t i = 0; i < head_.size(); ++i)
        if (head_[i] == v) out.push_back(i);
      if (v + offset_ >= head_.size()) out.push_back(v + offset_);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  // max alpha^{-1}({0..N}): the horizon at which alpha^* sees P^N.
  std::size_t preimage_horizon(std::size_t N) const {
    std::vector<std::size_t> all(N + 1);
    for (std::size_t i = 0; i <= N; ++i) all[i] = i;
    return preimage(all).back();
  }

  friend bool operator==(const TameSurjection&, const TameSurjection&) = default;

 private:
  // Shortest head describing the same function.
  void normalize() {
    while (!head_.empty() && head_.size() - 1 >= offset_ && head_.back() == head_.size() - 1 - offset_) head_.pop_back();
  }
  std::vector<std::size_t> head_;
  std::size_t offset_ = 0;
};

// alpha o beta.
inline TameSurjection compose_tame(const TameSurjection& alpha, const TameSurjection& beta) {
  const std::size_t K = std::max(beta.head().size(), alpha.head().size() + beta.offset());
  std::vector<std::size_t> head(K);
  for (std::size_t i = 0; i < K; ++i) head[i] = alpha(beta(i));
  return TameSurjection::make(std::move(head), alpha.offset() + beta.offset());
}

// alpha^*(chi_a) = chi_{alpha^{-1}(a)}.
inline ProjPoint act_tame(const TameSurjection& alpha, const ProjPoint& p) {
  return ProjPoint::of(alpha.preimage(p.support));
}

inline std::string to_string(const TameSurjection& t) {
  std::string s = "head{";
  for (std::size_t i = 0; i < t.head().size(); ++i) s += (i ? "," : "") + std::to_string(i) + ":" + std::to_string(t.head()[i]);
  return s + "} offset " + std::to_string(t.offset());
}

// The continuous map P^N -> P^M determined by X(A_i) for i = 0..M:
// f(z) = chi_a with a = { i : z in X(A_i) }. Returned as proj indices.
inline std::vector<std::size_t> function_from_lattice_morphism(const std::vector<OpenSetRep>& X, std::size_t N,
                                                               std::size_t M) {
  check_horizon(N);
  check_horizon(M);
  if (X.size() != M + 1) throw InputError("need one open for each A_i, i = 0.." + std::to_string(M));
  for (const auto& U : X)
    if (U.horizon != N) throw InputError("every X(A_i) must live at horizon " + std::to_string(N));
  const std::uint64_t count = (std::uint64_t{1} << (N + 1)) - 1;
  std::vector<std::size_t> f(count);
  for (std::uint64_t z = 1; z <= count; ++z) {
    std::uint64_t a = 0;
    for (std::size_t i = 0; i <= M; ++i)
      if (X[i].contains_mask(z)) a |= std::uint64_t{1} << i;
    if (!a) throw DomainError("the opens X(A_i) do not cover the point " + to_string(ProjPoint::from_mask(z)));
    f[z - 1] = static_cast<std::size_t>(a - 1);
  }
  return f;
}

// X_f(A_i) = f^{-1}(A_i) for a map given as proj indices.
inline std::vector<OpenSetRep> preimage_morphism(const std::vector<std::size_t>& f, std::size_t N, std::size_t M) {
  check_horizon(N);
  check_horizon(M);
  const std::uint64_t count = (std::uint64_t{1} << (N + 1)) - 1;
  if (f.size() != count) throw InputError("map must be defined on all of P^" + std::to_string(N));
  std::vector<OpenSetRep> X;
  for (std::size_t i = 0; i <= M; ++i) {
    std::vector<ProjPoint> g;
    for (std::uint64_t z = 1; z <= count; ++z)
      if (((static_cast<std::uint64_t>(f[z - 1]) + 1) >> i) & 1u) g.push_back(ProjPoint::from_mask(z));
    X.push_back(make_open(N, std::move(g)));
  }
  return X;
}

// sigma with f(chi_a) = chi_{sigma^{-1}(a)} when f (a self-map of P^N in
// proj indices) is a homeomorphism; sigma[j] = i means f({i}) = {j}.
inline std::optional<std::vector<std::size_t>> homeo_permutation(const std::vector<std::size_t>& f, std::size_t N) {
  check_horizon(N);
  const std::uint64_t count = (std::uint64_t{1} << (N + 1)) - 1;
  if (f.size() != count) throw InputError("map must be defined on all of P^" + std::to_string(N));
  std::vector<char> seen(count, 0);
  for (auto v : f) {
    if (v >= count) throw InputError("map value outside P^" + std::to_string(N));
    if (seen[v]) return std::nullopt;
    seen[v] = 1;
  }
  std::vector<std::size_t> sigma(N + 1, N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    std::uint64_t img = static_cast<std::uint64_t>(f[(std::uint64_t{1} << i) - 1]) + 1;
    if (std::popcount(img) != 1) return std::nullopt;
    std::size_t j = static_cast<std::size_t>(std::countr_zero(img));
    sigma[j] = i;
  }
  for (std::uint64_t a = 1; a <= count; ++a) {
    std::uint64_t pre = 0;
    for (std::size_t j = 0; j <= N; ++j)
      if ((a >> sigma[j]) & 1u) pre |= std::uint64_t{1} << j;
    if (static_cast<std::uint64_t>(f[a - 1]) + 1 != pre) return std::nullopt;
  }
  return sigma;
}

}  // namespace posetsheaf
