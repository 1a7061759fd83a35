#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posetsheaf/bits.hpp"
#include "posetsheaf/error.hpp"

namespace posetsheaf {

namespace detail {

struct OrderData {
  std::size_t n = 0;
  std::vector<std::string> labels;                     // empty when labels are computed
  std::function<std::string(std::size_t)> labeler;     // used when labels is empty
  std::unordered_map<std::string, std::size_t> index;  // empty when labels are computed
  std::vector<Bits> up, down;                          // reflexive; empty for mask-only storage
  std::vector<std::uint64_t> masks;                    // subset-order storage, leq = inclusion
};

// Carriers with more elements than this keep only the subset masks.
inline constexpr std::size_t kDenseOrderLimit = 8192;

}  // namespace detail

// A finite preordered set with interned labels. Immutable; copies share storage.
class FinitePreorder {
 public:
  FinitePreorder() : d_(std::make_shared<detail::OrderData>()) {}

  // `leq` holds index pairs (p, q) meaning p <= q. Reflexive and transitive
  // closure is taken here.
  static FinitePreorder from_relation(std::vector<std::string> labels,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& leq) {
    auto d = std::make_shared<detail::OrderData>();
    d->n = labels.size();
    d->labels = std::move(labels);
    index_labels(*d);
    d->up.assign(d->n, Bits(d->n));
    for (std::size_t p = 0; p < d->n; ++p) d->up[p].set(p);
    for (auto [p, q] : leq) {
      if (p >= d->n || q >= d->n) throw InputError("relation refers to an element index out of range");
      d->up[p].set(q);
    }
    // Warshall: if p <= k then up(k) is contained in up(p).
    for (std::size_t k = 0; k < d->n; ++k)
      for (std::size_t p = 0; p < d->n; ++p)
        if (p != k && d->up[p].test(k)) d->up[p] |= d->up[k];
    fill_down(*d);
    return FinitePreorder(std::move(d));
  }

  static FinitePreorder from_labeled(std::vector<std::string> labels,
                                     const std::vector<std::pair<std::string, std::string>>& leq) {
    FinitePreorder tmp = from_relation(labels, {});
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(leq.size());
    for (const auto& [p, q] : leq) idx.emplace_back(tmp.index_of(p), tmp.index_of(q));
    return from_relation(std::move(labels), idx);
  }

  // Elements are the given bitmasks, ordered by inclusion.
  static FinitePreorder subset_order(std::vector<std::uint64_t> masks,
                                     std::function<std::string(std::uint64_t)> mask_label) {
    auto d = std::make_shared<detail::OrderData>();
    d->n = masks.size();
    d->masks = std::move(masks);
    if (d->n <= detail::kDenseOrderLimit) {
      d->labels.reserve(d->n);
      for (auto m : d->masks) d->labels.push_back(mask_label(m));
      index_labels(*d);
      d->up.assign(d->n, Bits(d->n));
      for (std::size_t p = 0; p < d->n; ++p)
        for (std::size_t q = 0; q < d->n; ++q)
          if ((d->masks[p] & ~d->masks[q]) == 0) d->up[p].set(q);
      fill_down(*d);
    } else {
      auto m = d->masks;  // the labeler must not keep d alive through a cycle
      d->labeler = [m = std::move(m), mask_label = std::move(mask_label)](std::size_t i) {
        return mask_label(m[i]);
      };
    }
    return FinitePreorder(std::move(d));
  }

  std::size_t size() const { return d_->n; }
  bool dense() const { return d_->up.size() == d_->n; }
  bool has_masks() const { return !d_->masks.empty() || d_->n == 0; }
  std::uint64_t mask(std::size_t p) const { return d_->masks.at(p); }

  std::string label(std::size_t p) const {
    return d_->labels.empty() ? d_->labeler(p) : d_->labels[p];
  }
  std::vector<std::string> labels() const {
    if (!d_->labels.empty() || d_->n == 0) return d_->labels;
    std::vector<std::string> out;
    for (std::size_t p = 0; p < d_->n; ++p) out.push_back(label(p));
    return out;
  }
  std::optional<std::size_t> find(const std::string& l) const {
    if (!d_->labels.empty() || d_->n == 0) {
      auto it = d_->index.find(l);
      if (it == d_->index.end()) return std::nullopt;
      return it->second;
    }
    for (std::size_t p = 0; p < d_->n; ++p)
      if (label(p) == l) return p;
    return std::nullopt;
  }
  std::size_t index_of(const std::string& l) const {
    if (auto p = find(l)) return *p;
    throw InputError("unknown element label '" + l + "'");
  }

  bool leq(std::size_t p, std::size_t q) const {
    if (dense()) return d_->up[p].test(q);
    return (d_->masks[p] & ~d_->masks[q]) == 0;
  }
  bool less(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }

  // Reflexive up-set / down-set of a single element.
  Bits up(std::size_t p) const {
    if (dense()) return d_->up[p];
    Bits b(d_->n);
    for (std::size_t q = 0; q < d_->n; ++q)
      if (leq(p, q)) b.set(q);
    return b;
  }
  Bits down(std::size_t p) const {
    if (dense()) return d_->down[p];
    Bits b(d_->n);
    for (std::size_t q = 0; q < d_->n; ++q)
      if (leq(q, p)) b.set(q);
    return b;
  }
  const Bits& up_ref(std::size_t p) const { return d_->up.at(p); }
  const Bits& down_ref(std::size_t p) const { return d_->down.at(p); }

  bool is_antisymmetric() const {
    for (std::size_t p = 0; p < size(); ++p)
      for (std::size_t q = p + 1; q < size(); ++q)
        if (leq(p, q) && leq(q, p)) return false;
    return true;
  }

  // Same labels and same relation.
  friend bool operator==(const FinitePreorder& a, const FinitePreorder& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t p = 0; p < a.size(); ++p)
      if (a.label(p) != b.label(p)) return false;
    for (std::size_t p = 0; p < a.size(); ++p)
      for (std::size_t q = 0; q < a.size(); ++q)
        if (a.leq(p, q) != b.leq(p, q)) return false;
    return true;
  }

  // Reversed relation, same labels.
  FinitePreorder reversed() const {
    if (!dense()) throw ResourceError("dense_order", detail::kDenseOrderLimit, "opposite of a mask-only carrier");
    auto d = std::make_shared<detail::OrderData>(*d_);
    std::swap(d->up, d->down);
    d->masks.clear();
    return FinitePreorder(std::move(d));
  }

 protected:
  explicit FinitePreorder(std::shared_ptr<const detail::OrderData> d) : d_(std::move(d)) {}

 private:
  static void index_labels(detail::OrderData& d) {
    for (std::size_t i = 0; i < d.labels.size(); ++i)
      if (!d.index.emplace(d.labels[i], i).second) throw InputError("duplicate element label '" + d.labels[i] + "'");
  }
  static void fill_down(detail::OrderData& d) {
    d.down.assign(d.n, Bits(d.n));
    for (std::size_t p = 0; p < d.n; ++p) d.up[p].for_each([&](std::size_t q) { d.down[q].set(p); });
  }

  std::shared_ptr<const detail::OrderData> d_;
};

class FinitePoset : public FinitePreorder {
 public:
  FinitePoset() = default;

  static FinitePoset from(FinitePreorder p) {
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b)
        if (p.leq(a, b) && p.leq(b, a))
          throw InputError("antisymmetry violated by '" + p.label(a) + "' and '" + p.label(b) + "'");
    return FinitePoset(std::move(p));
  }
  static FinitePoset from_relation(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& leq) {
    return from(FinitePreorder::from_relation(std::move(labels), leq));
  }
  static FinitePoset from_labeled(std::vector<std::string> labels,
                                  const std::vector<std::pair<std::string, std::string>>& leq) {
    return from(FinitePreorder::from_labeled(std::move(labels), leq));
  }

  FinitePoset reversed() const { return FinitePoset(FinitePreorder::reversed()); }

 private:
  explicit FinitePoset(FinitePreorder p) : FinitePreorder(std::move(p)) {}
};

// Members are indices into the carrier this set was built from.
struct UpperSet {
  Bits members;

  bool contains(std::size_t p) const { return members.test(p); }
  std::size_t size() const { return members.count(); }
  friend bool operator==(const UpperSet& a, const UpperSet& b) { return a.members == b.members; }
  friend bool operator<(const UpperSet& a, const UpperSet& b) { return a.members < b.members; }
};

inline bool is_upper_set(const FinitePreorder& P, const Bits& s) {
  bool ok = true;
  s.for_each([&](std::size_t p) {
    if (ok && !P.up(p).subset_of(s)) ok = false;
  });
  return ok;
}

inline bool is_lower_set(const FinitePreorder& P, const Bits& s) {
  bool ok = true;
  s.for_each([&](std::size_t p) {
    if (ok && !P.down(p).subset_of(s)) ok = false;
  });
  return ok;
}

inline UpperSet up_set(const FinitePreorder& P, const Bits& s) {
  if (s.size() != P.size()) throw InputError("subset width does not match the carrier");
  Bits r(P.size());
  s.for_each([&](std::size_t p) { r |= P.up(p); });
  return {std::move(r)};
}

inline UpperSet up_set(const FinitePreorder& P, const std::vector<std::string>& labels) {
  Bits s(P.size());
  for (const auto& l : labels) s.set(P.index_of(l));
  return up_set(P, s);
}

inline Bits down_set(const FinitePreorder& P, const Bits& s) {
  Bits r(P.size());
  s.for_each([&](std::size_t p) { r |= P.down(p); });
  return r;
}

namespace detail {

// Decides each element in turn: forced in if something decided-in lies
// below it, forbidden if something decided-out lies above it. Neither can
// hold together, so every leaf is an upper set and none is visited twice.
template <class F>
void enumerate_upper_sets(const FinitePreorder& P, F&& emit) {
  const std::size_t n = P.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> upc(n);
  for (std::size_t p = 0; p < n; ++p) upc[p] = P.up(p).count();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return upc[a] < upc[b]; });
  std::vector<Bits> up(n), down(n);
  for (std::size_t p = 0; p < n; ++p) {
    up[p] = P.up(p);
    down[p] = P.down(p);
  }
  Bits in(n), out(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      emit(in);
      return;
    }
    std::size_t x = order[k];
    bool forced = down[x].intersects(in);
    bool forbidden = up[x].intersects(out);
    if (!forced) {
      out.set(x);
      rec(k + 1);
      out.reset(x);
    }
    if (!forbidden) {
      in.set(x);
      rec(k + 1);
      in.reset(x);
    }
  };
  rec(0);
}

// Same walk on carriers of at most 64 elements given as up/down masks.
template <class F>
void enumerate_upper_masks(const std::vector<std::uint64_t>& up, const std::vector<std::uint64_t>& down, F&& emit) {
  const std::size_t n = up.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return std::popcount(up[a]) < std::popcount(up[b]); });
  std::uint64_t in = 0, out = 0;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      emit(in);
      return;
    }
    std::size_t x = order[k];
    std::uint64_t bit = std::uint64_t{1} << x;
    bool forced = down[x] & in;
    bool forbidden = up[x] & out;
    if (!forced) {
      out |= bit;
      self(self, k + 1);
      out &= ~bit;
    }
    if (!forbidden) {
      in |= bit;
      self(self, k + 1);
      in &= ~bit;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

inline std::vector<UpperSet> alexandrov_opens(const FinitePreorder& P, std::size_t max_elems) {
  if (P.size() > max_elems)
    throw ResourceError("max_elems", max_elems, "alexandrov_opens on " + std::to_string(P.size()) + " elements");
  std::vector<UpperSet> out;
  detail::enumerate_upper_sets(P, [&](const Bits& b) { out.push_back({b}); });
  std::sort(out.begin(), out.end(), [](const UpperSet& a, const UpperSet& b) {
    auto ca = a.size(), cb = b.size();
    return ca != cb ? ca < cb : a.members < b.members;
  });
  return out;
}

inline std::vector<UpperSet> alexandrov_opens(const FinitePreorder& P) {
  return alexandrov_opens(P, default_limits().max_elems);
}

inline std::size_t count_opens(const FinitePreorder& P, std::size_t max_elems) {
  if (P.size() > max_elems)
    throw ResourceError("max_elems", max_elems, "count_opens on " + std::to_string(P.size()) + " elements");
  std::size_t c = 0;
  detail::enumerate_upper_sets(P, [&](const Bits&) { ++c; });
  return c;
}

// Complements of the opens.
inline std::vector<Bits> closed_sets(const FinitePreorder& P, std::size_t max_elems) {
  std::vector<Bits> out;
  for (const auto& u : alexandrov_opens(P, max_elems)) out.push_back(u.members.complement());
  std::sort(out.begin(), out.end());
  return out;
}

inline FinitePoset opposite(const FinitePoset& P) { return P.reversed(); }
inline FinitePreorder opposite(const FinitePreorder& P) { return P.reversed(); }

// f[p] is the index in Q of the image of p.
inline bool is_monotone(const std::vector<std::size_t>& f, const FinitePreorder& P, const FinitePreorder& Q) {
  if (f.size() != P.size()) throw InputError("mapping is not defined on every element of the domain");
  for (auto v : f)
    if (v >= Q.size()) throw InputError("mapping value outside the codomain");
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      if (P.leq(p, q) && !Q.leq(f[p], f[q])) return false;
  return true;
}

inline bool is_monotone(const std::unordered_map<std::string, std::string>& f, const FinitePreorder& P,
                        const FinitePreorder& Q) {
  std::vector<std::size_t> idx(P.size());
  for (std::size_t p = 0; p < P.size(); ++p) {
    auto it = f.find(P.label(p));
    if (it == f.end()) throw InputError("mapping undefined at '" + P.label(p) + "'");
    idx[p] = Q.index_of(it->second);
  }
  if (f.size() != P.size()) throw InputError("mapping has labels outside the domain");
  return is_monotone(idx, P, Q);
}

struct TopoReport {
  bool is_T0 = true;
  bool is_T1 = true;
  bool is_connected = true;
  friend bool operator==(const TopoReport&, const TopoReport&) = default;
};

inline TopoReport topo_report(const FinitePreorder& P) {
  TopoReport r;
  const std::size_t n = P.size();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      // up(p) and up(q) separate p from q unless each lies above the other.
      if (P.leq(p, q) && P.leq(q, p)) r.is_T0 = false;
      // closure of {p} is down(p); a point below p keeps it from being closed.
      if (P.leq(q, p)) r.is_T1 = false;
    }
  // A clopen upper set is a union of components of the comparability graph.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (P.leq(p, q)) parent[root(p)] = root(q);
  for (std::size_t p = 1; p < n; ++p)
    if (root(p) != root(0)) r.is_connected = false;
  return r;
}

// Covering pairs (p, q): p < q with nothing strictly between.
inline std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const FinitePreorder& P) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < P.size(); ++p) {
    Bits strict = P.up(p);
    strict.reset(p);
    Bits covers = strict;
    strict.for_each([&](std::size_t r) {
      Bits above = P.up(r);
      above.reset(r);
      covers -= above;
    });
    covers.for_each([&](std::size_t q) {
      if (!P.leq(q, p)) out.emplace_back(p, q);
    });
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> strict_relations(const FinitePreorder& P) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      if (p != q && P.leq(p, q)) out.emplace_back(p, q);
  return out;
}

}  // namespace posetsheaf
