#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "posetsheaf/bits.hpp"
#include "posetsheaf/toeplitz/tensor.hpp"

namespace posetsheaf::toeplitz {

// (b_0, ..., b_N) with every b_i in T^{(x)N}.
template <class K = Rational>
struct PullbackTuple {
  std::size_t n = 0;
  std::vector<MixedTensor<K>> components;

  static PullbackTuple zero(std::size_t n) {
    PullbackTuple t;
    t.n = n;
    t.components.assign(n + 1, MixedTensor<K>(std::string(n, 'T')));
    return t;
  }
  void validate() const {
    if (n < 1) throw InputError("tuple dimension must be at least 1");
    if (components.size() != n + 1) throw InputError("a tuple of dimension N needs N + 1 components");
    for (const auto& c : components)
      if (c.shape() != std::string(n, 'T')) throw InputError("tuple components must have shape " + std::string(n, 'T'));
  }
  friend bool operator==(const PullbackTuple& a, const PullbackTuple& b) {
    return a.n == b.n && a.components == b.components;
  }
  friend PullbackTuple operator*(const PullbackTuple& a, const PullbackTuple& b) {
    PullbackTuple r = a;
    for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] = a.components[i] * b.components[i];
    return r;
  }
  friend PullbackTuple operator+(const PullbackTuple& a, const PullbackTuple& b) {
    PullbackTuple r = a;
    for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] += b.components[i];
    return r;
  }
};

// 1-indexed tensor position of index k inside chart m (k != m).
inline std::size_t chart_position(std::size_t m, std::size_t k) { return k < m ? k + 1 : k; }

// pi^m_k: chart m onto the overlap with chart k. Both sides of a glued
// pair land in the overlap space with the S factor at max(m, k).
template <class K>
MixedTensor<K> pi(std::size_t m, std::size_t k, const MixedTensor<K>& x, GluingConfig cfg = {}) {
  if (m == k) throw InputError("pi needs distinct indices");
  if (m < k) return sigma_k(k, x);
  return psi_ij(k, m, sigma_k(k + 1, x), cfg);
}

struct MemberVerdict {
  bool member = true;
  std::optional<std::pair<std::size_t, std::size_t>> failing;
};

template <class K>
MemberVerdict is_member(const PullbackTuple<K>& t, GluingConfig cfg = {}) {
  t.validate();
  for (std::size_t i = 0; i <= t.n; ++i)
    for (std::size_t j = i + 1; j <= t.n; ++j)
      if (pi(i, j, t.components[i], cfg) != pi(j, i, t.components[j], cfg)) return {false, std::make_pair(i, j)};
  return {};
}

template <class K = Rational>
using Partial = std::map<std::size_t, MixedTensor<K>>;

// Completes a compatible partial family by sequential section lifting.
template <class K>
PullbackTuple<K> extend_partial(const Partial<K>& partial, std::size_t n, GluingConfig cfg = {}) {
  if (n < 1) throw InputError("dimension must be at least 1");
  const std::string shape(n, 'T');
  for (const auto& [i, b] : partial) {
    if (i > n) throw InputError("component index " + std::to_string(i) + " exceeds N = " + std::to_string(n));
    if (b.shape() != shape) throw InputError("component " + std::to_string(i) + " must have shape " + shape);
  }
  for (auto a = partial.begin(); a != partial.end(); ++a)
    for (auto b = std::next(a); b != partial.end(); ++b)
      if (pi(a->first, b->first, a->second, cfg) != pi(b->first, a->first, b->second, cfg))
        throw DomainError("partial family is incompatible at pair (" + std::to_string(a->first) + ", " +
                          std::to_string(b->first) + ")");

  auto t = PullbackTuple<K>::zero(n);
  std::vector<bool> fixed(n + 1, false);
  for (const auto& [i, b] : partial) {
    t.components[i] = b;
    fixed[i] = true;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (fixed[k]) continue;
    MixedTensor<K> b(shape);
    for (std::size_t i = 0; i <= n; ++i) {
      if (!fixed[i] || i == k) continue;
      std::size_t p = chart_position(k, i);
      MixedTensor<K> required = i < k ? psi_ij_inv(i, k, sigma_k(k, t.components[i]), cfg)
                                      : psi_ij(k, i, sigma_k(k + 1, t.components[i]), cfg);
      b += section_k(p, required - sigma_k(p, b));
    }
    t.components[k] = std::move(b);
    fixed[k] = true;
  }
  auto v = is_member(t, cfg);
  if (!v.member)
    throw InternalError("extension violates gluing at pair (" + std::to_string(v.failing->first) + ", " +
                        std::to_string(v.failing->second) + ")");
  return t;
}

namespace detail {

inline void check_triple(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  if (i > n || j > n || k > n) throw InputError("index outside 0..N");
  if (i == j || j == k || i == k) throw InputError("phi needs three distinct indices");
}

template <class K>
void require_double_symbol(const MixedTensor<K>& x, std::size_t chart, std::size_t a, std::size_t b, const char* what) {
  std::string want(x.length(), 'T');
  want[chart_position(chart, a) - 1] = 'S';
  want[chart_position(chart, b) - 1] = 'S';
  if (x.shape() != want) throw InputError(std::string(what) + ": expected shape " + want + ", got " + x.shape());
}

}  // namespace detail

// Double-symbol representative of b_j modulo ker pi^j_i + ker pi^j_k.
template <class K>
MixedTensor<K> double_symbol(std::size_t j, std::size_t i, std::size_t k, const MixedTensor<K>& b) {
  auto p = chart_position(j, i), q = chart_position(j, k);
  return sigma_k(q, sigma_k(p, b));
}

// phi^{ij}_k on double-symbol classes: B_j/(ker pi^j_i + ker pi^j_k) -> B_i/(ker pi^i_j + ker pi^i_k).
template <class K>
MixedTensor<K> phi_quotient(std::size_t i, std::size_t j, std::size_t k, const MixedTensor<K>& x, GluingConfig cfg = {}) {
  const std::size_t n = x.length();
  detail::check_triple(n, i, j, k);
  detail::require_double_symbol(x, j, i, k, "phi input");
  MixedTensor<K> r = i < j ? chi(j, psi(chi_inv(i + 1, x), cfg)) : chi(j + 1, psi(chi_inv(i, x), cfg));
  detail::require_double_symbol(r, i, j, k, "phi output");
  return r;
}

// The same composite on an all-T representative, with the inverse symbol
// realized by the section; the result is reduced to its double symbol.
template <class K>
MixedTensor<K> phi_on_representative(std::size_t i, std::size_t j, std::size_t k, const MixedTensor<K>& b,
                                     GluingConfig cfg = {}) {
  const std::size_t n = b.length();
  detail::check_triple(n, i, j, k);
  MixedTensor<K> lifted = i < j ? section_k(j, chi(j, psi(chi_inv(i + 1, sigma_k(i + 1, b)), cfg)))
                                : section_k(j + 1, chi(j + 1, psi(chi_inv(i, sigma_k(i, b)), cfg)));
  return double_symbol(i, j, k, lifted);
}

struct CheckReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;  // first failing case, empty when ok
};

namespace detail {

// Calls f on every basis tensor of `shape` with T exponents in [0, e] and S exponents in [-e, e].
template <class F>
void for_each_basis(const std::string& shape, std::int64_t e, F&& f) {
  Basis b(shape.size());
  for (std::size_t p = 0; p < shape.size(); ++p) b[p] = shape[p] == 'T' ? Factor{0, 0} : Factor{-e, 0};
  while (true) {
    if (!f(b)) return;
    std::size_t p = 0;
    for (; p < shape.size(); ++p) {
      auto& fa = b[p];
      if (shape[p] == 'T') {
        if (fa.b < e) {
          ++fa.b;
          break;
        }
        fa.b = 0;
        if (fa.a < e) {
          ++fa.a;
          break;
        }
        fa.a = 0;
      } else {
        if (fa.a < e) {
          ++fa.a;
          break;
        }
        fa.a = -e;
      }
    }
    if (p == shape.size()) return;
  }
}

template <class K>
std::string describe(const MixedTensor<K>& x) {
  return x.shape() + ": " + to_string(x);
}

}  // namespace detail

// Psi o Psi = id on every basis tensor of shape T^{N-1} S with exponents <= e.
template <class K = Rational>
CheckReport verify_unipotent(std::size_t n, std::int64_t e = 3, GluingConfig cfg = {}) {
  if (n < 1) throw InputError("dimension must be at least 1");
  if (e < 0) throw InputError("exponent bound must be nonnegative");
  CheckReport r;
  std::string shape(n - 1, 'T');
  shape += 'S';
  detail::for_each_basis(shape, e, [&](const Basis& b) {
    auto x = MixedTensor<K>::basis(shape, b);
    ++r.checked;
    if (psi(psi(x, cfg), cfg) != x) {
      r.ok = false;
      r.failure = "Psi(Psi(x)) != x for x = " + detail::describe(x);
      return false;
    }
    return true;
  });
  return r;
}

template <class K = Rational>
CheckReport cocycle_check(std::size_t n, std::size_t i, std::size_t j, std::size_t k, std::int64_t e,
                          GluingConfig cfg = {}) {
  detail::check_triple(n, i, j, k);
  CheckReport r;
  std::string shape(n, 'T');
  shape[chart_position(j, i) - 1] = 'S';
  shape[chart_position(j, k) - 1] = 'S';
  detail::for_each_basis(shape, e, [&](const Basis& b) {
    auto x = MixedTensor<K>::basis(shape, b);
    ++r.checked;
    auto lhs = phi_quotient(i, j, k, x, cfg);
    auto rhs = phi_quotient(i, k, j, phi_quotient(k, j, i, x, cfg), cfg);
    if (lhs != rhs) {
      r.ok = false;
      r.failure = "(i,j,k) = (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                  ") on " + detail::describe(x);
      return false;
    }
    return true;
  });
  return r;
}

// Every admissible triple of distinct indices.
template <class K = Rational>
CheckReport verify_cocycle(std::size_t n, std::int64_t e = 2, GluingConfig cfg = {}) {
  if (n < 2) throw InputError("the cocycle identity needs N >= 2");
  CheckReport total;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        auto r = cocycle_check<K>(n, i, j, k, e, cfg);
        total.checked += r.checked;
        if (!r.ok) {
          total.ok = false;
          total.failure = r.failure;
          return total;
        }
      }
  return total;
}

template <class K = Rational>
MixedTensor<K> random_monomial_tensor(std::size_t n, std::mt19937_64& rng, std::int64_t e = 2) {
  std::uniform_int_distribution<std::int64_t> ex(0, e);
  Basis b(n);
  for (auto& f : b) f = {ex(rng), ex(rng)};
  return MixedTensor<K>::basis(std::string(n, 'T'), b);
}

// Sum of `terms` random monomials with small integer coefficients.
template <class K = Rational>
MixedTensor<K> random_tensor(std::size_t n, std::mt19937_64& rng, std::size_t terms = 3, std::int64_t e = 2) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  MixedTensor<K> x(std::string(n, 'T'));
  for (std::size_t t = 0; t < terms; ++t) {
    int c = coeff(rng);
    x += K(c == 0 ? 1 : c) * random_monomial_tensor<K>(n, rng, e);
  }
  return x;
}

// A member obtained by extending one random component.
template <class K = Rational>
PullbackTuple<K> random_member(std::size_t n, std::mt19937_64& rng, GluingConfig cfg = {}) {
  std::uniform_int_distribution<std::size_t> idx(0, n);
  Partial<K> p;
  p.emplace(idx(rng), random_tensor<K>(n, rng));
  return extend_partial(p, n, cfg);
}

// Kernel matching: pi^j_i(ker pi^j_k) = pi^i_j(ker pi^i_k), probed on
// generators with the compact unit at the k-position and random
// monomials elsewhere; each image is lifted back and tested for the kernel.
template <class K = Rational>
CheckReport verify_condition_one(std::size_t n, std::uint64_t seed, std::size_t samples = 8, GluingConfig cfg = {}) {
  if (n < 2) throw InputError("kernel matching needs N >= 2");
  std::mt19937_64 rng(seed);
  CheckReport r;
  auto p = compact_unit<K>();
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        for (std::size_t s = 0; s < samples; ++s) {
          auto x = random_monomial_tensor<K>(n, rng);
          std::vector<typename MixedTensor<K>::FactorElem> fs;
          auto pk = chart_position(i, k);
          for (std::size_t q = 1; q <= n; ++q) {
            const auto& f = x.terms().begin()->first[q - 1];
            if (q == pk)
              fs.emplace_back(p);
            else
              fs.emplace_back(t_mono<K>(static_cast<std::uint32_t>(f.a), static_cast<std::uint32_t>(f.b)));
          }
          auto g = MixedTensor<K>::pure(fs);  // in ker pi^i_k
          ++r.checked;
          if (!pi(i, k, g, cfg).is_zero()) {
            r.ok = false;
            r.failure = "generator not in ker pi^" + std::to_string(i) + "_" + std::to_string(k);
            return r;
          }
          auto y = pi(i, j, g, cfg);
          // Preimage under pi^j_i through the section.
          MixedTensor<K> lift = j < i ? section_k(i, y) : section_k(i + 1, psi_ij_inv(i, j, y, cfg));
          if (pi(j, i, lift, cfg) != y || !pi(j, k, lift, cfg).is_zero()) {
            r.ok = false;
            r.failure = "(i,j,k) = (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                        ") on " + detail::describe(g);
            return r;
          }
        }
      }
  return r;
}

// p^{(x)N} off I, 0 on I.
template <class K = Rational>
PullbackTuple<K> witness_xI(const Bits& I, std::size_t n) {
  if (I.size() != n + 1) throw InputError("index set must live in {0..N}");
  if (I.none()) throw InputError("witness index set must be nonempty");
  if (I.count() == n + 1) throw InputError("witness index set must be proper; the full set gives the zero tuple");
  auto t = PullbackTuple<K>::zero(n);
  auto x = MixedTensor<K>::tensor_power(compact_unit<K>(), n);
  for (std::size_t i = 0; i <= n; ++i)
    if (!I.test(i)) t.components[i] = x;
  return t;
}

namespace detail {

inline void check_mI(std::size_t m, const Bits& I, std::size_t n) {
  if (I.size() != n + 1) throw InputError("index set must live in {0..N}");
  if (m > n) throw InputError("m must lie in {0..N}");
  if (I.none()) throw InputError("index set must be nonempty");
  if (I.test(m)) throw InputError("m must lie outside the index set");
}

// Index carried by tensor position q (1-indexed) in chart m.
inline std::size_t index_at(std::size_t m, std::size_t q) { return q > m ? q : q - 1; }

}  // namespace detail

// T_m^I: compact unit where the position's index is in I, z elsewhere.
template <class K = Rational>
MixedTensor<K> witness_TmI(std::size_t m, const Bits& I, std::size_t n) {
  detail::check_mI(m, I, n);
  std::vector<typename MixedTensor<K>::FactorElem> fs;
  for (std::size_t q = 1; q <= n; ++q)
    fs.emplace_back(I.test(detail::index_at(m, q)) ? compact_unit<K>() : t_z<K>());
  return MixedTensor<K>::pure(fs);
}

// sigma^m_I: identity at positions indexed by I, symbol elsewhere.
template <class K = Rational>
MixedTensor<K> separator_sigma_mI(std::size_t m, const Bits& I, const MixedTensor<K>& x) {
  const std::size_t n = x.length();
  detail::check_mI(m, I, n);
  MixedTensor<K> r = x;
  for (std::size_t q = 1; q <= n; ++q)
    if (!I.test(detail::index_at(m, q))) r = sigma_k(q, r);
  return r;
}

// p_m: a member with pi_m = T_m^I and vanishing on I.
template <class K = Rational>
PullbackTuple<K> witness_pm(std::size_t m, const Bits& I, std::size_t n, GluingConfig cfg = {}) {
  Partial<K> p;
  p.emplace(m, witness_TmI<K>(m, I, n));
  I.for_each([&](std::size_t i) { p.emplace(i, MixedTensor<K>(std::string(n, 'T'))); });
  return extend_partial(p, n, cfg);
}

template <class K>
bool in_kernel_intersection(const PullbackTuple<K>& t, const Bits& I) {
  bool ok = true;
  I.for_each([&](std::size_t i) { ok = ok && t.components[i].is_zero(); });
  return ok;
}

inline std::string to_string(const Bits& b) {
  std::string s = "{";
  b.for_each([&](std::size_t i) { s += (s.size() > 1 ? "," : "") + std::to_string(i); });
  return s + "}";
}

struct ProbeResult {
  std::vector<std::size_t> I;
  std::size_t m = 0;
  bool separator_nonzero = false;
  bool zero_on_samples = false;
  std::size_t samples = 0;
  std::string failure;
  bool ok() const { return separator_nonzero && zero_on_samples; }
};

struct FreenessReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool antipode = true;
  bool gluing_ok = false;
  std::vector<std::pair<std::string, CheckReport>> gluing;
  bool freeness_tested = false;
  std::size_t join_elements = 0;
  bool distinct = false;
  bool ordered = false;
  std::string order_failure;
  std::vector<ProbeResult> probes;
  bool probes_ok() const {
    return freeness_tested && std::all_of(probes.begin(), probes.end(), [](const ProbeResult& p) { return p.ok(); });
  }
  bool pass() const { return gluing_ok && distinct && ordered && probes_ok(); }
};

namespace detail {

inline Bits bits_of_mask(std::size_t width, std::uint64_t mask) {
  Bits b(width);
  for (std::size_t i = 0; i < width; ++i)
    if (mask >> i & 1) b.set(i);
  return b;
}

inline std::vector<std::uint64_t> proper_masks(std::size_t n) {
  std::vector<std::uint64_t> r;
  const std::uint64_t full = (std::uint64_t{1} << (n + 1)) - 1;
  for (std::uint64_t s = 1; s < full; ++s) r.push_back(s);
  return r;
}

template <class K>
ProbeResult run_probe(std::size_t n, std::uint64_t imask, std::size_t m, std::uint64_t seed, GluingConfig cfg) {
  const std::size_t w = n + 1;
  const Bits I = bits_of_mask(w, imask);
  ProbeResult pr;
  pr.I = I.indices();
  pr.m = m;
  auto pm = witness_pm<K>(m, I, n, cfg);
  if (!in_kernel_intersection(pm, I)) {
    pr.failure = "p_m does not vanish on I";
    return pr;
  }
  pr.separator_nonzero = !separator_sigma_mI(m, I, pm.components[m]).is_zero();
  if (!pr.separator_nonzero) pr.failure = "separator vanishes on p_m";

  std::mt19937_64 rng(seed);
  const std::uint64_t full = (std::uint64_t{1} << w) - 1;
  bool zero = true;
  auto test = [&](const PullbackTuple<K>& x, const Bits& J, const char* what) {
    ++pr.samples;
    if (!in_kernel_intersection(x, J)) {
      zero = false;
      pr.failure = std::string("sample ") + what + " is not in the kernel intersection";
      return;
    }
    if (!separator_sigma_mI(m, I, x.components[m]).is_zero()) {
      zero = false;
      pr.failure = std::string("separator nonzero on ") + what + " for J = " + to_string(J);
    }
  };
  for (std::uint64_t jm = imask + 1; jm < full && zero; ++jm) {
    if ((jm & imask) != imask) continue;
    Bits J = bits_of_mask(w, jm);
    auto xJ = witness_xI<K>(J, n);
    test(xJ, J, "x_J");
    for (int s = 0; s < 2 && zero; ++s) test(xJ * random_member<K>(n, rng, cfg), J, "x_J * member");
    for (int s = 0; s < 2 && zero; ++s) test(random_member<K>(n, rng, cfg) * xJ, J, "member * x_J");
    for (std::size_t mp = 0; mp < w && zero; ++mp)
      if (!J.test(mp)) test(witness_pm<K>(mp, J, n, cfg), J, "p_m'");
  }
  pr.zero_on_samples = zero;
  return pr;
}

}  // namespace detail

// Gluing self-checks, then distinctness and order of the kernel
// intersections, then one meet-irreducibility probe per (I, m).
template <class K = Rational>
FreenessReport verify_freeness(std::size_t n, GluingConfig cfg = {}, std::uint64_t seed = 0, unsigned jobs = 1) {
  if (n < 1) throw InputError("dimension must be at least 1");
  if (n > 3) throw ResourceError("max_freeness_n", 3, "freeness verification is bounded to N <= 3");
  FreenessReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.antipode = cfg.antipode;

  rep.gluing.emplace_back("unipotent", verify_unipotent<K>(n, 2, cfg));
  if (n >= 2) rep.gluing.emplace_back("cocycle", verify_cocycle<K>(n, 1, cfg));
  {
    CheckReport mirror;
    using V = typename MixedTensor<K>::FactorElem;
    auto one_dim = [](const ToeplitzElem<K>& a, const ToeplitzElem<K>& b) {
      PullbackTuple<K> t;
      t.n = 1;
      t.components = {MixedTensor<K>::pure({V{a}}), MixedTensor<K>::pure({V{b}})};
      return t;
    };
    mirror.checked = 2;
    if (!is_member(one_dim(t_z<K>(), t_zstar<K>()), cfg).member) mirror = {false, 1, "(z, z*) is not a member"};
    else if (is_member(one_dim(t_z<K>(), t_z<K>()), cfg).member) mirror = {false, 2, "(z, z) is a member"};
    rep.gluing.emplace_back("mirror", mirror);
  }
  {
    CheckReport ext;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int s = 0; s < 8 && ext.ok; ++s) {
      ++ext.checked;
      try {
        random_member<K>(n, rng, cfg);
      } catch (const Error& e) {
        ext = {false, ext.checked, e.what()};
      }
    }
    rep.gluing.emplace_back("extension", ext);
  }
  rep.gluing_ok = std::all_of(rep.gluing.begin(), rep.gluing.end(), [](const auto& g) { return g.second.ok; });
  if (!rep.gluing_ok) return rep;
  rep.freeness_tested = true;

  const std::size_t w = n + 1;
  auto masks = detail::proper_masks(n);
  rep.join_elements = masks.size();
  rep.distinct = true;
  rep.ordered = true;
  std::vector<PullbackTuple<K>> xs;
  for (auto s : masks) {
    xs.push_back(witness_xI<K>(detail::bits_of_mask(w, s), n));
    if (!is_member(xs.back(), cfg).member) {
      rep.distinct = rep.ordered = false;
      rep.order_failure = "x_I is not a member for I = " + to_string(detail::bits_of_mask(w, s));
      return rep;
    }
  }
  // x_I lies in the intersection over J iff J is a subset of I; this
  // separates every pair and realizes the containment order.
  for (std::size_t a = 0; a < masks.size() && rep.ordered; ++a)
    for (std::size_t b = 0; b < masks.size(); ++b) {
      Bits J = detail::bits_of_mask(w, masks[b]);
      bool in = in_kernel_intersection(xs[a], J);
      bool expect = (masks[b] & masks[a]) == masks[b];
      if (in != expect) {
        rep.ordered = false;
        rep.order_failure = "x_" + to_string(detail::bits_of_mask(w, masks[a])) +
                            (in ? " unexpectedly lies in " : " misses ") + "the intersection over " + to_string(J);
        break;
      }
    }
  rep.distinct = rep.ordered;

  std::vector<std::pair<std::uint64_t, std::size_t>> work;
  for (auto s : masks)
    for (std::size_t m = 0; m < w; ++m)
      if (!(s >> m & 1)) work.emplace_back(s, m);
  rep.probes.resize(work.size());
  auto probe_seed = [&](std::size_t idx) { return seed * 1000003ULL + idx; };
  if (jobs <= 1) {
    for (std::size_t t = 0; t < work.size(); ++t)
      rep.probes[t] = detail::run_probe<K>(n, work[t].first, work[t].second, probe_seed(t), cfg);
  } else {
    for (std::size_t base = 0; base < work.size(); base += jobs) {
      std::vector<std::future<ProbeResult>> fs;
      for (std::size_t t = base; t < std::min(work.size(), base + jobs); ++t)
        fs.push_back(std::async(std::launch::async, [&, t] {
          return detail::run_probe<K>(n, work[t].first, work[t].second, probe_seed(t), cfg);
        }));
      for (std::size_t t = 0; t < fs.size(); ++t) rep.probes[base + t] = fs[t].get();
    }
  }
  return rep;
}

}  // namespace posetsheaf::toeplitz
