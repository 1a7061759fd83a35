#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "posetsheaf/toeplitz/algebra.hpp"

namespace posetsheaf::toeplitz {

// One tensor position: z^a z*^b for a T slot, u^a for an S slot (b unused).
struct Factor {
  std::int64_t a = 0, b = 0;
  friend auto operator<=>(const Factor&, const Factor&) = default;
  friend bool operator==(const Factor&, const Factor&) = default;
};

using Basis = std::vector<Factor>;

// Degree under the gauge coaction: a - b on T, the exponent on S.
inline std::int64_t degree(char kind, const Factor& f) { return kind == 'T' ? f.a - f.b : f.a; }

// Linear combination of basis tensors over a fixed shape string of 'T'/'S'.
template <class K = Rational>
class MixedTensor {
 public:
  MixedTensor() = default;
  explicit MixedTensor(std::string shape) : shape_(std::move(shape)) { check_shape(shape_); }
  MixedTensor(std::string shape, LinComb<Basis, K> terms) : shape_(std::move(shape)), t_(std::move(terms)) {
    check_shape(shape_);
    for (const auto& [b, c] : t_.terms()) check_basis(b);
  }

  static MixedTensor basis(std::string shape, Basis b, const K& c = K(1)) {
    MixedTensor x(std::move(shape));
    x.check_basis(b);
    x.t_.add_term(b, c);
    return x;
  }

  using FactorElem = std::variant<ToeplitzElem<K>, CircleElem<K>>;

  // x_1 (x) ... (x) x_n; the shape follows the factor kinds.
  static MixedTensor pure(const std::vector<FactorElem>& factors) {
    std::string shape;
    for (const auto& f : factors) shape += std::holds_alternative<ToeplitzElem<K>>(f) ? 'T' : 'S';
    MixedTensor x(shape);
    x.t_.add_term(Basis(factors.size()), K(1));
    for (std::size_t p = 0; p < factors.size(); ++p) {
      LinComb<Basis, K> next;
      for (const auto& [b, c] : x.t_.terms()) {
        if (const auto* t = std::get_if<ToeplitzElem<K>>(&factors[p])) {
          for (const auto& [m, d] : t->terms()) {
            Basis nb = b;
            nb[p] = {m.a, m.b};
            next.add_term(nb, c * d);
          }
        } else {
          for (const auto& [k, d] : std::get<CircleElem<K>>(factors[p]).terms()) {
            Basis nb = b;
            nb[p] = {k, 0};
            next.add_term(nb, c * d);
          }
        }
      }
      x.t_ = std::move(next);
    }
    return x;
  }

  static MixedTensor tensor_power(const ToeplitzElem<K>& t, std::size_t n) {
    return pure(std::vector<FactorElem>(n, FactorElem{t}));
  }
  static MixedTensor zero(std::string shape) { return MixedTensor(std::move(shape)); }
  static MixedTensor one(std::string shape) { return basis(shape, Basis(shape.size())); }

  const std::string& shape() const { return shape_; }
  std::size_t length() const { return shape_.size(); }
  const LinComb<Basis, K>& lin() const { return t_; }
  const auto& terms() const { return t_.terms(); }
  bool is_zero() const { return t_.is_zero(); }
  std::size_t size() const { return t_.size(); }

  void add_term(const Basis& b, const K& c) {
    check_basis(b);
    t_.add_term(b, c);
  }

  MixedTensor& operator+=(const MixedTensor& o) {
    same_shape(o);
    t_ += o.t_;
    return *this;
  }
  MixedTensor& operator-=(const MixedTensor& o) {
    same_shape(o);
    t_ -= o.t_;
    return *this;
  }
  friend MixedTensor operator+(MixedTensor a, const MixedTensor& b) { return a += b; }
  friend MixedTensor operator-(MixedTensor a, const MixedTensor& b) { return a -= b; }
  friend MixedTensor operator*(const K& s, MixedTensor a) {
    a.t_ *= s;
    return a;
  }
  friend bool operator==(const MixedTensor& a, const MixedTensor& b) {
    return a.shape_ == b.shape_ && a.t_ == b.t_;
  }
  friend bool operator!=(const MixedTensor& a, const MixedTensor& b) { return !(a == b); }

  // Factorwise product in T^{(x)n} (x) C(S^1)^{(x)m}.
  friend MixedTensor operator*(const MixedTensor& x, const MixedTensor& y) {
    x.same_shape(y);
    MixedTensor r(x.shape_);
    for (const auto& [b1, c1] : x.terms())
      for (const auto& [b2, c2] : y.terms()) {
        Basis b(b1.size());
        for (std::size_t p = 0; p < b.size(); ++p) {
          if (x.shape_[p] == 'T') {
            auto m = mono_mul(TMono{static_cast<std::uint32_t>(b1[p].a), static_cast<std::uint32_t>(b1[p].b)},
                              TMono{static_cast<std::uint32_t>(b2[p].a), static_cast<std::uint32_t>(b2[p].b)});
            b[p] = {m.a, m.b};
          } else {
            b[p] = {b1[p].a + b2[p].a, 0};
          }
        }
        r.t_.add_term(b, c1 * c2);
      }
    return r;
  }

  void same_shape(const MixedTensor& o) const {
    if (shape_ != o.shape_) throw InputError("tensor shapes differ: " + shape_ + " vs " + o.shape_);
  }

 private:
  static void check_shape(const std::string& s) {
    for (char c : s)
      if (c != 'T' && c != 'S') throw InputError("tensor shape may only contain T and S, got '" + s + "'");
  }
  void check_basis(const Basis& b) const {
    if (b.size() != shape_.size()) throw InputError("basis tensor length does not match shape " + shape_);
    for (std::size_t p = 0; p < b.size(); ++p) {
      if (shape_[p] == 'T' && (b[p].a < 0 || b[p].b < 0)) throw InputError("Toeplitz exponents must be nonnegative");
      if (shape_[p] == 'S' && b[p].b != 0) throw InputError("circle factors carry a single exponent");
    }
  }

  std::string shape_;
  LinComb<Basis, K> t_;
};

template <class K>
std::string to_string(const MixedTensor<K>& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [b, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    for (std::size_t p = 0; p < b.size(); ++p) {
      s += p ? " (x) " : " ";
      if (x.shape()[p] == 'T')
        s += to_string(TMono{static_cast<std::uint32_t>(b[p].a), static_cast<std::uint32_t>(b[p].b)});
      else
        s += "u^" + std::to_string(b[p].a);
    }
  }
  return s;
}

namespace detail {

inline void require_pos(const std::string& shape, std::size_t k, char kind, const char* op) {
  if (k < 1 || k > shape.size())
    throw InputError(std::string(op) + ": position " + std::to_string(k) + " outside shape " + shape);
  if (shape[k - 1] != kind)
    throw InputError(std::string(op) + ": position " + std::to_string(k) + " of shape " + shape + " is not " + kind);
}

}  // namespace detail

// Symbol map at position k (1-indexed): T -> S.
template <class K>
MixedTensor<K> sigma_k(std::size_t k, const MixedTensor<K>& x) {
  detail::require_pos(x.shape(), k, 'T', "sigma_k");
  std::string shape = x.shape();
  shape[k - 1] = 'S';
  MixedTensor<K> r(shape);
  for (const auto& [b, c] : x.terms()) {
    Basis nb = b;
    nb[k - 1] = {b[k - 1].a - b[k - 1].b, 0};
    r.add_term(nb, c);
  }
  return r;
}

// Section at position k: S -> T.
template <class K>
MixedTensor<K> section_k(std::size_t k, const MixedTensor<K>& x) {
  detail::require_pos(x.shape(), k, 'S', "section_k");
  std::string shape = x.shape();
  shape[k - 1] = 'T';
  MixedTensor<K> r(shape);
  for (const auto& [b, c] : x.terms()) {
    Basis nb = b;
    auto e = b[k - 1].a;
    nb[k - 1] = e >= 0 ? Factor{e, 0} : Factor{0, -e};
    r.add_term(nb, c);
  }
  return r;
}

// Moves the factor at position `from` to position `to` (both 1-indexed).
template <class K>
MixedTensor<K> move_factor(std::size_t from, std::size_t to, const MixedTensor<K>& x) {
  const std::size_t n = x.length();
  if (from < 1 || from > n || to < 1 || to > n) throw InputError("factor position outside the tensor");
  auto perm = [&](auto v) {
    auto e = v[from - 1];
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(from - 1));
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(to - 1), e);
    return v;
  };
  MixedTensor<K> r(perm(x.shape()));
  for (const auto& [b, c] : x.terms()) r.add_term(perm(b), c);
  return r;
}

// chi_j: the trailing S factor moves to position j.
template <class K>
MixedTensor<K> chi(std::size_t j, const MixedTensor<K>& x) {
  detail::require_pos(x.shape(), x.length(), 'S', "chi");
  return move_factor(x.length(), j, x);
}

// chi_j^{-1}: the S factor at position j moves to the end.
template <class K>
MixedTensor<K> chi_inv(std::size_t j, const MixedTensor<K>& x) {
  detail::require_pos(x.shape(), j, 'S', "chi_inv");
  return move_factor(j, x.length(), x);
}

struct GluingConfig {
  bool antipode = true;  // false drops S from Psi (the mutation used to test sensitivity)
};

// Psi = (id (x) S m)(rho_{n-1} (x) id) on shapes ending in S:
// t (x) u^m -> t (x) u^{-(deg t + m)}. Without the antipode, u^{deg t + m}.
template <class K>
MixedTensor<K> psi(const MixedTensor<K>& x, GluingConfig cfg = {}) {
  detail::require_pos(x.shape(), x.length(), 'S', "psi");
  MixedTensor<K> r(x.shape());
  const std::size_t last = x.length() - 1;
  for (const auto& [b, c] : x.terms()) {
    std::int64_t d = 0;
    for (std::size_t p = 0; p < last; ++p) d += degree(x.shape()[p], b[p]);
    Basis nb = b;
    nb[last].a = cfg.antipode ? -(d + b[last].a) : d + b[last].a;
    r.add_term(nb, c);
  }
  return r;
}

// Inverse of psi (psi itself when the antipode is present).
template <class K>
MixedTensor<K> psi_inv(const MixedTensor<K>& x, GluingConfig cfg = {}) {
  if (cfg.antipode) return psi(x, cfg);
  detail::require_pos(x.shape(), x.length(), 'S', "psi_inv");
  MixedTensor<K> r(x.shape());
  const std::size_t last = x.length() - 1;
  for (const auto& [b, c] : x.terms()) {
    std::int64_t d = 0;
    for (std::size_t p = 0; p < last; ++p) d += degree(x.shape()[p], b[p]);
    Basis nb = b;
    nb[last].a = b[last].a - d;
    r.add_term(nb, c);
  }
  return r;
}

// Psi_ij = chi_j Psi chi_{i+1}^{-1}: S at i+1 in, S at j out.
template <class K>
MixedTensor<K> psi_ij(std::size_t i, std::size_t j, const MixedTensor<K>& x, GluingConfig cfg = {}) {
  if (!(i < j) || j > x.length()) throw InputError("psi_ij needs 0 <= i < j <= N");
  return chi(j, psi(chi_inv(i + 1, x), cfg));
}

template <class K>
MixedTensor<K> psi_ij_inv(std::size_t i, std::size_t j, const MixedTensor<K>& x, GluingConfig cfg = {}) {
  if (!(i < j) || j > x.length()) throw InputError("psi_ij needs 0 <= i < j <= N");
  return chi(i + 1, psi_inv(chi_inv(j, x), cfg));
}

// rho(z^a z*^b) = z^a z*^b (x) u^{a-b}.
template <class K>
MixedTensor<K> coaction_rho(const ToeplitzElem<K>& x) {
  MixedTensor<K> r("TS");
  for (const auto& [m, c] : x.terms())
    r.add_term({{m.a, m.b}, {static_cast<std::int64_t>(m.a) - static_cast<std::int64_t>(m.b), 0}}, c);
  return r;
}

// rho_n on an all-T tensor: appends u^{total degree}.
template <class K>
MixedTensor<K> diag_coaction(const MixedTensor<K>& x) {
  for (char c : x.shape())
    if (c != 'T') throw InputError("diag_coaction needs an all-T tensor");
  MixedTensor<K> r(x.shape() + "S");
  for (const auto& [b, c] : x.terms()) {
    std::int64_t d = 0;
    for (const auto& f : b) d += f.a - f.b;
    Basis nb = b;
    nb.push_back({d, 0});
    r.add_term(nb, c);
  }
  return r;
}

// Delta(u^k) = u^k (x) u^k.
template <class K>
MixedTensor<K> comultiply(const CircleElem<K>& x) {
  MixedTensor<K> r("SS");
  for (const auto& [k, c] : x.terms()) r.add_term({{k, 0}, {k, 0}}, c);
  return r;
}

// m on C(S^1) (x) C(S^1).
template <class K>
CircleElem<K> multiply(const MixedTensor<K>& x) {
  if (x.shape() != "SS") throw InputError("multiply needs shape SS");
  CircleElem<K> r;
  for (const auto& [b, c] : x.terms()) r.add_term(b[0].a + b[1].a, c);
  return r;
}

// id (x) S on shape SS.
template <class K>
MixedTensor<K> id_tensor_antipode(const MixedTensor<K>& x) {
  if (x.shape() != "SS") throw InputError("id (x) S needs shape SS");
  MixedTensor<K> r("SS");
  for (const auto& [b, c] : x.terms()) r.add_term({b[0], {-b[1].a, 0}}, c);
  return r;
}

}  // namespace posetsheaf::toeplitz
