#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "posetsheaf/toeplitz/coeff.hpp"

namespace posetsheaf::toeplitz {

// Finite linear combination of keys with nonzero coefficients.
template <class Key, class K>
class LinComb {
 public:
  using key_type = Key;
  using coeff_type = K;
  using Terms = std::map<Key, K>;

  LinComb() = default;
  static LinComb term(const Key& k, const K& c = K(1)) {
    LinComb x;
    x.add_term(k, c);
    return x;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  void add_term(const Key& k, const K& c) {
    if (toeplitz::is_zero(c)) return;
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (toeplitz::is_zero(it->second)) t_.erase(it);
    }
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.t_) add_term(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
  }
  LinComb& operator*=(const K& s) {
    if (toeplitz::is_zero(s)) {
      t_.clear();
      return *this;
    }
    for (auto& [k, c] : t_) c *= s;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator-(LinComb a) { return a *= K(-1); }
  friend LinComb operator*(const K& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

 private:
  Terms t_;
};

// z^a z*^b.
struct TMono {
  std::uint32_t a = 0, b = 0;
  friend auto operator<=>(const TMono&, const TMono&) = default;
  friend bool operator==(const TMono&, const TMono&) = default;
};

// (z^a z*^b)(z^c z*^d): z* z = 1 cancels min(b, c) pairs.
inline TMono mono_mul(TMono x, TMono y) {
  if (x.b <= y.a) return {x.a + (y.a - x.b), y.b};
  return {x.a, y.b + (x.b - y.a)};
}

template <class K = Rational>
using ToeplitzElem = LinComb<TMono, K>;

// u^k.
template <class K = Rational>
using CircleElem = LinComb<std::int64_t, K>;

template <class K = Rational>
ToeplitzElem<K> t_mono(std::uint32_t a, std::uint32_t b, const K& c = K(1)) {
  return ToeplitzElem<K>::term({a, b}, c);
}
template <class K = Rational>
ToeplitzElem<K> t_one() { return t_mono<K>(0, 0); }
template <class K = Rational>
ToeplitzElem<K> t_z() { return t_mono<K>(1, 0); }
template <class K = Rational>
ToeplitzElem<K> t_zstar() { return t_mono<K>(0, 1); }

// 1 - z z*, the projection generating the compacts.
template <class K = Rational>
ToeplitzElem<K> compact_unit() { return t_one<K>() - t_mono<K>(1, 1); }

template <class K>
ToeplitzElem<K> t_mul(const ToeplitzElem<K>& x, const ToeplitzElem<K>& y) {
  ToeplitzElem<K> r;
  for (const auto& [m, c] : x.terms())
    for (const auto& [n, d] : y.terms()) r.add_term(mono_mul(m, n), c * d);
  return r;
}

template <class K>
ToeplitzElem<K> t_star(const ToeplitzElem<K>& x) {
  ToeplitzElem<K> r;
  for (const auto& [m, c] : x.terms()) r.add_term({m.b, m.a}, conj(c));
  return r;
}

// z -> u.
template <class K>
CircleElem<K> symbol(const ToeplitzElem<K>& x) {
  CircleElem<K> r;
  for (const auto& [m, c] : x.terms()) r.add_term(static_cast<std::int64_t>(m.a) - static_cast<std::int64_t>(m.b), c);
  return r;
}

// u^k -> z^k (k >= 0), z*^{-k} (k < 0); a linear right inverse of symbol.
template <class K>
ToeplitzElem<K> section(const CircleElem<K>& h) {
  ToeplitzElem<K> r;
  for (const auto& [k, c] : h.terms())
    r.add_term(k >= 0 ? TMono{static_cast<std::uint32_t>(k), 0} : TMono{0, static_cast<std::uint32_t>(-k)}, c);
  return r;
}

template <class K = Rational>
CircleElem<K> c_mono(std::int64_t k, const K& c = K(1)) {
  return CircleElem<K>::term(k, c);
}

template <class K>
CircleElem<K> c_mul(const CircleElem<K>& x, const CircleElem<K>& y) {
  CircleElem<K> r;
  for (const auto& [k, c] : x.terms())
    for (const auto& [l, d] : y.terms()) r.add_term(k + l, c * d);
  return r;
}

// u^k -> u^{-k}; on C(S^1) the antipode is also the adjoint.
template <class K>
CircleElem<K> antipode(const CircleElem<K>& x) {
  CircleElem<K> r;
  for (const auto& [k, c] : x.terms()) r.add_term(-k, c);
  return r;
}

template <class K>
CircleElem<K> c_star(const CircleElem<K>& x) {
  CircleElem<K> r;
  for (const auto& [k, c] : x.terms()) r.add_term(-k, conj(c));
  return r;
}

template <class K>
K counit(const CircleElem<K>& x) {
  K s(0);
  for (const auto& [k, c] : x.terms()) s += c;
  return s;
}

// Symbol vanishes iff every diagonal a - b = d has coefficient sum zero.
template <class K>
bool in_compact_ideal(const ToeplitzElem<K>& x) {
  std::map<std::int64_t, K> diag;
  for (const auto& [m, c] : x.terms()) diag[static_cast<std::int64_t>(m.a) - static_cast<std::int64_t>(m.b)] += c;
  for (const auto& [d, s] : diag)
    if (!toeplitz::is_zero(s)) return false;
  return true;
}

inline std::string to_string(TMono m) {
  if (m.a == 0 && m.b == 0) return "1";
  std::string s;
  if (m.a) s += m.a == 1 ? "z" : "z^" + std::to_string(m.a);
  if (m.b) s += m.b == 1 ? "z*" : "z*^" + std::to_string(m.b);
  return s;
}

}  // namespace posetsheaf::toeplitz
