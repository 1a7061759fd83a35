#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "posetsheaf/error.hpp"

namespace posetsheaf::toeplitz {

using Rational = boost::multiprecision::cpp_rational;

inline Rational conj(const Rational& x) { return x; }
inline bool is_zero(const Rational& x) { return x == 0; }
inline std::string to_string(const Rational& x) { return x.str(); }

inline Rational parse_rational(const std::string& s) {
  try {
    if (s.empty()) throw std::runtime_error("empty");
    return Rational(s);
  } catch (const std::exception&) {
    throw InputError("not an exact rational: '" + s + "'");
  }
}

// a + b i with rational parts.
struct GaussianRational {
  Rational re = 0, im = 0;

  GaussianRational() = default;
  GaussianRational(int v) : re(v) {}  // NOLINT: integer literals act as scalars
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conj(const GaussianRational& x) { return {x.re, -x.im}; }
inline bool is_zero(const GaussianRational& x) { return x.re == 0 && x.im == 0; }
inline std::string to_string(const GaussianRational& x) {
  if (x.im == 0) return x.re.str();
  return x.re.str() + (x.im < 0 ? "-" : "+") + Rational(abs(x.im)).str() + "i";
}

}  // namespace posetsheaf::toeplitz
