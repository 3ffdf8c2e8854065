#pragma once

// Second-order truncated Taylor arithmetic for holomorphic functions.
// A Jet stores (f, f', f'') at a point; every operation applies the
// Leibniz / chain rule up to order two.

#include <cmath>
#include <complex>

namespace wsurf {

template <typename Scalar>
struct JetT {
  using C = std::complex<Scalar>;
  C v0{}, v1{}, v2{};

  static JetT constant(C c) { return {c, C(0), C(0)}; }
  static JetT variable(C t) { return {t, C(1), C(0)}; }

  JetT operator-() const { return {-v0, -v1, -v2}; }
  JetT& operator+=(const JetT& o) { v0 += o.v0; v1 += o.v1; v2 += o.v2; return *this; }
  JetT& operator-=(const JetT& o) { v0 -= o.v0; v1 -= o.v1; v2 -= o.v2; return *this; }
  JetT& operator*=(const JetT& o) { return *this = *this * o; }
  JetT& operator/=(const JetT& o) { return *this = *this / o; }

  friend JetT operator+(JetT a, const JetT& b) { return a += b; }
  friend JetT operator-(JetT a, const JetT& b) { return a -= b; }
  friend JetT operator*(const JetT& a, const JetT& b) {
    return {a.v0 * b.v0, a.v0 * b.v1 + a.v1 * b.v0, a.v0 * b.v2 + C(2) * a.v1 * b.v1 + a.v2 * b.v0};
  }
  friend JetT operator*(C s, const JetT& a) { return {s * a.v0, s * a.v1, s * a.v2}; }
  friend JetT operator*(const JetT& a, C s) { return s * a; }
  friend JetT operator+(const JetT& a, C s) { return {a.v0 + s, a.v1, a.v2}; }
  friend JetT operator+(C s, const JetT& a) { return a + s; }
  friend JetT operator-(const JetT& a, C s) { return {a.v0 - s, a.v1, a.v2}; }
  friend JetT operator-(C s, const JetT& a) { return {s - a.v0, -a.v1, -a.v2}; }
  /// Caller guarantees b.v0 != 0.
  friend JetT operator/(const JetT& a, const JetT& b) { return a * reciprocal(b); }

  friend JetT reciprocal(const JetT& b) {
    const C r = C(1) / b.v0;
    return {r, -b.v1 * r * r, (C(2) * b.v1 * b.v1 * r - b.v2) * r * r};
  }
};

/// Applies a scalar function with known value/derivatives (d0, d1, d2) at
/// g.v0 to the inner jet g.
template <typename Scalar>
JetT<Scalar> chain(const JetT<Scalar>& g, std::complex<Scalar> d0, std::complex<Scalar> d1,
                   std::complex<Scalar> d2) {
  return {d0, d1 * g.v1, d2 * g.v1 * g.v1 + d1 * g.v2};
}

template <typename Scalar>
JetT<Scalar> exp(const JetT<Scalar>& g) {
  const auto e = std::exp(g.v0);
  return chain(g, e, e, e);
}

/// Principal branch; caller guarantees g.v0 != 0.
template <typename Scalar>
JetT<Scalar> log(const JetT<Scalar>& g) {
  using C = std::complex<Scalar>;
  const C r = C(1) / g.v0;
  return chain(g, std::log(g.v0), r, -r * r);
}

/// Principal branch; caller guarantees g.v0 != 0.
template <typename Scalar>
JetT<Scalar> sqrt(const JetT<Scalar>& g) {
  using C = std::complex<Scalar>;
  const C s = std::sqrt(g.v0);
  const C d1 = C(0.5) / s;
  return chain(g, s, d1, -d1 / (C(2) * g.v0));
}

template <typename Scalar>
JetT<Scalar> sin(const JetT<Scalar>& g) {
  const auto s = std::sin(g.v0), c = std::cos(g.v0);
  return chain(g, s, c, -s);
}

template <typename Scalar>
JetT<Scalar> cos(const JetT<Scalar>& g) {
  const auto s = std::sin(g.v0), c = std::cos(g.v0);
  return chain(g, c, -s, -c);
}

template <typename Scalar>
JetT<Scalar> sinh(const JetT<Scalar>& g) {
  const auto s = std::sinh(g.v0), c = std::cosh(g.v0);
  return chain(g, s, c, s);
}

template <typename Scalar>
JetT<Scalar> cosh(const JetT<Scalar>& g) {
  const auto s = std::sinh(g.v0), c = std::cosh(g.v0);
  return chain(g, c, s, c);
}

/// Integer power n >= 0 by the closed-form chain rule.
template <typename Scalar>
JetT<Scalar> pow(const JetT<Scalar>& g, int n) {
  using C = std::complex<Scalar>;
  if (n == 0) return JetT<Scalar>::constant(C(1));
  const C p2 = n >= 2 ? std::pow(g.v0, n - 2) : C(0);
  const C p1 = n >= 1 ? (n >= 2 ? p2 * g.v0 : C(1)) : C(0);
  const C p0 = p1 * g.v0;
  return chain(g, p0, C(Scalar(n)) * p1, C(Scalar(n) * Scalar(n - 1)) * p2);
}

/// (a t + b) composed into jet slots: derivatives pick up a factor a per order.
template <typename Scalar>
JetT<Scalar> affine(const JetT<Scalar>& t, std::complex<Scalar> a, std::complex<Scalar> b) {
  return {a * t.v0 + b, a * t.v1, a * t.v2};
}

using Jet = JetT<double>;

}  // namespace wsurf
