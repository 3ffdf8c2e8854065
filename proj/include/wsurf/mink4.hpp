#pragma once

// Complex-linear algebra on C^4 carrying the Minkowski signature (+,+,+,-).
// Every function is a pure template over the real scalar type.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "wsurf/errors.hpp"

namespace wsurf {

template <typename Scalar>
using CVec4T = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
template <typename Scalar>
using RVec4T = Eigen::Matrix<Scalar, 4, 1>;

using cd = std::complex<double>;
using CVec4 = CVec4T<double>;
using RVec4 = RVec4T<double>;

/// Metric diagonal (1, 1, 1, -1).
template <typename Scalar>
RVec4T<Scalar> minkowski_signature() {
  return RVec4T<Scalar>(1, 1, 1, -1);
}

/// a1 b1 + a2 b2 + a3 b3 - a4 b4, complex-bilinear (no conjugation).
template <typename Scalar>
std::complex<Scalar> bilinear_dot(const CVec4T<Scalar>& a, const CVec4T<Scalar>& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) - a(3) * b(3);
}

/// Indefinite Hermitian product a . conj(b).
template <typename Scalar>
std::complex<Scalar> hermitian_dot(const CVec4T<Scalar>& a, const CVec4T<Scalar>& b) {
  return a(0) * std::conj(b(0)) + a(1) * std::conj(b(1)) + a(2) * std::conj(b(2)) -
         a(3) * std::conj(b(3));
}

/// ||a||^2 = a . conj(a); real for every a, negative for time-like real vectors.
template <typename Scalar>
Scalar norm_sq(const CVec4T<Scalar>& a) {
  return std::real(hermitian_dot(a, a));
}

template <typename Scalar>
Scalar real_dot(const RVec4T<Scalar>& a, const RVec4T<Scalar>& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) - a(3) * b(3);
}

/// ||a ^ b||^2 = ||a||^2 ||b||^2 - |conj(a) . b|^2.
template <typename Scalar>
Scalar wedge_norm_sq(const CVec4T<Scalar>& a, const CVec4T<Scalar>& b) {
  const CVec4T<Scalar> abar = a.conjugate();
  return norm_sq(a) * norm_sq(b) - std::norm(bilinear_dot(abar, b));
}

/// Determinant of the column matrix [a b c d] in the standard basis.
template <typename Scalar>
std::complex<Scalar> det4(const CVec4T<Scalar>& a, const CVec4T<Scalar>& b,
                          const CVec4T<Scalar>& c, const CVec4T<Scalar>& d) {
  Eigen::Matrix<std::complex<Scalar>, 4, 4> m;
  m << a, b, c, d;
  return m.determinant();
}

template <typename Scalar>
Scalar max_abs(const CVec4T<Scalar>& v) {
  return v.cwiseAbs().maxCoeff();
}

/// Tolerance used by the identity checks of this layer: 1e-10 scaled by the
/// square of the largest input magnitude (floor 1).
template <typename Scalar>
Scalar identity_tolerance(const CVec4T<Scalar>& v) {
  const Scalar m = std::max<Scalar>(1, max_abs(v));
  return Scalar(1e-10) * m * m;
}

/// Component of dphi normal to the complexified tangent plane spanned by phi
/// and conj(phi):  dphi - ((dphi . conj(phi)) / ||phi||^2) phi.
template <typename Scalar>
CVec4T<Scalar> normal_project(const CVec4T<Scalar>& phi, const CVec4T<Scalar>& dphi) {
  if (std::abs(bilinear_dot(phi, phi)) > identity_tolerance(phi))
    throw NotIsothermal("normal_project: phi.phi is not zero");
  const Scalar n2 = norm_sq(phi);
  if (!(n2 > 0)) throw DegenerateMetric("normal_project: ||phi||^2 <= 0");
  const std::complex<Scalar> coeff = hermitian_dot(dphi, phi) / n2;
  return dphi - coeff * phi;
}

}  // namespace wsurf
