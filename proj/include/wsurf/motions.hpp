#pragma once

// Motions of R^4_1: Hermitian-matrix encoding of vectors, the spinor map
// SL(2,C) -> SO+(3,1), the linear-fractional action on (g1, g2) and the
// numerical check that two surfaces differ by a motion.

#include <optional>

#include <Eigen/Dense>

#include "wsurf/surface.hpp"

namespace wsurf {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4d;

/// S(x) = [[x3 + x4, i x1 + x2], [-i x1 + x2, -x3 + x4]], det S = -x^2.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> s_matrix(const CVec4T<Scalar>& x) {
  const std::complex<Scalar> i(0, 1);
  Eigen::Matrix<std::complex<Scalar>, 2, 2> S;
  S << x(2) + x(3), i * x(0) + x(1), -i * x(0) + x(1), -x(2) + x(3);
  return S;
}

template <typename Scalar>
CVec4T<Scalar> s_matrix_inv(const Eigen::Matrix<std::complex<Scalar>, 2, 2>& S) {
  const std::complex<Scalar> i(0, 1);
  CVec4T<Scalar> x;
  x << (S(0, 1) - S(1, 0)) / (Scalar(2) * i), (S(0, 1) + S(1, 0)) / Scalar(2),
      (S(0, 0) - S(1, 1)) / Scalar(2), (S(0, 0) + S(1, 1)) / Scalar(2);
  return x;
}

inline Mat2 s_matrix(const RVec4& x) { return s_matrix<double>(CVec4(x.cast<cd>())); }

/// Lorentz matrix with its component tags.
struct SO31 {
  Mat4 a = Mat4::Identity();
  bool proper = true;
  bool orthochronous = true;

  static SO31 tagged(const Mat4& a);
  /// max |A^T eta A - eta|
  double lorentz_defect() const;
};

/// Minkowski metric diag(1, 1, 1, -1).
Mat4 eta();

/// Ã -> A with S(A x) = Ã S(x) Ã*. Throws NotUnimodular unless |det Ã - 1| < 1e-12.
SO31 spinor_to_so31(const Mat2& at);

/// One of the two preimages of a proper orthochronous A.
Mat2 so31_to_spinor(const Mat4& a);

/// B / sqrt(det B) on the principal branch. Throws SingularMatrix for det B = 0.
Mat2 normalize_sl2(const Mat2& b);

/// Ã = [[conj a, -conj b], [-conj c, conj d]] for the normalized B = [[a, b], [c, d]].
Mat2 spinor_of_mobius(const Mat2& b);

enum class MotionVariant {
  OrthochronousProper,
  NonOrthochronousProper,    // composed with x -> -x
  OrthochronousImproper,     // composed with x -> -(x1, x2, x3, -x4)
  NonOrthochronousImproper,  // composed with x4 -> -x4
};

const char* variant_tag(MotionVariant v);
std::optional<MotionVariant> variant_from_tag(const std::string& tag);

/// Fixed matrix composed after the spinor image for a variant.
Mat4 variant_matrix(MotionVariant v);

/// The motion A realized by mobius_act(.., b, v).
SO31 motion_of(const Mat2& b, MotionVariant v);

struct MobiusResult {
  Expr g1, g2;
  std::optional<Expr> f;
};

/// g1^ = (a g1 + b)/(c g1 + d), g2^ = (conj d g2 - conj c)/(-conj b g2 + conj a)
/// with B normalized to det 1; f^ = f (c g1 + d)(-conj b g2 + conj a).
/// Improper variants exchange g1^ and g2^; x -> -x negates f^.
MobiusResult mobius_act(const Expr& g1, const Expr& g2, const std::optional<Expr>& f, const Mat2& b,
                        MotionVariant v = MotionVariant::OrthochronousProper);

/// Acts on g-form or canonical g-form data; other forms go through the
/// g-form. For canonical data the new Phi equals A Phi up to the sign of the
/// canonical square root.
WeierData mobius_act(const WeierData& w, const Mat2& b, MotionVariant v = MotionVariant::OrthochronousProper);

struct Congruence {
  SO31 A;
  RVec4 b = RVec4::Zero();
  double residual = 0;  // max |Phi2 - A Phi1| relative to the data scale
};

inline constexpr double kCongruenceTol = 1e-7;

/// Fits x2 = A x1 + b on the grid: A by least squares on Re and Im of Phi at
/// the nodes, b from the integrated positions. Throws NotCongruent when the
/// fit leaves a residual above tol or A is not Lorentz. When Phi spans less
/// than R^4 the fit only determines A on the span; `hint` fixes the rest
/// (minimum-norm correction of hint).
Congruence verify_congruence(const PhiSource& s1, const PhiSource& s2, const GridSpec& grid,
                             double tol = kCongruenceTol, const Mat4& hint = Mat4::Identity());
Congruence verify_congruence(const WeierData& w1, const WeierData& w2, const GridSpec& grid,
                             double tol = kCongruenceTol, const Mat4& hint = Mat4::Identity());

}  // namespace wsurf
