#include "wsurf/motions.hpp"

#include <array>
#include <cmath>
#include <string>

namespace wsurf {

namespace {

constexpr double kUnimodularTol = 1e-12;

bool is_lit(const Expr& e, cd v) { return e.kind() == Expr::Kind::Literal && e.literal_value() == v; }

/// alpha * g + beta with the trivial coefficients dropped.
Expr affine_expr(cd alpha, const Expr& g, cd beta) {
  if (alpha == cd(0.0)) return Expr::literal(beta);
  Expr e = alpha == cd(1.0) ? g : Expr::literal(alpha) * g;
  return beta == cd(0.0) ? e : e + Expr::literal(beta);
}

Expr ratio(const Expr& num, const Expr& den) { return is_lit(den, 1.0) ? num : num / den; }

Expr product(const Expr& a, const Expr& b) {
  if (is_lit(a, 1.0)) return b;
  if (is_lit(b, 1.0)) return a;
  return a * b;
}

struct VariantInfo {
  MotionVariant v;
  const char* tag;
};

constexpr std::array<VariantInfo, 4> kVariants{{
    {MotionVariant::OrthochronousProper, "orthochronous-proper"},
    {MotionVariant::NonOrthochronousProper, "non-orthochronous-proper"},
    {MotionVariant::OrthochronousImproper, "orthochronous-improper"},
    {MotionVariant::NonOrthochronousImproper, "non-orthochronous-improper"},
}};

bool swaps(MotionVariant v) {
  return v == MotionVariant::OrthochronousImproper || v == MotionVariant::NonOrthochronousImproper;
}

bool negates_f(MotionVariant v) {
  return v == MotionVariant::NonOrthochronousProper || v == MotionVariant::OrthochronousImproper;
}

}  // namespace

Mat4 eta() { return minkowski_signature<double>().asDiagonal(); }

SO31 SO31::tagged(const Mat4& a) {
  SO31 out;
  out.a = a;
  out.proper = a.determinant() > 0;
  out.orthochronous = a(3, 3) > 0;
  return out;
}

double SO31::lorentz_defect() const { return (a.transpose() * eta() * a - eta()).cwiseAbs().maxCoeff(); }

SO31 spinor_to_so31(const Mat2& at) {
  if (std::abs(at.determinant() - 1.0) >= kUnimodularTol)
    throw NotUnimodular("spinor map needs det = 1, got det = " + format_complex(at.determinant()));
  Mat4 a;
  for (int k = 0; k < 4; ++k) {
    const Mat2 img = at * s_matrix(RVec4(RVec4::Unit(k))) * at.adjoint();
    a.col(k) = s_matrix_inv<double>(img).real();
  }
  return SO31::tagged(a);
}

Mat2 so31_to_spinor(const Mat4& a) {
  // sum_k S(A e_k) S(e_k) = 2 conj(tr Ã) Ã; when tr Ã vanishes lift A R
  // for an auxiliary rotation R with known preimage instead.
  auto lift_direct = [](const Mat4& m) -> std::optional<Mat2> {
    Mat2 acc = Mat2::Zero();
    for (int k = 0; k < 4; ++k) {
      const RVec4 e = RVec4::Unit(k);
      acc += s_matrix(RVec4(m * e)) * s_matrix(e);
    }
    const cd det = acc.determinant();
    if (std::abs(det) < 1e-6) return std::nullopt;
    return Mat2(acc / std::sqrt(det));
  };
  if (auto at = lift_direct(a)) return *at;
  const cd i(0, 1);
  const std::array<Mat2, 3> aux = {
      Mat2{{std::exp(i * 0.5), 0.0}, {0.0, std::exp(-i * 0.5)}},
      Mat2{{std::cos(0.5), std::sin(0.5)}, {-std::sin(0.5), std::cos(0.5)}},
      Mat2{{std::cos(0.5), i * std::sin(0.5)}, {i * std::sin(0.5), std::cos(0.5)}},
  };
  for (const Mat2& r : aux) {
    if (auto at = lift_direct(a * spinor_to_so31(r).a)) return Mat2(*at * r.inverse());
  }
  throw NotUnimodular("matrix is not in the image of the spinor map");
}

Mat2 normalize_sl2(const Mat2& b) {
  const cd det = b.determinant();
  if (std::abs(det) < 1e-14 * std::max(1.0, b.cwiseAbs2().maxCoeff()))
    throw SingularMatrix("Mobius matrix is singular");
  return b / std::sqrt(det);
}

Mat2 spinor_of_mobius(const Mat2& b) {
  const Mat2 n = normalize_sl2(b);
  Mat2 at;
  at << std::conj(n(0, 0)), -std::conj(n(0, 1)), -std::conj(n(1, 0)), std::conj(n(1, 1));
  return at;
}

const char* variant_tag(MotionVariant v) {
  for (const auto& info : kVariants)
    if (info.v == v) return info.tag;
  return "?";
}

std::optional<MotionVariant> variant_from_tag(const std::string& tag) {
  for (const auto& info : kVariants)
    if (tag == info.tag) return info.v;
  return std::nullopt;
}

Mat4 variant_matrix(MotionVariant v) {
  RVec4 d(1, 1, 1, 1);
  if (swaps(v)) d(3) = -1;
  if (negates_f(v)) d = -d;
  return d.asDiagonal();
}

SO31 motion_of(const Mat2& b, MotionVariant v) {
  return SO31::tagged(variant_matrix(v) * spinor_to_so31(spinor_of_mobius(b)).a);
}

MobiusResult mobius_act(const Expr& g1, const Expr& g2, const std::optional<Expr>& f, const Mat2& b,
                        MotionVariant v) {
  const Mat2 n = normalize_sl2(b);
  const cd a = n(0, 0), bb = n(0, 1), c = n(1, 0), d = n(1, 1);
  const Expr den1 = affine_expr(c, g1, d);
  const Expr den2 = affine_expr(-std::conj(bb), g2, std::conj(a));
  MobiusResult out;
  out.g1 = ratio(affine_expr(a, g1, bb), den1);
  out.g2 = ratio(affine_expr(std::conj(d), g2, -std::conj(c)), den2);
  if (f) {
    Expr fh = product(product(*f, den1), den2);
    out.f = negates_f(v) ? -fh : fh;
  }
  if (swaps(v)) std::swap(out.g1, out.g2);
  return out;
}

WeierData mobius_act(const WeierData& w, const Mat2& b, MotionVariant v) {
  const WeierData g = convert(w, w.canonical() ? Form::GFormCanonical : Form::GForm);
  const MobiusResult r = mobius_act(g.c1, g.c2, g.canonical() ? std::nullopt : std::optional<Expr>(g.f), b, v);
  WeierData out = g;
  out.c1 = r.g1;
  out.c2 = r.g2;
  if (r.f) out.f = *r.f;
  return out;
}

// ---------------------------------------------------------------------------
// Congruence

Congruence verify_congruence(const PhiSource& s1, const PhiSource& s2, const GridSpec& grid, double tol,
                             const Mat4& hint) {
  const std::vector<cd> nodes = grid.nodes();
  if (nodes.size() < 8) throw Error("congruence check needs at least 8 nodes");
  const int n = static_cast<int>(nodes.size());

  Eigen::MatrixXd X(2 * n, 4), Y(2 * n, 4);
  std::vector<CVec4> p1(n), p2(n);
  double scale = 1.0;
  for (int k = 0; k < n; ++k) {
    p1[k] = s1.phi(nodes[k]);
    p2[k] = s2.phi(nodes[k]);
    X.row(2 * k) = p1[k].real().transpose();
    X.row(2 * k + 1) = p1[k].imag().transpose();
    Y.row(2 * k) = p2[k].real().transpose();
    Y.row(2 * k + 1) = p2[k].imag().transpose();
    scale = std::max({scale, max_abs(p1[k]), max_abs(p2[k])});
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X);
  cod.setThreshold(1e-10);
  const Mat4 a = hint + Mat4(cod.solve(Y - X * hint.transpose())).transpose();

  Congruence out;
  out.A = SO31::tagged(a);
  for (int k = 0; k < n; ++k)
    out.residual = std::max(out.residual, max_abs(CVec4(p2[k] - a.cast<cd>() * p1[k])) / scale);
  if (out.residual > tol) throw NotCongruent("Phi of the second surface is not a Lorentz image of the first", out.residual);
  const double defect = out.A.lorentz_defect();
  if (defect > std::sqrt(tol)) throw NotCongruent("fitted linear map is not a Lorentz transformation", defect);

  const SurfaceGrid x1 = sample(s1, grid), x2 = sample(s2, grid);
  out.b = x2.points[0].x - a * x1.points[0].x;
  double pos_scale = 1.0, pos_res = 0.0;
  for (int k = 0; k < n; ++k) {
    pos_scale = std::max(pos_scale, x2.points[k].x.cwiseAbs().maxCoeff());
    pos_res = std::max(pos_res, (x2.points[k].x - a * x1.points[k].x - out.b).cwiseAbs().maxCoeff());
  }
  if (pos_res > tol * pos_scale) throw NotCongruent("positions do not match after the fitted motion", pos_res);
  return out;
}

Congruence verify_congruence(const WeierData& w1, const WeierData& w2, const GridSpec& grid, double tol,
                             const Mat4& hint) {
  return verify_congruence(PhiSource::from(w1), PhiSource::from(w2), grid, tol, hint);
}

}  // namespace wsurf
