#include "wsurf/surface.hpp"

#include <cmath>
#include <numbers>

#include "wsurf/quadrature.hpp"

namespace wsurf {

namespace {

constexpr double kRealityTol = 1e-9;

}  // namespace

PhiSource PhiSource::from(const WeierData& w) {
  return PhiSource([w](cd t) { return build_phi(w, t); }, w.canonical());
}

PhiSource PhiSource::affine(cd a, cd b, cd c, bool canonical) const {
  JetFn base = fn_;
  return PhiSource(
      [base, a, b, c](cd s) {
        const PhiJet j = base(a * s + b);
        return PhiJet{c * j.phi, (c * a) * j.dphi, (c * a * a) * j.ddphi};
      },
      canonical);
}

PhiSource PhiSource::anti_affine(cd a, cd b, cd c, bool canonical) const {
  JetFn base = fn_;
  return PhiSource(
      [base, a, b, c](cd s) {
        const PhiJet j = base(a * std::conj(s) + b);
        const cd ab = std::conj(a);
        return PhiJet{c * j.phi.conjugate(), (c * ab) * j.dphi.conjugate(),
                      (c * ab * ab) * j.ddphi.conjugate()};
      },
      canonical);
}

CVec4 integrate_psi(const PhiSource& src, cd t0, cd t, double tol) {
  return integrate_segment([&src](cd s) { return src.phi(s); }, t0, t, tol);
}

CVec4 integrate_psi(const WeierData& w, cd t0, cd t, double tol) {
  return integrate_psi(PhiSource::from(w), t0, t, tol);
}

// ---------------------------------------------------------------------------
// Curvature routes

Curvatures curvatures_general(const CVec4& phi, const CVec4& dphi) {
  const CVec4 perp = normal_project(phi, dphi);
  const double n2 = norm_sq(phi);
  const cd det = det4<double>(phi, phi.conjugate(), dphi, dphi.conjugate());
  const double scale = std::max(1.0, std::pow(max_abs(phi) * max_abs(dphi), 2));
  if (std::abs(det.imag()) > kRealityTol * scale)
    throw DegenerateMetric("normal curvature determinant is not real");
  return {0.5 * n2, -4.0 * norm_sq(perp) / (n2 * n2), 4.0 * det.real() / (n2 * n2 * n2)};
}

double gauss_curvature_bivector(const CVec4& phi, const CVec4& dphi) {
  const double n2 = norm_sq(phi);
  return -4.0 * wedge_norm_sq(phi, dphi) / (n2 * n2 * n2);
}

Curvatures curvatures_gform(cd f, const Jet& g1, const Jet& g2) {
  const cd d = 1.0 + g1.v0 * std::conj(g2.v0);
  if (std::abs(d) < kValidityEps) throw ConditionViolated("1 + g1 conj(g2) vanishes");
  const double E = std::norm(f) * std::norm(d);
  const cd kk = -4.0 * g1.v1 * std::conj(g2.v1) / (E * d * d);
  return {E, kk.real(), kk.imag()};
}

Curvatures curvatures_gform_canonical(const Jet& g1, const Jet& g2) {
  const cd d = 1.0 + g1.v0 * std::conj(g2.v0);
  if (std::abs(d) < kValidityEps) throw ConditionViolated("1 + g1 conj(g2) vanishes");
  const double p = std::abs(g1.v1 * g2.v1);
  if (p == 0.0) throw CanonicalBranchError("g1' g2' vanishes");
  const cd kk = -16.0 * p * g1.v1 * std::conj(g2.v1) / (std::norm(d) * d * d);
  return {std::norm(d) / (4.0 * p), kk.real(), kk.imag()};
}

Curvatures curvatures_theta(cd f, const Jet& h1, const Jet& h2) {
  const cd theta(h1.v0.real(), h2.v0.imag());
  const cd theta_u(h1.v1.real(), h2.v1.imag());
  const cd theta_v(-h1.v1.imag(), h2.v1.real());
  const cd c = std::cosh(theta);
  if (std::abs(c) < kValidityEps) throw ConditionViolated("cosh(theta) vanishes");
  const double E = std::norm(f) * std::norm(c);
  const cd kk = -(theta_u * theta_u + theta_v * theta_v) / (E * c * c);
  return {E, kk.real(), kk.imag()};
}

NuMu nu_mu(const CVec4& phi, const CVec4& dphi) {
  const cd p = bilinear_dot(dphi, dphi);
  if (std::abs(p - 1.0) >= kCanonicalTol) throw NotCanonical("Phi'^2 differs from 1; coordinates are not canonical");
  const double n2 = norm_sq(phi);
  const double q = norm_sq(normal_project(phi, dphi));
  NuMu out;
  double nu2 = 1.0 + q, mu2 = 1.0 - q;
  for (double* v : {&nu2, &mu2}) {
    if (*v >= 0) continue;
    if (*v < -kCanonicalTol) throw NotCanonical("|Phi'perp|^2 outside [-1, 1] in canonical coordinates");
    *v = 0;
    out.clipped = true;
  }
  // mu from kappa = 2 nu mu: the square-root form loses half the digits
  // where mu is near zero
  out.nu = std::sqrt(2.0 * nu2) / n2;
  out.mu = curvatures_general(phi, dphi).kappa / (2.0 * out.nu);
  const double mu2_formula = 2.0 * mu2 / (n2 * n2);
  if (std::abs(out.mu * out.mu - mu2_formula) > kCanonicalTol * (1.0 + out.nu * out.nu))
    throw NotCanonical("mu^2 disagrees with the canonical-coordinate formula");
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

SurfacePoint evaluate_point(const PhiSource& src, cd t) {
  const PhiJet j = src.jet(t);
  SurfacePoint pt;
  pt.t = t;
  const CVec4 perp = normal_project(j.phi, j.dphi);
  pt.sigma_uu = perp.real();
  pt.sigma_uv = -perp.imag();
  const Curvatures c = curvatures_general(j.phi, j.dphi);
  pt.E = c.E;
  pt.K = c.K;
  pt.kappa = c.kappa;
  pt.phi_prime_sq = bilinear_dot(j.dphi, j.dphi);
  pt.degenerate = std::abs(pt.phi_prime_sq) < kDegenerateTol;
  if (src.canonical()) {
    const NuMu nm = nu_mu(j.phi, j.dphi);
    pt.nu = nm.nu;
    pt.mu = nm.mu;
  }
  return pt;
}

SurfaceGrid sample(const PhiSource& src, const GridSpec& grid, std::optional<cd> t0) {
  SurfaceGrid out;
  out.grid = grid;
  out.t0 = t0.value_or(grid.node(0, 0));
  out.canonical = src.canonical();
  out.points.resize(grid.size());

  for (int j = 0; j < grid.nv; ++j)
    for (int i = 0; i < grid.nu; ++i) out.points[grid.index(i, j)] = evaluate_point(src, grid.node(i, j));

  auto set_psi = [&](int i, int j, cd from, const CVec4& base) {
    SurfacePoint& pt = out.points[grid.index(i, j)];
    pt.psi = base + integrate_psi(src, from, pt.t);
    pt.x = pt.psi.real();
  };
  set_psi(0, 0, out.t0, CVec4::Zero());
  for (int j = 1; j < grid.nv; ++j) set_psi(0, j, grid.node(0, j - 1), out.at(0, j - 1).psi);
  for (int j = 0; j < grid.nv; ++j)
    for (int i = 1; i < grid.nu; ++i) set_psi(i, j, grid.node(i - 1, j), out.at(i - 1, j).psi);
  return out;
}

SurfaceGrid sample(const WeierData& w, const GridSpec& grid, std::optional<cd> t0) {
  return sample(PhiSource::from(w), grid, t0);
}

int degeneracy_order(const PhiSource& src, cd t, double r, int n) {
  auto p = [&](cd s) {
    const PhiJet j = src.jet(s);
    return bilinear_dot(j.dphi, j.dphi);
  };
  if (std::abs(p(t)) >= kDegenerateTol) return 0;
  double total = 0;
  cd prev = p(t + r);
  for (int k = 1; k <= n; ++k) {
    const cd cur = p(t + std::polar(r, 2 * std::numbers::pi * k / n));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace wsurf
