#include "wsurf/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "wsurf/canonical.hpp"
#include "wsurf/family.hpp"
#include "wsurf/motions.hpp"

namespace wsurf {

namespace {

double rel(double x, double y) { return std::abs(x - y) / (1.0 + std::abs(y)); }

/// Runs check over the nodes, keeping the worst value; errors become a
/// failed (or skipped, when skip_on_error) property.
PropertyResult over_nodes(const std::string& name, double tol, const std::vector<cd>& nodes,
                          const std::function<double(cd)>& check) {
  PropertyResult r{name, false, false, 0.0, tol, {}};
  try {
    for (cd t : nodes) r.worst = std::max(r.worst, check(t));
    r.passed = r.worst <= tol;
  } catch (const Error& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

PropertyResult skipped(const std::string& name, const std::string& why) {
  PropertyResult r{name, true, true, 0.0, 0.0, why};
  return r;
}

}  // namespace

std::string format_property(const PropertyResult& r) {
  char buf[96];
  std::string line = r.name + ": ";
  if (r.skipped) return line + "SKIP " + r.detail;
  std::snprintf(buf, sizeof buf, "%s worst=%.3e tol=%.1e", r.passed ? "PASS" : "FAIL", r.worst, r.tol);
  line += buf;
  if (!r.detail.empty()) line += " " + r.detail;
  return line;
}

std::vector<PropertyResult> run_invariant_suite(const WeierData& w, const GridSpec& grid, std::optional<cd> t0) {
  std::vector<PropertyResult> out;
  const PhiSource src = PhiSource::from(w);
  const std::vector<cd> nodes = grid.nodes();

  out.push_back(over_nodes("isothermal", 1e-10, nodes, [&](cd t) {
    const CVec4 p = src.phi(t);
    return std::abs(bilinear_dot(p, p)) / std::max(1.0, std::pow(max_abs(p), 2));
  }));

  out.push_back(over_nodes("space_like", 0.0, nodes, [&](cd t) { return norm_sq(src.phi(t)) > 0 ? 0.0 : 1.0; }));

  out.push_back(over_nodes("gauss_curvature_bivector", 1e-10, nodes, [&](cd t) {
    const PhiJet j = src.jet(t);
    const double k = curvatures_general(j.phi, j.dphi).K;
    return rel(gauss_curvature_bivector(j.phi, j.dphi), k);
  }));

  out.push_back(over_nodes("sigma_normal", 1e-9, nodes, [&](cd t) {
    const PhiJet j = src.jet(t);
    const SurfacePoint p = evaluate_point(src, t);
    const double scale = std::max(1.0, max_abs(j.phi) * max_abs(j.dphi));
    return std::max(std::abs(hermitian_dot(CVec4(p.sigma_uu.cast<cd>()), j.phi)),
                    std::abs(hermitian_dot(CVec4(p.sigma_uv.cast<cd>()), j.phi))) /
           scale;
  }));

  try {
    const WeierData g = convert(w, Form::GForm);
    out.push_back(over_nodes("route_gform", 1e-9, nodes, [&](cd t) {
      const PhiJet j = src.jet(t);
      const Curvatures a = curvatures_general(j.phi, j.dphi);
      const Curvatures b = curvatures_gform(eval(g.f, t), eval_jet(g.c1, t), eval_jet(g.c2, t));
      return std::max({rel(a.E, b.E), rel(a.K, b.K), rel(a.kappa, b.kappa)});
    }));
  } catch (const Error& e) {
    out.push_back(skipped("route_gform", e.what()));
  }

  try {
    const WeierData h = convert(w, Form::Hyperbolic);
    out.push_back(over_nodes("route_theta", 1e-9, nodes, [&](cd t) {
      const PhiJet j = src.jet(t);
      const Curvatures a = curvatures_general(j.phi, j.dphi);
      const Curvatures b = curvatures_theta(eval(h.f, t), eval_jet(h.c1, t), eval_jet(h.c2, t));
      return std::max({rel(a.E, b.E), rel(a.K, b.K), rel(a.kappa, b.kappa)});
    }));
  } catch (const Error& e) {
    out.push_back(skipped("route_theta", e.what()));
  }

  // Local stencils integrate Phi from the node itself, so the position
  // differences carry no cancellation against x(t).
  out.push_back(over_nodes("harmonic", 1e-5, nodes, [&](cd t) {
    constexpr double h = 1e-3;
    const std::array<cd, 4> steps{cd(h, 0), cd(-h, 0), cd(0, h), cd(0, -h)};
    CVec4 acc = CVec4::Zero();
    for (cd d : steps) acc += integrate_psi(src, t, t + d);
    return acc.real().cwiseAbs().maxCoeff() / (h * h) / std::max(1.0, max_abs(src.phi(t)));
  }));

  out.push_back(over_nodes("tangent_vectors", 1e-7, nodes, [&](cd t) {
    constexpr double h = 1e-4;
    const CVec4 p = src.phi(t);
    const RVec4 xu = integrate_psi(src, t - h, t + h).real() / (2 * h);
    const RVec4 xv = integrate_psi(src, t - cd(0, h), t + cd(0, h)).real() / (2 * h);
    return std::max((xu - p.real()).cwiseAbs().maxCoeff(), (xv + p.imag()).cwiseAbs().maxCoeff()) /
           std::max(1.0, max_abs(p));
  }));

  out.push_back(over_nodes("degenerate_iff_flat_normal", 0.0, nodes, [&](cd t) {
    const SurfacePoint p = evaluate_point(src, t);
    const bool zero = std::abs(p.K) < 1e-7 && std::abs(p.kappa) < 1e-7;
    return p.degenerate == zero ? 0.0 : 1.0;
  }));

  if (src.canonical()) {
    out.push_back(over_nodes("canonical_nu_mu", 1e-8, nodes, [&](cd t) {
      const PhiJet j = src.jet(t);
      const SurfacePoint p = evaluate_point(src, t);
      const double nu = *p.nu, mu = *p.mu;
      const double n2 = norm_sq(j.phi);
      const double q = norm_sq(normal_project(j.phi, j.dphi));
      return std::max({rel(-nu * nu + mu * mu, p.K), rel(2 * nu * mu, p.kappa),
                       rel(1.0 / std::sqrt(nu * nu + mu * mu), p.E),
                       rel(16 * (1 - q * q) / std::pow(n2, 4), p.kappa * p.kappa)});
    }));
  } else {
    out.push_back(skipped("canonical_nu_mu", "coordinates are not canonical"));
  }

  try {
    Mat2 b;
    b << cd(1.1, 0.2), cd(0.3, -0.1), cd(-0.2, 0.25), cd(0.9, 0.1);
    const WeierData m = mobius_act(convert(w, Form::GForm), b);
    const PhiSource msrc = PhiSource::from(m);
    out.push_back(over_nodes("motion_invariance", 1e-9, nodes, [&](cd t) {
      const PhiJet j1 = src.jet(t), j2 = msrc.jet(t);
      const Curvatures a = curvatures_general(j1.phi, j1.dphi), c = curvatures_general(j2.phi, j2.dphi);
      return std::max({rel(c.E, a.E), rel(c.K, a.K), rel(c.kappa, a.kappa)});
    }));
    const Mat4 expected = motion_of(b, MotionVariant::OrthochronousProper).a;
    const Congruence cg = verify_congruence(src, msrc, grid, kCongruenceTol, expected);
    const double dA = (cg.A.a - expected).cwiseAbs().maxCoeff();
    out.push_back({"motion_congruence", false, dA <= 1e-7, dA, 1e-7, {}});
  } catch (const Error& e) {
    out.push_back({"motion_congruence", false, false, 0.0, 1e-7, e.what()});
  }

  if (w.form == Form::GFormCanonical && is_canonical(w, grid, CanonicalType::First)) {
    const IsometryReport rep = check_isometry(w, associate(w, std::numbers::pi / 4), grid);
    out.push_back({"family_isometry", false, rep.ok(), std::max({rep.max_dE, rep.max_dK, rep.max_dkappa}), rep.tol,
                   {}});
  } else {
    out.push_back(skipped("family_isometry", "needs canonical g-form data"));
  }

  // positions are only checked for finiteness here; the quadrature itself
  // raises when it cannot reach its tolerance
  try {
    const SurfaceGrid s = sample(src, grid, t0);
    double worst = 0;
    for (const auto& p : s.points) worst = std::max(worst, p.x.allFinite() ? 0.0 : 1.0);
    out.push_back({"positions_finite", false, worst == 0, worst, 0.0, {}});
  } catch (const Error& e) {
    out.push_back({"positions_finite", false, false, 1.0, 0.0, e.what()});
  }
  return out;
}

}  // namespace wsurf
