#pragma once

// Surface sampling from Phi: positions x = Re Psi, metric, normal-space
// second fundamental form vectors, curvatures by several routes, and
// degenerate points.

#include <functional>
#include <optional>
#include <vector>

#include "wsurf/jet.hpp"
#include "wsurf/weier.hpp"

namespace wsurf {

/// A holomorphic Phi on the parameter plane, independent of how it was
/// built. `canonical` marks canonical coordinates of the first type
/// (Phi'^2 = 1), which enables the nu, mu invariants when sampling.
class PhiSource {
 public:
  using JetFn = std::function<PhiJet(cd)>;

  PhiSource(JetFn fn, bool canonical) : fn_(std::move(fn)), canonical_(canonical) {}

  static PhiSource from(const WeierData& w);

  /// s -> c * Phi(a s + b): scale c, holomorphic affine change t = a s + b.
  PhiSource affine(cd a, cd b, cd c, bool canonical) const;
  /// s -> c * conj(Phi(a conj(s) + b)): orientation-reversing affine change.
  PhiSource anti_affine(cd a, cd b, cd c, bool canonical) const;

  PhiJet jet(cd t) const { return fn_(t); }
  CVec4 phi(cd t) const { return fn_(t).phi; }
  bool canonical() const { return canonical_; }

 private:
  JetFn fn_;
  bool canonical_;
};

inline constexpr double kQuadratureTol = 1e-10;
inline constexpr double kDegenerateTol = 1e-10;
inline constexpr double kCanonicalTol = 1e-8;

/// Psi(t) = integral of Phi along the straight segment [t0, t]; Psi(t0) = 0.
CVec4 integrate_psi(const PhiSource& src, cd t0, cd t, double tol = kQuadratureTol);
CVec4 integrate_psi(const WeierData& w, cd t0, cd t, double tol = kQuadratureTol);

struct Curvatures {
  double E = 0, K = 0, kappa = 0;
};

/// From Phi and Phi' alone: E = |Phi|^2 / 2, K = -4 |Phi'perp|^2 / |Phi|^4,
/// kappa = 4 det(Phi, conj Phi, Phi', conj Phi') / |Phi|^6.
Curvatures curvatures_general(const CVec4& phi, const CVec4& dphi);
/// K through the bivector |Phi ^ Phi'|^2 / |Phi|^6.
double gauss_curvature_bivector(const CVec4& phi, const CVec4& dphi);

/// g-form route: E = |f|^2 |1 + g1 conj g2|^2,
/// K + i kappa = -4 g1' conj g2' / (E (1 + g1 conj g2)^2).
Curvatures curvatures_gform(cd f, const Jet& g1, const Jet& g2);
/// Canonical g-form route, f = 1 / (2 sqrt(g1' g2')) absorbed.
Curvatures curvatures_gform_canonical(const Jet& g1, const Jet& g2);
/// theta route for the hyperbolic form, theta = Re h1 + i Im h2.
Curvatures curvatures_theta(cd f, const Jet& h1, const Jet& h2);

struct NuMu {
  double nu = 0, mu = 0;
  bool clipped = false;  // a slightly negative mu^2 or nu^2 was set to 0
};

/// nu, mu in canonical coordinates of the first type. The sign of mu follows
/// kappa = 2 nu mu. Throws NotCanonical when |Phi'^2 - 1| >= 1e-8.
NuMu nu_mu(const CVec4& phi, const CVec4& dphi);

struct SurfacePoint {
  cd t;
  CVec4 psi;
  RVec4 x;
  double E = 0;
  RVec4 sigma_uu, sigma_uv;
  double K = 0, kappa = 0;
  std::optional<double> nu, mu;
  cd phi_prime_sq;
  bool degenerate = false;
};

struct SurfaceGrid {
  GridSpec grid;
  cd t0;
  bool canonical = false;
  std::vector<SurfacePoint> points;  // GridSpec::index order

  const SurfacePoint& at(int i, int j) const { return points[grid.index(i, j)]; }
};

/// Pointwise quantities without the position.
SurfacePoint evaluate_point(const PhiSource& src, cd t);

/// Samples every node; x is chained along the first column from t0 and then
/// along each row. t0 defaults to the first node.
SurfaceGrid sample(const PhiSource& src, const GridSpec& grid, std::optional<cd> t0 = std::nullopt);
SurfaceGrid sample(const WeierData& w, const GridSpec& grid, std::optional<cd> t0 = std::nullopt);
inline SurfaceGrid sample(const WeierData& w) { return sample(w, w.grid); }

/// Order of the zero of Phi'^2 at t, as the winding number on a circle of
/// radius r. Zero when t is not degenerate.
int degeneracy_order(const PhiSource& src, cd t, double r = 1e-3, int n = 64);

}  // namespace wsurf
