#pragma once

// Canonical coordinates: detection, the reparametrization t -> t~ solving
// dt~/dt = (+-Phi'^2)^(1/4), pull-back of representations, the eight
// coordinate symmetries and the exchange of first and second type.

#include <string>
#include <utility>
#include <vector>

#include "wsurf/surface.hpp"

namespace wsurf {

enum class CanonicalType { First, Second };  // Phi'^2 = +1 or -1

bool is_canonical(const PhiSource& src, const std::vector<cd>& nodes, CanonicalType type,
                  double tol = kCanonicalTol);
bool is_canonical(const WeierData& w, const GridSpec& grid, CanonicalType type, double tol = kCanonicalTol);

/// t~(t) = integral from t0 of (+-Phi'^2)^(1/4), with the fourth root
/// continued along the integration path. The forward table over the grid
/// nodes is built once; evaluation is read-only afterwards.
class CanonicalMap {
 public:
  CanonicalMap(PhiSource src, const GridSpec& grid, cd t0, CanonicalType type);

  cd t0() const { return t0_; }
  CanonicalType type() const { return type_; }
  const GridSpec& grid() const { return grid_; }

  /// t~(t).
  cd forward(cd t) const;
  /// dt~/dt at t, on the branch continued from t0.
  cd derivative(cd t) const;
  /// t(t~) by Newton iteration warm-started from the table.
  cd inverse(cd s) const;

  /// t~ at the grid nodes, GridSpec::index order.
  const std::vector<cd>& mapped_nodes() const { return s_; }

  /// Phi~(s) = Phi(t(s)) t'(s), exactly (no square-root sign choice).
  PhiSource pullback() const;

  /// Jet of t(s) in s: (t, t', t'').
  Jet inverse_jet(cd s) const;

 private:
  cd root_near(cd t, cd ref) const;
  int nearest_node(cd t) const;
  std::pair<cd, cd> integrate_from(cd a, cd root_a, cd b, int steps) const;

  PhiSource src_;
  GridSpec grid_;
  cd t0_;
  CanonicalType type_;
  cd root_t0_;
  std::vector<cd> s_;
  std::vector<cd> root_;
};

struct CanonizeResult {
  CanonicalMap map;
  /// First type: GFormCanonical with g~ = g o t(s). Second type: GForm with
  /// f~ = f(t(s)) t'(s) and g~ = g o t(s). Components are opaque evaluators.
  WeierData data;
  bool identity = false;  // input was already canonical of the requested type
};

/// Canonical reparametrization from base point t0. The input is first
/// converted to the g-form. Throws DegeneratePoint when Phi'^2 vanishes at a
/// grid node, NewtonDivergence when the inverse map fails.
CanonizeResult canonize(const WeierData& w, cd t0, CanonicalType type);

struct DeckTransform {
  cd eps;              // t = eps s, or t = eps conj(s)
  bool reverses_orientation;
  std::string label;

  cd apply(cd s) const { return reverses_orientation ? eps * std::conj(s) : eps * s; }
};

/// The eight parameter maps t = e s, t = e conj(s), e in {1, i, -1, -i}.
std::vector<DeckTransform> deck_transforms();

/// Phi in the new parameter: x~(s) = x(t(s)).
PhiSource apply_deck(const DeckTransform& d, const PhiSource& src, bool canonical);

/// Precomposes with t = e^(i pi/4) s, which exchanges first and second type.
/// The result is general data (explicit f). Throws NotCanonical when the
/// input is canonical of neither type on its grid.
WeierData type_switch(const WeierData& w);

}  // namespace wsurf
