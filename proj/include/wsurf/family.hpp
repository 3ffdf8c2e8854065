#pragma once

// The associated family of a canonical g-form surface: members generated by
// g(e^(i phi/2) s), the conjugate surface, and the isometry check.

#include <string>

#include "wsurf/surface.hpp"

namespace wsurf {

struct FamilyMember {
  double phi = 0;
  cd a = 1.0;  // e^(i phi / 2); the member at s corresponds to t = a s
  /// GFormCanonical(g1(a s), g2(a s)); generates the member up to the sign
  /// of the canonical square root.
  WeierData data;
  /// Phi~(s) = Phi(a s) / a, exact.
  PhiSource source;
  std::string note;
};

/// Member M_phi, phi in [0, pi/2]. Throws NotCanonical unless the input is
/// canonical of the first type on its grid.
FamilyMember associate(const WeierData& w, double phi);
/// Any real phi (e.g. pi for the point reflection).
FamilyMember rotate_family(const WeierData& w, double phi);
/// Member of a member: angles add, the pull-back stays exact.
FamilyMember rotate_family(const FamilyMember& m, double phi);

/// The phi = pi/2 member, x~ = Im Psi.
FamilyMember conjugate(const WeierData& w);
FamilyMember conjugate(const FamilyMember& m);

struct IsometryReport {
  double max_dE = 0, max_dK = 0, max_dkappa = 0;  // relative: |a - b| / (1 + |b|)
  double tol = 1e-9;
  bool ok() const { return max_dE <= tol && max_dK <= tol && max_dkappa <= tol; }
};

/// Compares E, K, kappa of the member at s with the original at a s.
IsometryReport check_isometry(const WeierData& w, const FamilyMember& m, const GridSpec& grid);

}  // namespace wsurf
