#include "wsurf/family.hpp"

#include <cmath>
#include <numbers>

#include "wsurf/canonical.hpp"

namespace wsurf {

namespace {

FamilyMember make_member(const WeierData& base, const PhiSource& base_src, cd base_a, double base_phi,
                         double phi) {
  const cd a = std::polar(1.0, phi / 2);
  WeierData data = base;
  data.c1 = compose_affine(base.c1, a, 0.0);
  data.c2 = compose_affine(base.c2, a, 0.0);
  return {base_phi + phi, base_a * a, std::move(data), base_src.affine(a, 0.0, 1.0 / a, true), {}};
}

void require_first_type(const WeierData& w) {
  if (w.form != Form::GFormCanonical || !is_canonical(w, w.grid, CanonicalType::First))
    throw NotCanonical("associated family needs canonical g-form data of the first type");
}

}  // namespace

FamilyMember rotate_family(const WeierData& w, double phi) {
  require_first_type(w);
  return make_member(w, PhiSource::from(w), 1.0, 0.0, phi);
}

FamilyMember rotate_family(const FamilyMember& m, double phi) {
  return make_member(m.data, m.source, m.a, m.phi, phi);
}

FamilyMember associate(const WeierData& w, double phi) {
  if (phi < 0 || phi > std::numbers::pi / 2)
    throw ConditionViolated("associated family angle must lie in [0, pi/2]");
  return rotate_family(w, phi);
}

FamilyMember conjugate(const WeierData& w) {
  FamilyMember m = associate(w, std::numbers::pi / 2);
  m.note = "canonical coordinates of the second type of the input are canonical coordinates of the first type here";
  return m;
}

FamilyMember conjugate(const FamilyMember& m) {
  FamilyMember out = rotate_family(m, std::numbers::pi / 2);
  out.note = "canonical coordinates of the second type of the input are canonical coordinates of the first type here";
  return out;
}

IsometryReport check_isometry(const WeierData& w, const FamilyMember& m, const GridSpec& grid) {
  const PhiSource orig = PhiSource::from(w);
  IsometryReport rep;
  auto rel = [](double x, double y) { return std::abs(x - y) / (1.0 + std::abs(y)); };
  for (cd s : grid.nodes()) {
    const SurfacePoint pm = evaluate_point(m.source, s);
    const SurfacePoint po = evaluate_point(orig, m.a * s);
    rep.max_dE = std::max(rep.max_dE, rel(pm.E, po.E));
    rep.max_dK = std::max(rep.max_dK, rel(pm.K, po.K));
    rep.max_dkappa = std::max(rep.max_dkappa, rel(pm.kappa, po.kappa));
  }
  return rep;
}

}  // namespace wsurf
