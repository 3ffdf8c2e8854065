#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"
#include "wsurf/errors.hpp"
#include "wsurf/family.hpp"

using namespace wsurf;

namespace {

constexpr double kPi = std::numbers::pi;
const cd I(0, 1);

const GridSpec kGrid{0.5, 1.5, -0.5, 0.5, 21, 21};

WeierData quadratic() { return WeierData::gform_canonical(parse_expr("t"), parse_expr("t^2"), kGrid); }

}  // namespace

TEST(Family, IdentityMember) {
  const WeierData w = quadratic();
  const FamilyMember m = associate(w, 0.0);
  EXPECT_EQ(m.a, cd(1.0));
  const PhiSource src = PhiSource::from(w);
  for (cd t : kGrid.nodes()) EXPECT_LT(max_abs(CVec4(m.source.phi(t) - src.phi(t))), 1e-15);
  const IsometryReport r = check_isometry(w, m, kGrid);
  EXPECT_EQ(r.max_dE, 0.0);
  EXPECT_EQ(r.max_dK, 0.0);
  EXPECT_EQ(r.max_dkappa, 0.0);
}

TEST(Family, AngleRange) {
  const WeierData w = quadratic();
  EXPECT_THROW(associate(w, -0.1), ConditionViolated);
  EXPECT_THROW(associate(w, 2.0), ConditionViolated);
  EXPECT_NO_THROW(rotate_family(w, kPi));
  const WeierData general = WeierData::gform(Expr::literal(1.0), Expr::variable(), Expr::variable(), kGrid);
  EXPECT_THROW(associate(general, 0.5), NotCanonical);
}

TEST(Family, MembersStayCanonical) {
  const WeierData w = quadratic();
  for (double phi : {kPi / 8, kPi / 4, kPi / 2}) {
    const FamilyMember m = associate(w, phi);
    EXPECT_TRUE(is_canonical(m.source, kGrid.nodes(), CanonicalType::First, 1e-10));
    EXPECT_EQ(m.data.form, Form::GFormCanonical);
    // the stored data generates the member up to the canonical square-root sign
    const PhiSource from_data = PhiSource::from(m.data);
    for (cd s : kGrid.nodes()) {
      const CVec4 a = from_data.phi(s), b = m.source.phi(s);
      EXPECT_LT(std::min(max_abs(CVec4(a - b)), max_abs(CVec4(a + b))), 1e-12);
    }
  }
}

TEST(Family, Isometry) {
  const WeierData w = quadratic();
  for (double phi : {kPi / 8, kPi / 4, kPi / 2}) {
    const IsometryReport r = check_isometry(w, associate(w, phi), kGrid);
    EXPECT_TRUE(r.ok()) << phi << " " << r.max_dE << " " << r.max_dK << " " << r.max_dkappa;
  }
}

TEST(Family, ConjugateIsNotCongruent) {
  const WeierData w = quadratic();
  EXPECT_THROW(verify_congruence(PhiSource::from(w), conjugate(w).source, kGrid), NotCongruent);
}

TEST(Family, DoubleConjugateIsPointReflection) {
  // a grid whose rotations by e^(i pi/4) and i avoid the cut of sqrt(2t)
  const GridSpec grid{0.7, 1.3, 0.7, 1.3, 9, 9};
  WeierData w = quadratic();
  w.grid = grid;
  const FamilyMember twice = conjugate(conjugate(w));
  EXPECT_NEAR(twice.phi, kPi, 1e-15);
  // x~(s) = -x(i s): compare with the original reparametrized by t = i s
  const PhiSource original = PhiSource::from(w).affine(I, 0.0, I, true);
  const Congruence c = verify_congruence(original, twice.source, grid, kCongruenceTol, -Mat4::Identity());
  EXPECT_LE(c.residual, 1e-7);
  EXPECT_LT((c.A.a + Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-7);
  EXPECT_FALSE(c.A.orthochronous);
  EXPECT_TRUE(c.A.proper);
}

TEST(FamilyProperty, AnglesAdd) {
  const WeierData w = quadratic();
  const FamilyMember a = rotate_family(rotate_family(w, 0.3), 0.4);
  const FamilyMember b = rotate_family(w, 0.7);
  EXPECT_LT(std::abs(a.a - b.a), 1e-15);
  const GridSpec small{0.8, 1.2, -0.2, 0.2, 5, 5};
  for (cd s : small.nodes()) EXPECT_LT(max_abs(CVec4(a.source.phi(s) - b.source.phi(s))), 1e-13);
}
