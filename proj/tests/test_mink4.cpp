#include <gtest/gtest.h>

#include "support.hpp"
#include "wsurf/mink4.hpp"

using namespace wsurf;
using test::Gen;

namespace {

const cd I(0, 1);

CVec4 v(cd a, cd b, cd c, cd d) { return CVec4(a, b, c, d); }

}  // namespace

TEST(Mink4, BilinearSignature) {
  EXPECT_EQ(bilinear_dot(v(0, 0, 0, 1), v(0, 0, 0, 1)), cd(-1));
  EXPECT_EQ(bilinear_dot(v(1, 0, 0, 1), v(1, 0, 0, 1)), cd(0));
  const CVec4 phi = v(I / 2.0, -0.5, 0, 0);
  EXPECT_LT(std::abs(bilinear_dot(phi, phi)), 1e-15);
}

TEST(Mink4, HermitianNorm) {
  EXPECT_NEAR(std::real(hermitian_dot(v(I, 0, 0, 0), v(I, 0, 0, 0))), 1.0, 1e-15);
  EXPECT_NEAR(norm_sq(v(I / 2.0, -0.5, 0, 0)), 0.5, 1e-15);
  EXPECT_NEAR(norm_sq(v(0, 0, 0, 1)), -1.0, 1e-15);
}

TEST(Mink4, WedgeNorm) {
  const CVec4 a = v(1, 0, 0, 0);
  EXPECT_NEAR(wedge_norm_sq(a, a), 0.0, 1e-15);
  EXPECT_NEAR(wedge_norm_sq(a, v(0, 1, 0, 0)), 1.0, 1e-15);
  // phi = (i cosh t, sinh t, 1, 0) and its derivative at t = 0
  EXPECT_NEAR(wedge_norm_sq(v(I, 0, 1, 0), v(0, 1, 0, 0)), 2.0, 1e-15);
}

TEST(Mink4, Det4) {
  EXPECT_NEAR(std::abs(det4(v(1, 0, 0, 0), v(0, 1, 0, 0), v(0, 0, 1, 0), v(0, 0, 0, 1)) - 1.0), 0.0, 1e-15);
  const CVec4 a = v(1, 2, I, 3);
  EXPECT_NEAR(std::abs(det4(a, a, v(0, 1, 0, 0), v(0, 0, 1, 0))), 0.0, 1e-15);
  const CVec4 phi = v(I / 2.0, -0.5, 0, 0), d = v(0, 0, 1, 0);
  EXPECT_NEAR(std::abs(det4(phi, CVec4(phi.conjugate()), d, d)), 0.0, 1e-15);
}

TEST(Mink4, NormalProject) {
  const CVec4 phi = v(I / 2.0, -0.5, 0, 0);
  const CVec4 normal = v(0, 0, 1, 0);
  EXPECT_LT(max_abs(CVec4(normal_project(phi, normal) - normal)), 1e-15);
  EXPECT_LT(max_abs(normal_project(phi, CVec4(cd(2.0, 1.0) * phi))), 1e-15);
  EXPECT_THROW(normal_project(v(1, 0, 0, 0), normal), NotIsothermal);
  EXPECT_THROW(normal_project(v(1, 0, 0, 1), normal), DegenerateMetric);
}

TEST(Mink4Property, SymmetryAndConjugation) {
  Gen gen(11);
  for (int k = 0; k < 200; ++k) {
    const CVec4 a = gen.cvec4(2), b = gen.cvec4(2), c = gen.cvec4(2);
    const cd s = gen.complex(2);
    const double tol = 1e-10 * 16;
    EXPECT_LT(std::abs(bilinear_dot(a, b) - bilinear_dot(b, a)), tol);
    EXPECT_LT(std::abs(bilinear_dot(CVec4(a + s * c), b) - bilinear_dot(a, b) - s * bilinear_dot(c, b)), tol);
    EXPECT_LT(std::abs(hermitian_dot(a, b) - std::conj(hermitian_dot(b, a))), tol);
    EXPECT_LT(std::abs(std::imag(hermitian_dot(a, a))), tol);
  }
}

// Isotropic phi from the g-form at random (f, g1, g2), with a random dphi
// made bilinear-orthogonal to phi.
TEST(Mink4Property, NormalProjectionIdentities) {
  Gen gen(12);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const CVec4 phi = gform_phi(gen.complex(1.5), gen.complex(0.9), gen.complex(0.9));
    if (norm_sq(phi) < 0.05) continue;
    CVec4 dphi = gen.cvec4(1.5);
    // remove the component along conj(phi) direction so that phi . dphi = 0
    const CVec4 w = phi.conjugate();
    dphi -= (bilinear_dot(phi, dphi) / bilinear_dot(phi, w)) * w;
    ASSERT_LT(std::abs(bilinear_dot(phi, dphi)), 1e-12);
    const CVec4 p = normal_project(phi, dphi);
    const double scale = std::max({1.0, max_abs(phi), max_abs(dphi)});
    const double tol = 1e-10 * scale * scale;
    EXPECT_LT(std::abs(bilinear_dot(p, p) - bilinear_dot(dphi, dphi)), tol);
    EXPECT_LT(std::abs(norm_sq(p) - wedge_norm_sq(phi, dphi) / norm_sq(phi)), tol * scale * scale);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}
