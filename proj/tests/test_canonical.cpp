#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"
#include "wsurf/errors.hpp"

using namespace wsurf;
using test::Gen;

namespace {

const cd I(0, 1);

WeierData linear_gform(const GridSpec& g) {
  const Expr t = Expr::variable();
  return WeierData::gform(Expr::literal(1.0), t, t, g);
}

// Phi'^2 = 4 (1 + t/2): varies, never vanishes on the grid
WeierData curved_gform(const GridSpec& g) {
  return WeierData::gform(Expr::literal(1.0), parse_expr("t + t^2/4"), parse_expr("t"), g);
}

const GridSpec kRight{0.5, 1.5, -0.5, 0.5, 11, 11};

}  // namespace

TEST(Canonical, Detection) {
  const GridSpec grid = test::square(-1, 1, 5);
  const Expr t = Expr::variable();
  EXPECT_TRUE(is_canonical(WeierData::gform_canonical(t, t, grid), grid, CanonicalType::First));
  EXPECT_FALSE(is_canonical(linear_gform(grid), grid, CanonicalType::First));
  EXPECT_FALSE(is_canonical(WeierData::gform_canonical(t, t, grid), grid, CanonicalType::Second));
}

TEST(Canonical, LinearExample) {
  const GridSpec grid = test::square(-1, 1, 11);
  const CanonizeResult r = canonize(linear_gform(grid), 0.0, CanonicalType::First);
  EXPECT_FALSE(r.identity);
  Gen gen(51);
  for (int k = 0; k < 20; ++k) {
    const cd t = gen.point(-1, 1, -1, 1);
    EXPECT_LT(std::abs(r.map.forward(t) - std::sqrt(2.0) * t), 1e-9);
  }
  EXPECT_EQ(r.data.form, Form::GFormCanonical);
  EXPECT_TRUE(is_canonical(PhiSource::from(r.data), r.map.mapped_nodes(), CanonicalType::First, 1e-10));
  EXPECT_TRUE(is_canonical(r.map.pullback(), r.map.mapped_nodes(), CanonicalType::First, 1e-10));
}

TEST(Canonical, AlreadyCanonical) {
  const GridSpec grid = test::square(-1, 1, 5);
  const Expr e = parse_expr("exp(t)");
  const cd t0(0.5, -0.5);
  const CanonizeResult r = canonize(WeierData::gform_canonical(e, e, grid), t0, CanonicalType::First);
  EXPECT_TRUE(r.identity);
  for (cd t : grid.nodes()) EXPECT_LT(std::abs(r.map.forward(t) - (t - t0)), 1e-12);
}

TEST(Canonical, DegenerateInput) {
  const GridSpec grid = test::square(-0.8, 0.8, 17);
  const WeierData w = WeierData::gform(Expr::literal(1.0), parse_expr("t^2"), parse_expr("t"), grid);
  try {
    canonize(w, grid.node(0, 0), CanonicalType::First);
    FAIL();
  } catch (const DegeneratePoint& e) {
    EXPECT_LT(std::abs(e.t()), 1e-12);
    EXPECT_EQ(e.multiplicity(), 1);
  }
}

TEST(Canonical, SecondType) {
  const CanonizeResult r = canonize(curved_gform(kRight), 1.0, CanonicalType::Second);
  EXPECT_EQ(r.data.form, Form::GForm);
  EXPECT_TRUE(is_canonical(PhiSource::from(r.data), r.map.mapped_nodes(), CanonicalType::Second, 1e-8));
}

TEST(Canonical, TypeSwitch) {
  const GridSpec grid = kRight;
  const WeierData w = WeierData::gform_canonical(parse_expr("t"), parse_expr("t^2"), grid);
  const cd a = std::polar(1.0, std::numbers::pi / 4);
  // the switched data lives on the parameters s with a s in the original grid
  std::vector<cd> pulled;
  for (cd t : grid.nodes()) pulled.push_back(t / a);
  const WeierData once = type_switch(w);
  EXPECT_TRUE(is_canonical(PhiSource::from(once), pulled, CanonicalType::Second, 1e-10));

  std::vector<cd> twice_nodes;
  for (cd t : grid.nodes()) twice_nodes.push_back(t / I);
  WeierData mid = once;
  mid.grid = GridSpec{0.6, 0.8, -0.8, -0.6, 3, 3};  // around 1 / a, where a s is valid
  const WeierData twice = type_switch(mid);
  const PhiSource src = PhiSource::from(twice);
  EXPECT_TRUE(is_canonical(src, twice_nodes, CanonicalType::First, 1e-10));
  // two switches rotate the parameter by i: Phi~(s) = i Phi(i s)
  const PhiSource rotated = PhiSource::from(w).affine(I, 0.0, I, true);
  for (cd s : twice_nodes) EXPECT_LT(max_abs(CVec4(src.phi(s) - rotated.phi(s))), 1e-12);

  EXPECT_THROW(type_switch(curved_gform(kRight)), NotCanonical);
}

TEST(Canonical, DeckTransforms) {
  const auto decks = deck_transforms();
  ASSERT_EQ(decks.size(), 8u);
  const WeierData w = WeierData::gform_canonical(parse_expr("exp(t)"), parse_expr("t"), kRight);
  const PhiSource src = PhiSource::from(w);
  Gen gen(52);
  for (const auto& d : decks) {
    SCOPED_TRACE(d.label);
    const PhiSource moved = apply_deck(d, src, true);
    for (int k = 0; k < 10; ++k) {
      // s with d(s) inside the grid
      const cd t = gen.point(0.6, 1.4, -0.4, 0.4);
      const cd s = d.reverses_orientation ? std::conj(t / d.eps) : t / d.eps;
      ASSERT_LT(std::abs(d.apply(s) - t), 1e-14);
      const PhiJet j = moved.jet(s);
      EXPECT_LT(std::abs(bilinear_dot(j.dphi, j.dphi) - 1.0), 1e-12);
      // positions agree up to translation: x~(s) - x~(s1) = x(t) - x(t1)
      const cd t1(1.0, 0.0);
      const cd s1 = d.reverses_orientation ? std::conj(t1 / d.eps) : t1 / d.eps;
      const RVec4 a = integrate_psi(moved, s1, s).real();
      const RVec4 b = integrate_psi(src, t1, t).real();
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(CanonicalProperty, InverseIdentity) {
  const CanonizeResult r = canonize(curved_gform(kRight), 1.0, CanonicalType::First);
  Gen gen(53);
  for (int k = 0; k < 50; ++k) {
    const cd t = gen.point(0.52, 1.48, -0.48, 0.48);
    const cd s = r.map.forward(t);
    EXPECT_LT(std::abs(r.map.inverse(s) - t), 1e-9);
    EXPECT_LT(std::abs(r.map.forward(r.map.inverse(s)) - s), 1e-9);
  }
}

TEST(CanonicalProperty, Conformal) {
  const CanonizeResult r = canonize(curved_gform(kRight), 1.0, CanonicalType::First);
  Gen gen(54);
  const double h = 1e-5;
  for (int k = 0; k < 50; ++k) {
    const cd t = gen.point(0.55, 1.45, -0.45, 0.45);
    const cd du = (r.map.forward(t + h) - r.map.forward(t - h)) / (2 * h);
    const cd dv = (r.map.forward(t + I * h) - r.map.forward(t - I * h)) / (2.0 * I * h);
    EXPECT_LT(std::abs(du - dv), 1e-6);
    EXPECT_LT(std::abs(du - r.map.derivative(t)), 1e-6);
  }
}

TEST(CanonicalProperty, OutputCanonicalOnMappedGrid) {
  Gen gen(55);
  for (int k = 0; k < 5; ++k) {
    const WeierData w = WeierData::gform(gen.poly(1.0, 0.2), gen.poly(0.0, 0.2) + Expr::variable(),
                                         gen.poly(0.0, 0.2) + Expr::variable(), kRight);
    const CanonizeResult r = canonize(w, 1.0, CanonicalType::First);
    EXPECT_TRUE(is_canonical(PhiSource::from(r.data), r.map.mapped_nodes(), CanonicalType::First, 1e-8));
  }
}

TEST(CanonicalProperty, BasePointsDifferByDeckAndConstant) {
  const WeierData w = curved_gform(kRight);
  const CanonicalMap m1 = canonize(w, cd(0.7, -0.2), CanonicalType::First).map;
  const CanonicalMap m2 = canonize(w, cd(1.3, 0.3), CanonicalType::First).map;
  // t~2 = eps t~1 + c with eps a fourth root of unity
  const cd ratio = m2.derivative(1.0) / m1.derivative(1.0);
  cd eps = 1.0;
  for (cd e : {cd(1), I, cd(-1), -I})
    if (std::abs(ratio - e) < std::abs(ratio - eps)) eps = e;
  EXPECT_LT(std::abs(ratio - eps), 1e-9);
  const cd c = m2.forward(1.0) - eps * m1.forward(1.0);
  Gen gen(56);
  for (int k = 0; k < 20; ++k) {
    const cd t = gen.point(0.55, 1.45, -0.45, 0.45);
    EXPECT_LT(std::abs(m2.forward(t) - eps * m1.forward(t) - c), 1e-9);
  }
}
