#include <gtest/gtest.h>

#include "support.hpp"
#include "wsurf/errors.hpp"

using namespace wsurf;
using test::Gen;

namespace {

const cd I(0, 1);

WeierData random_weier(Gen& gen, Form form, const GridSpec& grid) {
  const Expr f = gen.poly(1.0, 0.3);
  switch (form) {
    case Form::Trig: return WeierData::trig(f, gen.poly(0.0, 0.8), gen.poly(0.0, 0.8), grid);
    case Form::Hyperbolic: return WeierData::hyperbolic(f, gen.poly(0.0, 0.8), gen.poly(0.0, 0.8), grid);
    case Form::WForm: return WeierData::wform(f, gen.poly(0.0, 0.8), gen.poly(0.0, 0.8), grid);
    default: return WeierData::gform(f, gen.poly(0.0, 0.6), gen.poly(0.0, 0.6), grid);
  }
}

double max_phi_diff(const WeierData& a, const WeierData& b, const std::vector<cd>& pts) {
  double worst = 0;
  for (cd t : pts) worst = std::max(worst, max_abs(CVec4(build_phi(a, t).phi - build_phi(b, t).phi)));
  return worst;
}

}  // namespace

TEST(Weier, BuildPhiExamples) {
  const Expr t = Expr::variable();
  const PhiJet a = build_phi(WeierData::gform_canonical(t, t), 0.0);
  EXPECT_LT(max_abs(CVec4(a.phi - CVec4(I / 2.0, -0.5, 0, 0))), 1e-15);
  EXPECT_LT(max_abs(CVec4(a.dphi - CVec4(0, 0, 1, 0))), 1e-15);

  const Expr e = parse_expr("exp(t)");
  Gen gen(31);
  for (int k = 0; k < 10; ++k) {
    const cd s = gen.point(-1, 1, -1, 1);
    const CVec4 expect(I * std::cosh(s), std::sinh(s), 1.0, 0.0);
    EXPECT_LT(max_abs(CVec4(build_phi(WeierData::gform_canonical(e, e), s).phi - expect)), 1e-14);
  }

  const PhiJet c = build_phi(WeierData::gform(Expr::literal(1.0), t, t), 1.0);
  EXPECT_LT(max_abs(CVec4(c.phi - CVec4(2.0 * I, 0, 2, 0))), 1e-15);
}

TEST(Weier, Validate) {
  const Expr t = Expr::variable();
  const GridSpec grid = test::square(-1, 1, 21);
  EXPECT_TRUE(validate(WeierData::gform(Expr::literal(1.0), t, t, grid)).ok());

  const ValidityReport r = validate(WeierData::gform(Expr::literal(1.0), parse_expr("1 + t"), parse_expr("t - 1"), grid));
  EXPECT_TRUE(r.at(10, 10).hermitian_condition_violated);
  EXPECT_EQ(r.hermitian_condition, 1);

  const ValidityReport z = validate(WeierData::gform(t, t, t, grid));
  EXPECT_TRUE(z.at(10, 10).f_zero);
  EXPECT_EQ(z.f_zero, 1);

  const ValidityReport d = validate(WeierData::gform_canonical(t * t, t, grid));
  EXPECT_TRUE(d.at(10, 10).derivative_condition_violated);
}

TEST(Weier, ValidateTrigAndHyperbolicPeriodicity) {
  const GridSpec grid{-1, 1, -1, 1, 3, 3};
  const Expr t = Expr::variable();
  // Re h2 = pi/2 + pi at t = 0 together with Im h1 = 0
  const ValidityReport r =
      validate(WeierData::trig(Expr::literal(1.0), t, Expr::literal(1.5 * 3.141592653589793), grid));
  EXPECT_TRUE(r.at(1, 1).hermitian_condition_violated);
  EXPECT_FALSE(r.at(1, 2).hermitian_condition_violated);
  const ValidityReport h =
      validate(WeierData::hyperbolic(Expr::literal(1.0), Expr::literal(I) * t, Expr::literal(I * (-0.5 * 3.141592653589793)), grid));
  EXPECT_TRUE(h.at(1, 1).hermitian_condition_violated);
}

TEST(Weier, BranchCutFlagged) {
  // g1' g2' = exp(2t) winds past the negative axis for |v| > pi/2
  const Expr e = parse_expr("exp(t)");
  const GridSpec wide{-0.5, 0.5, -2.5, 2.5, 5, 11};
  EXPECT_GT(validate(WeierData::gform_canonical(e, e, wide)).branch_cut, 0);
  const GridSpec narrow{-1, 1, -1, 1, 2, 2};
  EXPECT_EQ(validate(WeierData::gform_canonical(e, e, narrow)).branch_cut, 0);
}

TEST(Weier, Conversions) {
  Gen gen(32);
  const GridSpec grid = test::square(-0.5, 0.5, 5);
  const std::vector<cd> pts = grid.nodes();
  const WeierData h = WeierData::hyperbolic(gen.poly(1.0, 0.3), gen.poly(0.0, 0.5), gen.poly(0.0, 0.5), grid);
  const WeierData w = convert(h, Form::WForm);
  EXPECT_EQ(w.form, Form::WForm);
  EXPECT_LT(max_phi_diff(h, w, pts), 1e-13);
  EXPECT_LT(max_phi_diff(h, convert(h, Form::Trig), pts), 1e-13);
  EXPECT_LT(max_phi_diff(h, convert(convert(h, Form::Trig), Form::Hyperbolic), pts), 1e-13);

  const Expr t = Expr::variable();
  const WeierData wf = WeierData::wform(Expr::literal(1.0), t, t, grid);
  const WeierData g = convert(wf, Form::GForm);
  EXPECT_LT(max_phi_diff(wf, g, pts), 1e-13);
  EXPECT_LT(std::abs(eval(g.c1, 0.3) - std::exp(cd(0.3))), 1e-14);

  const WeierData gz = WeierData::gform(Expr::literal(1.0), t, parse_expr("1 + t"), test::square(-1, 1, 5));
  EXPECT_THROW(convert(gz, Form::WForm), NeedsLogBranch);
  EXPECT_THROW(convert(gz, Form::GFormCanonical), UnsupportedDirection);
}

TEST(Weier, CanonicalToGeneral) {
  const GridSpec grid{0.5, 1.5, -0.5, 0.5, 5, 5};
  const WeierData c = WeierData::gform_canonical(parse_expr("t"), parse_expr("t^2"), grid);
  const WeierData g = with_explicit_f(c);
  EXPECT_EQ(g.form, Form::GForm);
  EXPECT_LT(max_phi_diff(c, g, grid.nodes()), 1e-13);
  EXPECT_LT(max_phi_diff(c, convert(c, Form::Hyperbolic), grid.nodes()), 1e-13);
  EXPECT_LT(max_phi_diff(c, convert(c, Form::Trig), grid.nodes()), 1e-13);
}

TEST(Weier, Recovery) {
  const FG a = recover_fg(CVec4(2.0 * I, 0, 2, 0));
  EXPECT_LT(std::abs(a.f - 1.0), 1e-15);
  EXPECT_LT(std::abs(a.g1 - 1.0), 1e-15);
  EXPECT_LT(std::abs(a.g2 - 1.0), 1e-15);
  const FG b = recover_fg(CVec4(I, -1, 0, 0));
  EXPECT_LT(std::abs(b.f - 1.0), 1e-15);
  EXPECT_LT(std::abs(b.g1), 1e-15);
  EXPECT_LT(std::abs(b.g2), 1e-15);
  EXPECT_THROW(recover_fg(CVec4(I, 1, 0.3, 0.1)), SingularRecovery);
}

TEST(WeierProperty, IsothermalAllForms) {
  Gen gen(33);
  const GridSpec grid = test::square(-0.5, 0.5, 21);
  for (Form form : {Form::Trig, Form::Hyperbolic, Form::WForm, Form::GForm}) {
    SCOPED_TRACE(form_tag(form));
    int accepted = 0;
    for (int attempt = 0; attempt < 1000 && accepted < 100; ++attempt) {
      const WeierData w = random_weier(gen, form, grid);
      const ValidityReport rep = validate(w);
      if (!rep.ok()) continue;
      ++accepted;
      double worst = 0;
      for (cd t : grid.nodes()) {
        const PhiJet j = build_phi(w, t);
        worst = std::max(worst, std::abs(bilinear_dot(j.phi, j.phi)) / std::max(1.0, max_abs(j.phi) * max_abs(j.phi)));
        EXPECT_GT(norm_sq(j.phi), 0.0);
      }
      EXPECT_LE(worst, 1e-10);
    }
    EXPECT_EQ(accepted, 100);
  }
}

TEST(WeierProperty, NormFormulas) {
  Gen gen(34);
  for (int k = 0; k < 100; ++k) {
    const cd t = gen.point(-0.5, 0.5, -0.5, 0.5);
    const WeierData tr = random_weier(gen, Form::Trig, test::square(-0.5, 0.5, 3));
    const cd f = eval(tr.f, t), h1 = eval(tr.c1, t), h2 = eval(tr.c2, t);
    const double expect = std::norm(f) * (std::cosh(2 * h1.imag()) + std::cos(2 * h2.real()));
    EXPECT_NEAR(norm_sq(build_phi(tr, t).phi), expect, 1e-10 * std::max(1.0, expect));

    const WeierData hy = random_weier(gen, Form::Hyperbolic, test::square(-0.5, 0.5, 3));
    const cd fh = eval(hy.f, t), k1 = eval(hy.c1, t), k2 = eval(hy.c2, t);
    const double expect_h = std::norm(fh) * (std::cosh(2 * k1.real()) + std::cos(2 * k2.imag()));
    EXPECT_NEAR(norm_sq(build_phi(hy, t).phi), expect_h, 1e-10 * std::max(1.0, expect_h));
  }
}

TEST(WeierProperty, RecoveryRoundTrip) {
  Gen gen(35);
  for (int k = 0; k < 200; ++k) {
    const cd f = gen.complex(2), g1 = gen.complex(2), g2 = gen.complex(2);
    if (std::abs(f) < 0.1) continue;
    const FG r = recover_fg(gform_phi(f, g1, g2));
    EXPECT_LT(std::abs(r.f - f), 1e-12 * std::max(1.0, std::abs(f)));
    EXPECT_LT(std::abs(r.g1 - g1), 1e-12 * std::max(1.0, std::abs(g1)));
    EXPECT_LT(std::abs(r.g2 - g2), 1e-12 * std::max(1.0, std::abs(g2)));
  }
}

TEST(WeierProperty, ConversionsPreservePhi) {
  Gen gen(36);
  const GridSpec grid = test::square(-0.5, 0.5, 5);
  for (int k = 0; k < 30; ++k) {
    // g bounded away from zero so the logarithms exist without a cut
    const WeierData g = WeierData::gform(gen.poly(1.0, 0.3), gen.poly(1.5, 0.2), gen.poly(1.5, 0.2), grid);
    for (Form target : {Form::Trig, Form::Hyperbolic, Form::WForm}) {
      const WeierData c = convert(g, target);
      EXPECT_LT(max_phi_diff(g, c, grid.nodes()), 1e-12);
      EXPECT_LT(max_phi_diff(g, convert(c, Form::GForm), grid.nodes()), 1e-12);
    }
  }
}
