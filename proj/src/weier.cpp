#include "wsurf/weier.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace wsurf {

namespace {

constexpr cd I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

struct FormInfo {
  Form form;
  const char* tag;
};

constexpr std::array<FormInfo, 7> kForms{{
    {Form::Trig, "trig"},
    {Form::Hyperbolic, "hyperbolic"},
    {Form::WForm, "wform"},
    {Form::GForm, "gform"},
    {Form::GFormCanonical, "gform_canonical"},
    {Form::HyperbolicCanonical, "hyperbolic_canonical"},
    {Form::WFormCanonical, "wform_canonical"},
}};

Expr lit(cd c) { return Expr::literal(c); }

/// Jet of g' built from the jet of g; the second-derivative slot would need
/// g''' and is poisoned so nothing downstream silently relies on it.
Jet derivative_jet(const Jet& g) {
  return {g.v1, g.v2, cd(std::numeric_limits<double>::quiet_NaN(), 0.0)};
}

CVec4 slot(const std::array<Jet, 4>& c, int k) {
  CVec4 v;
  for (int i = 0; i < 4; ++i) {
    v(i) = k == 0 ? c[i].v0 : (k == 1 ? c[i].v1 : c[i].v2);
  }
  return v;
}

std::array<Jet, 4> hyperbolic_components(const Jet& F, const Jet& H1, const Jet& H2) {
  return {I * (F * cosh(H1)), F * sinh(H1), F * cosh(H2), F * sinh(H2)};
}

std::array<Jet, 4> gform_components(const Jet& F, const Jet& G1, const Jet& G2) {
  const Jet p = G1 * G2;
  return {I * (F * (p + cd(1))), F * (p - cd(1)), F * (G1 + G2), F * (G1 - G2)};
}

/// sqrt of the canonical normalizer P (g1'g2', h1'^2 - h2'^2 or w1'w2').
Jet canonical_normalizer(const WeierData& w, const Jet& A, const Jet& B) {
  const Jet dA = derivative_jet(A), dB = derivative_jet(B);
  switch (w.form) {
    case Form::GFormCanonical:
    case Form::WFormCanonical:
      return dA * dB;
    case Form::HyperbolicCanonical:
      return dA * dA - dB * dB;
    default:
      break;
  }
  throw std::logic_error("canonical_normalizer: not a canonical form");
}

/// Whether the canonical normalizer crosses the negative real axis (the cut
/// of the principal square root) along the segment [a, b].
bool crosses_cut(const WeierData& w, cd a, cd b) {
  constexpr int kSamples = 8;
  auto arg_at = [&](cd t) { return std::arg(canonical_normalizer(w, eval_jet(w.c1, t), eval_jet(w.c2, t)).v0); };
  try {
    double prev = arg_at(a);
    for (int k = 1; k <= kSamples; ++k) {
      const double cur = arg_at(a + (b - a) * (static_cast<double>(k) / kSamples));
      if (std::abs(cur - prev) > kPi) return true;
      prev = cur;
    }
  } catch (const DomainError&) {
    return true;
  }
  return false;
}

double distance_to_lattice(double x, double offset, double period) {
  return std::abs(std::remainder(x - offset, period));
}

}  // namespace

std::vector<cd> GridSpec::nodes() const {
  std::vector<cd> out;
  out.reserve(size());
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) out.push_back(node(i, j));
  return out;
}

const char* form_tag(Form f) {
  for (const auto& info : kForms)
    if (info.form == f) return info.tag;
  return "?";
}

std::optional<Form> form_from_tag(const std::string& tag) {
  for (const auto& info : kForms)
    if (tag == info.tag) return info.form;
  return std::nullopt;
}

bool is_canonical_form(Form f) {
  return f == Form::GFormCanonical || f == Form::HyperbolicCanonical || f == Form::WFormCanonical;
}

Form base_form(Form f) {
  switch (f) {
    case Form::GFormCanonical: return Form::GForm;
    case Form::HyperbolicCanonical: return Form::Hyperbolic;
    case Form::WFormCanonical: return Form::WForm;
    default: return f;
  }
}

WeierData WeierData::trig(Expr f, Expr h1, Expr h2, GridSpec g) {
  return {Form::Trig, std::move(f), std::move(h1), std::move(h2), g};
}
WeierData WeierData::hyperbolic(Expr f, Expr h1, Expr h2, GridSpec g) {
  return {Form::Hyperbolic, std::move(f), std::move(h1), std::move(h2), g};
}
WeierData WeierData::wform(Expr f, Expr w1, Expr w2, GridSpec g) {
  return {Form::WForm, std::move(f), std::move(w1), std::move(w2), g};
}
WeierData WeierData::gform(Expr f, Expr g1, Expr g2, GridSpec g) {
  return {Form::GForm, std::move(f), std::move(g1), std::move(g2), g};
}
WeierData WeierData::gform_canonical(Expr g1, Expr g2, GridSpec g) {
  return {Form::GFormCanonical, Expr(), std::move(g1), std::move(g2), g};
}
WeierData WeierData::hyperbolic_canonical(Expr h1, Expr h2, GridSpec g) {
  return {Form::HyperbolicCanonical, Expr(), std::move(h1), std::move(h2), g};
}
WeierData WeierData::wform_canonical(Expr w1, Expr w2, GridSpec g) {
  return {Form::WFormCanonical, Expr(), std::move(w1), std::move(w2), g};
}

PhiJet build_phi(const WeierData& w, cd t) {
  const Jet A = eval_jet(w.c1, t);
  const Jet B = eval_jet(w.c2, t);

  Jet F;
  if (w.canonical()) {
    const Jet P = canonical_normalizer(w, A, B);
    if (P.v0 == cd(0.0)) throw CanonicalBranchError("canonical normalizer vanishes");
    const cd scale = w.form == Form::GFormCanonical ? cd(0.5) : cd(1.0);
    F = scale * reciprocal(sqrt(P));
  } else {
    F = eval_jet(w.f, t);
  }

  std::array<Jet, 4> c;
  switch (base_form(w.form)) {
    case Form::Trig:
      c = {F * cos(A), F * sin(A), I * (F * cos(B)), F * sin(B)};
      break;
    case Form::Hyperbolic:
      c = hyperbolic_components(F, A, B);
      break;
    case Form::WForm:
      c = hyperbolic_components(F, cd(0.5) * (A + B), cd(0.5) * (A - B));
      break;
    case Form::GForm:
      c = gform_components(F, A, B);
      break;
    default:
      throw std::logic_error("build_phi: unknown form");
  }
  return {slot(c, 0), slot(c, 1), slot(c, 2)};
}

std::pair<cd, cd> phi_prime_sq(const WeierData& w, cd t) {
  if (w.canonical()) return {cd(1.0), cd(0.0)};
  const PhiJet pj = build_phi(w, t);
  return {bilinear_dot(pj.dphi, pj.dphi), cd(2.0) * bilinear_dot(pj.dphi, pj.ddphi)};
}

// ---------------------------------------------------------------------------
// Validity

ValidityReport validate(const WeierData& w, const GridSpec& grid, double eps) {
  ValidityReport rep;
  rep.grid = grid;
  rep.flags.assign(grid.size(), NodeFlags{});

  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const cd t = grid.node(i, j);
      NodeFlags& fl = rep.flags[grid.index(i, j)];
      try {
        const Jet A = eval_jet(w.c1, t);
        const Jet B = eval_jet(w.c2, t);
        if (w.has_f() && std::abs(eval(w.f, t)) < eps) fl.f_zero = true;
        if (w.canonical() && std::abs(canonical_normalizer(w, A, B).v0) < eps)
          fl.derivative_condition_violated = true;
        switch (base_form(w.form)) {
          case Form::Trig:
            fl.hermitian_condition_violated =
                std::abs(A.v0.imag()) < eps && distance_to_lattice(B.v0.real(), kPi / 2, kPi) < eps;
            break;
          case Form::Hyperbolic:
            fl.hermitian_condition_violated =
                std::abs(A.v0.real()) < eps && distance_to_lattice(B.v0.imag(), kPi / 2, kPi) < eps;
            break;
          case Form::WForm: {
            const cd s = A.v0 + std::conj(B.v0);
            fl.hermitian_condition_violated =
                std::abs(s.real()) < eps && distance_to_lattice(s.imag(), kPi, 2 * kPi) < eps;
            break;
          }
          case Form::GForm:
            fl.hermitian_condition_violated = std::abs(cd(1.0) + A.v0 * std::conj(B.v0)) < eps;
            break;
          default:
            break;
        }
      } catch (const DomainError&) {
        fl.evaluation_failed = true;
      }
    }
  }

  if (w.canonical()) {
    for (int j = 0; j < grid.nv; ++j) {
      for (int i = 0; i < grid.nu; ++i) {
        if (rep.flags[grid.index(i, j)].any()) continue;
        const cd t = grid.node(i, j);
        if ((i + 1 < grid.nu && crosses_cut(w, t, grid.node(i + 1, j))) ||
            (j + 1 < grid.nv && crosses_cut(w, t, grid.node(i, j + 1))))
          rep.flags[grid.index(i, j)].branch_cut_crossed = true;
      }
    }
  }

  for (const auto& fl : rep.flags) {
    rep.f_zero += fl.f_zero;
    rep.derivative_condition += fl.derivative_condition_violated;
    rep.hermitian_condition += fl.hermitian_condition_violated;
    rep.branch_cut += fl.branch_cut_crossed;
    rep.evaluation_failed += fl.evaluation_failed;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conversions

namespace {

/// Throws NeedsLogBranch unless log(g) is continuous on the grid: g must not
/// vanish and neighbouring samples must not straddle the negative real axis.
void require_log_branch(const Expr& g, const GridSpec& grid, const char* name) {
  std::vector<cd> vals(grid.size());
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const cd v = eval(g, grid.node(i, j));
      if (std::abs(v) < kValidityEps)
        throw NeedsLogBranch(std::string(name) + " vanishes on the grid; log branch undefined");
      vals[grid.index(i, j)] = v;
    }
  }
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const double here = std::arg(vals[grid.index(i, j)]);
      if (i + 1 < grid.nu && std::abs(std::arg(vals[grid.index(i + 1, j)]) - here) > kPi)
        throw NeedsLogBranch(std::string(name) + " crosses the principal cut of log on the grid");
      if (j + 1 < grid.nv && std::abs(std::arg(vals[grid.index(i, j + 1)]) - here) > kPi)
        throw NeedsLogBranch(std::string(name) + " crosses the principal cut of log on the grid");
    }
  }
}

Expr half(Expr e) { return lit(0.5) * std::move(e); }

WeierData step(const WeierData& w, Form to) {
  WeierData out = w;
  out.form = to;
  const Expr& a = w.c1;
  const Expr& b = w.c2;
  switch (w.form) {
    case Form::Trig:
      if (to == Form::Hyperbolic) {
        out.f = lit(-I) * w.f;
        out.c1 = lit(I) * a;
        out.c2 = lit(-I) * (b - lit(kPi));
        return out;
      }
      break;
    case Form::Hyperbolic:
    case Form::HyperbolicCanonical:
      if (to == Form::Trig && w.form == Form::Hyperbolic) {
        out.f = lit(I) * w.f;
        out.c1 = lit(-I) * a;
        out.c2 = lit(kPi) + lit(I) * b;
        return out;
      }
      if (base_form(to) == Form::WForm && is_canonical_form(to) == w.canonical()) {
        out.c1 = a + b;
        out.c2 = a - b;
        return out;
      }
      break;
    case Form::WForm:
    case Form::WFormCanonical:
      if (base_form(to) == Form::Hyperbolic && is_canonical_form(to) == w.canonical()) {
        out.c1 = half(a + b);
        out.c2 = half(a - b);
        return out;
      }
      if (base_form(to) == Form::GForm && is_canonical_form(to) == w.canonical()) {
        out.c1 = Expr::apply(Func::Exp, a);
        out.c2 = Expr::apply(Func::Exp, b);
        if (!w.canonical()) out.f = half(w.f * Expr::apply(Func::Exp, -half(a + b)));
        return out;
      }
      break;
    case Form::GForm:
    case Form::GFormCanonical:
      if (base_form(to) == Form::WForm && is_canonical_form(to) == w.canonical()) {
        require_log_branch(a, w.grid, "g1");
        require_log_branch(b, w.grid, "g2");
        out.c1 = Expr::apply(Func::Log, a);
        out.c2 = Expr::apply(Func::Log, b);
        if (!w.canonical()) out.f = lit(2.0) * w.f * Expr::apply(Func::Exp, half(out.c1 + out.c2));
        return out;
      }
      break;
  }
  throw UnsupportedDirection(std::string("no conversion ") + form_tag(w.form) + " -> " + form_tag(to));
}

int spine_position(Form f) {
  switch (base_form(f)) {
    case Form::Trig: return 0;
    case Form::Hyperbolic: return 1;
    case Form::WForm: return 2;
    case Form::GForm: return 3;
    default: return -1;
  }
}

Form spine_form(int pos, bool canonical) {
  constexpr std::array<Form, 4> plain{Form::Trig, Form::Hyperbolic, Form::WForm, Form::GForm};
  constexpr std::array<Form, 4> canon{Form::Trig, Form::HyperbolicCanonical, Form::WFormCanonical,
                                      Form::GFormCanonical};
  return canonical ? canon[pos] : plain[pos];
}

}  // namespace

WeierData with_explicit_f(const WeierData& w) {
  if (!w.canonical()) return w;
  const Expr d1 = differentiate(w.c1), d2 = differentiate(w.c2);
  WeierData out = w;
  out.form = base_form(w.form);
  switch (w.form) {
    case Form::GFormCanonical:
      out.f = lit(0.5) / Expr::apply(Func::Sqrt, d1 * d2);
      break;
    case Form::HyperbolicCanonical:
      out.f = lit(1.0) / Expr::apply(Func::Sqrt, Expr::power(d1, 2) - Expr::power(d2, 2));
      break;
    case Form::WFormCanonical:
      out.f = lit(1.0) / Expr::apply(Func::Sqrt, d1 * d2);
      break;
    default:
      break;
  }
  return out;
}

WeierData convert(const WeierData& w, Form target) {
  if (w.form == target) return w;
  if (!w.canonical() && is_canonical_form(target))
    throw UnsupportedDirection(std::string("general data does not convert to a canonical form (canonize first): ") +
                               form_tag(w.form) + " -> " + form_tag(target));
  WeierData cur = is_canonical_form(target) ? w : with_explicit_f(w);
  const int to = spine_position(target);
  int pos = spine_position(cur.form);
  while (pos != to) {
    pos += pos < to ? 1 : -1;
    cur = step(cur, spine_form(pos, cur.canonical()));
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Recovery

CVec4 gform_phi(cd f, cd g1, cd g2) {
  return CVec4(I * f * (g1 * g2 + 1.0), f * (g1 * g2 - 1.0), f * (g1 + g2), f * (g1 - g2));
}

FG recover_fg(const CVec4& phi) {
  const cd d = I * phi(0) + phi(1);
  if (std::abs(d) < 1e-12) throw SingularRecovery("i*phi1 + phi2 vanishes; g-form chart fails");
  return {-0.5 * d, -(phi(2) + phi(3)) / d, -(phi(2) - phi(3)) / d};
}

}  // namespace wsurf
