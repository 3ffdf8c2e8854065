#pragma once

// Weierstrass data of minimal space-like surfaces in R^4_1: the
// representation forms, Phi construction, validity conditions, conversions
// between forms and recovery of (f, g1, g2) from Phi.

#include <optional>
#include <string>
#include <vector>

#include "wsurf/holo.hpp"
#include "wsurf/mink4.hpp"

namespace wsurf {

/// Rectangle in the parameter plane t = u + i v, sampled on nu x nv nodes.
struct GridSpec {
  double u_min = -1, u_max = 1, v_min = -1, v_max = 1;
  int nu = 21, nv = 21;

  double du() const { return nu > 1 ? (u_max - u_min) / (nu - 1) : 0.0; }
  double dv() const { return nv > 1 ? (v_max - v_min) / (nv - 1) : 0.0; }
  /// Node (i along u, j along v).
  cd node(int i, int j) const { return {u_min + i * du(), v_min + j * dv()}; }
  int size() const { return nu * nv; }
  /// Row-major index with v as the slow direction.
  int index(int i, int j) const { return j * nu + i; }
  std::vector<cd> nodes() const;
};

enum class Form {
  Trig,                 // (f, h1, h2): f (cos h1, sin h1, i cos h2, sin h2)
  Hyperbolic,           // (f, h1, h2): f (i cosh h1, sinh h1, cosh h2, sinh h2)
  WForm,                // (f, w1, w2): hyperbolic form in w1 = h1 + h2, w2 = h1 - h2
  GForm,                // (f, g1, g2): f (i(g1 g2 + 1), g1 g2 - 1, g1 + g2, g1 - g2)
  GFormCanonical,       // (g1, g2), f = 1 / (2 sqrt(g1' g2'))
  HyperbolicCanonical,  // (h1, h2), f = 1 / sqrt(h1'^2 - h2'^2)
  WFormCanonical,       // (w1, w2), f = 1 / sqrt(w1' w2')
};

const char* form_tag(Form f);
std::optional<Form> form_from_tag(const std::string& tag);
bool is_canonical_form(Form f);
/// Non-canonical counterpart (same component meaning, explicit f).
Form base_form(Form f);

/// Tagged Weierstrass data. Component meaning follows the form; `f` is
/// unused for the canonical forms. Immutable by convention.
struct WeierData {
  Form form = Form::GForm;
  Expr f;
  Expr c1, c2;
  GridSpec grid;

  static WeierData trig(Expr f, Expr h1, Expr h2, GridSpec g = {});
  static WeierData hyperbolic(Expr f, Expr h1, Expr h2, GridSpec g = {});
  static WeierData wform(Expr f, Expr w1, Expr w2, GridSpec g = {});
  static WeierData gform(Expr f, Expr g1, Expr g2, GridSpec g = {});
  static WeierData gform_canonical(Expr g1, Expr g2, GridSpec g = {});
  static WeierData hyperbolic_canonical(Expr h1, Expr h2, GridSpec g = {});
  static WeierData wform_canonical(Expr w1, Expr w2, GridSpec g = {});

  bool canonical() const { return is_canonical_form(form); }
  bool has_f() const { return !canonical(); }
};

/// Phi and its first two parameter derivatives at one point. For the
/// canonical forms the second derivative is not available (NaN): it would
/// need third derivatives of the components.
struct PhiJet {
  CVec4 phi;
  CVec4 dphi;
  CVec4 ddphi;
};

PhiJet build_phi(const WeierData& w, cd t);

/// Phi'^2 and its t-derivative. Identically (1, 0) for canonical forms.
std::pair<cd, cd> phi_prime_sq(const WeierData& w, cd t);

inline constexpr double kValidityEps = 1e-8;

struct NodeFlags {
  bool f_zero = false;
  bool derivative_condition_violated = false;
  bool hermitian_condition_violated = false;
  bool branch_cut_crossed = false;
  bool evaluation_failed = false;

  bool any() const {
    return f_zero || derivative_condition_violated || hermitian_condition_violated ||
           branch_cut_crossed || evaluation_failed;
  }
};

struct ValidityReport {
  GridSpec grid;
  std::vector<NodeFlags> flags;  // GridSpec::index order
  int f_zero = 0;
  int derivative_condition = 0;
  int hermitian_condition = 0;
  int branch_cut = 0;
  int evaluation_failed = 0;

  bool ok() const {
    return f_zero + derivative_condition + hermitian_condition + branch_cut + evaluation_failed == 0;
  }
  const NodeFlags& at(int i, int j) const { return flags[grid.index(i, j)]; }
};

ValidityReport validate(const WeierData& w, const GridSpec& grid, double eps = kValidityEps);
inline ValidityReport validate(const WeierData& w) { return validate(w, w.grid); }

/// Canonical data rewritten in its base form with f spelled out through the
/// symbolic derivatives of the components. Identity on general data.
WeierData with_explicit_f(const WeierData& w);

/// Rewrites the data in another form generating the same Phi. Routes along
/// trig - hyperbolic - w-form - g-form. Canonical data converts to any general
/// form, and among canonical forms up to the sign of the square root; general
/// data never converts to a canonical form.
WeierData convert(const WeierData& w, Form target);

struct FG {
  cd f, g1, g2;
};

/// (f, g1, g2) with f (i(g1 g2 + 1), g1 g2 - 1, g1 + g2, g1 - g2) = phi.
FG recover_fg(const CVec4& phi);

/// Phi of the g-form for explicit values (used by recovery round trips).
CVec4 gform_phi(cd f, cd g1, cd g2);

}  // namespace wsurf
