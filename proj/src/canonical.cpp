#include "wsurf/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

#include "wsurf/quadrature.hpp"

namespace wsurf {

namespace {

constexpr int kNewtonMaxIter = 30;
constexpr int kTableSubsteps = 4;
constexpr cd I{0.0, 1.0};
const cd kNaN(std::numeric_limits<double>::quiet_NaN(), 0.0);

cd target_value(CanonicalType type) { return type == CanonicalType::First ? cd(1.0) : cd(-1.0); }

cd phi_prime_sq_at(const PhiSource& src, cd t) {
  const PhiJet j = src.jet(t);
  return bilinear_dot(j.dphi, j.dphi);
}

using Scalar1 = Eigen::Matrix<cd, 1, 1>;

}  // namespace

bool is_canonical(const PhiSource& src, const std::vector<cd>& nodes, CanonicalType type, double tol) {
  const cd target = target_value(type);
  try {
    for (cd t : nodes)
      if (std::abs(phi_prime_sq_at(src, t) - target) >= tol) return false;
  } catch (const Error&) {
    return false;
  }
  return true;
}

bool is_canonical(const WeierData& w, const GridSpec& grid, CanonicalType type, double tol) {
  return is_canonical(PhiSource::from(w), grid.nodes(), type, tol);
}

// ---------------------------------------------------------------------------
// CanonicalMap

CanonicalMap::CanonicalMap(PhiSource src, const GridSpec& grid, cd t0, CanonicalType type)
    : src_(std::move(src)), grid_(grid), t0_(t0), type_(type) {
  root_t0_ = std::pow(target_value(type) * phi_prime_sq_at(src_, t0), 0.25);
  s_.resize(grid.size());
  root_.resize(grid.size());

  auto link = [&](int i, int j, cd from, cd s_from, cd root_from) {
    const auto [ds, r] = integrate_from(from, root_from, grid_.node(i, j), kTableSubsteps);
    s_[grid_.index(i, j)] = s_from + ds;
    root_[grid_.index(i, j)] = r;
  };
  link(0, 0, t0, 0.0, root_t0_);
  for (int j = 1; j < grid.nv; ++j) {
    const int k = grid_.index(0, j - 1);
    link(0, j, grid_.node(0, j - 1), s_[k], root_[k]);
  }
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 1; i < grid.nu; ++i) {
      const int k = grid_.index(i - 1, j);
      link(i, j, grid_.node(i - 1, j), s_[k], root_[k]);
    }
  }
}

cd CanonicalMap::root_near(cd t, cd ref) const {
  const cd r = std::pow(target_value(type_) * phi_prime_sq_at(src_, t), 0.25);
  cd best = r;
  cd cand = r;
  for (int k = 1; k < 4; ++k) {
    cand *= I;
    if (std::abs(cand - ref) < std::abs(best - ref)) best = cand;
  }
  return best;
}

std::pair<cd, cd> CanonicalMap::integrate_from(cd a, cd root_a, cd b, int steps) const {
  cd acc = 0.0;
  cd ref = root_a;
  for (int k = 0; k < steps; ++k) {
    const cd lo = a + (b - a) * (static_cast<double>(k) / steps);
    const cd hi = a + (b - a) * (static_cast<double>(k + 1) / steps);
    const cd r = ref;
    acc += integrate_segment([this, r](cd t) { return Scalar1(root_near(t, r)); }, lo, hi, kQuadratureTol)(0);
    ref = root_near(hi, ref);
  }
  return {acc, ref};
}

int CanonicalMap::nearest_node(cd t) const {
  auto clamp_index = [](double x, int n) { return std::clamp(static_cast<int>(std::lround(x)), 0, n - 1); };
  const int i = grid_.nu > 1 ? clamp_index((t.real() - grid_.u_min) / grid_.du(), grid_.nu) : 0;
  const int j = grid_.nv > 1 ? clamp_index((t.imag() - grid_.v_min) / grid_.dv(), grid_.nv) : 0;
  return grid_.index(i, j);
}

cd CanonicalMap::forward(cd t) const {
  const int k = nearest_node(t);
  const cd tk = grid_.node(k % grid_.nu, k / grid_.nu);
  return s_[k] + integrate_from(tk, root_[k], t, 1).first;
}

cd CanonicalMap::derivative(cd t) const { return root_near(t, root_[nearest_node(t)]); }

cd CanonicalMap::inverse(cd s) const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < s_.size(); ++k)
    if (std::abs(s_[k] - s) < std::abs(s_[best] - s)) best = k;
  cd t = grid_.node(static_cast<int>(best) % grid_.nu, static_cast<int>(best) / grid_.nu);
  const double scale = std::max(1.0, std::abs(s));
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    const cd F = forward(t) - s;
    residual = std::abs(F);
    if (residual <= 1e-13 * scale) return t;
    const cd step = F / derivative(t);
    t -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) return t;
  }
  if (residual <= 1e-10 * scale) return t;
  throw NewtonDivergence("inverse canonical map did not converge for s=(" + std::to_string(s.real()) + "," +
                         std::to_string(s.imag()) + "), residual " + std::to_string(residual));
}

Jet CanonicalMap::inverse_jet(cd s) const {
  const cd t = inverse(s);
  const cd root = derivative(t);
  cd dp_over_p = 0.0;
  if (!src_.canonical()) {
    const PhiJet j = src_.jet(t);
    dp_over_p = 2.0 * bilinear_dot(j.dphi, j.ddphi) / bilinear_dot(j.dphi, j.dphi);
  }
  const cd droot = 0.25 * root * dp_over_p;
  return {t, 1.0 / root, -droot / (root * root * root)};
}

PhiSource CanonicalMap::pullback() const {
  auto self = std::make_shared<const CanonicalMap>(*this);
  return PhiSource(
      [self](cd s) {
        const Jet tj = self->inverse_jet(s);
        const PhiJet j = self->src_.jet(tj.v0);
        const CVec4 nan = CVec4::Constant(kNaN);
        return PhiJet{j.phi * tj.v1, j.dphi * (tj.v1 * tj.v1) + j.phi * tj.v2, nan};
      },
      type_ == CanonicalType::First);
}

// ---------------------------------------------------------------------------
// canonize

namespace {

/// Shared evaluation state of the opaque components: one inverse solve
/// serves every component evaluated at the same s.
class InverseCache {
 public:
  explicit InverseCache(CanonicalMap map) : map_(std::move(map)) {}

  Jet at(cd s) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!valid_ || s != last_s_) {
      last_jet_ = map_.inverse_jet(s);
      last_s_ = s;
      valid_ = true;
    }
    return last_jet_;
  }

 private:
  CanonicalMap map_;
  mutable std::mutex mu_;
  mutable bool valid_ = false;
  mutable cd last_s_;
  mutable Jet last_jet_;
};

Expr pulled_component(const std::shared_ptr<const InverseCache>& cache, const Expr& e, const std::string& name) {
  return Expr::opaque(name + "(t(s))", [cache, e](cd s) { return eval_jet(e, cache->at(s)); });
}

GridSpec bounding_grid(const std::vector<cd>& pts, const GridSpec& like) {
  GridSpec g = like;
  g.u_min = g.v_min = std::numeric_limits<double>::infinity();
  g.u_max = g.v_max = -std::numeric_limits<double>::infinity();
  for (cd p : pts) {
    g.u_min = std::min(g.u_min, p.real());
    g.u_max = std::max(g.u_max, p.real());
    g.v_min = std::min(g.v_min, p.imag());
    g.v_max = std::max(g.v_max, p.imag());
  }
  return g;
}

}  // namespace

CanonizeResult canonize(const WeierData& w, cd t0, CanonicalType type) {
  const WeierData g = convert(w, Form::GForm);
  const PhiSource src = PhiSource::from(g);
  const GridSpec& grid = w.grid;

  for (cd t : grid.nodes())
    if (std::abs(phi_prime_sq_at(src, t)) < kDegenerateTol) throw DegeneratePoint(t, degeneracy_order(src, t));

  CanonicalMap map(src, grid, t0, type);
  if (is_canonical(src, grid.nodes(), type)) return {std::move(map), w, true};

  auto cache = std::make_shared<const InverseCache>(map);
  const Expr g1 = pulled_component(cache, g.c1, "g1");
  const Expr g2 = pulled_component(cache, g.c2, "g2");
  const GridSpec out_grid = bounding_grid(map.mapped_nodes(), grid);
  if (type == CanonicalType::First) return {std::move(map), WeierData::gform_canonical(g1, g2, out_grid), false};

  const Expr f = Expr::opaque("f(t(s)) t'(s)", [cache, fe = g.f](cd s) {
    const Jet tj = cache->at(s);
    return eval_jet(fe, tj) * Jet{tj.v1, tj.v2, kNaN};
  });
  return {std::move(map), WeierData::gform(f, g1, g2, out_grid), false};
}

// ---------------------------------------------------------------------------
// Symmetries

std::vector<DeckTransform> deck_transforms() {
  const std::array<std::pair<cd, const char*>, 4> units{{{1.0, ""}, {I, "i "}, {-1.0, "-"}, {-I, "-i "}}};
  std::vector<DeckTransform> out;
  for (bool rev : {false, true})
    for (const auto& [e, prefix] : units)
      out.push_back({e, rev, std::string(prefix) + (rev ? "conj(s)" : "s")});
  return out;
}

PhiSource apply_deck(const DeckTransform& d, const PhiSource& src, bool canonical) {
  return d.reverses_orientation ? src.anti_affine(d.eps, 0.0, std::conj(d.eps), canonical)
                                : src.affine(d.eps, 0.0, d.eps, canonical);
}

WeierData type_switch(const WeierData& w) {
  if (!is_canonical(w, w.grid, CanonicalType::First) && !is_canonical(w, w.grid, CanonicalType::Second))
    throw NotCanonical("type_switch needs canonical coordinates of the first or second type");
  const cd a = std::polar(1.0, std::numbers::pi / 4);
  WeierData out = with_explicit_f(w);
  out.f = Expr::literal(a) * compose_affine(out.f, a, 0.0);
  out.c1 = compose_affine(out.c1, a, 0.0);
  out.c2 = compose_affine(out.c2, a, 0.0);
  return out;
}

}  // namespace wsurf
