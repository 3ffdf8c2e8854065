#include "wsurf/cli.hpp"

#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "wsurf/canonical.hpp"
#include "wsurf/export.hpp"
#include "wsurf/family.hpp"
#include "wsurf/report.hpp"
#include "wsurf/surface_file.hpp"

namespace wsurf {

namespace {

WeierData load(const RunConfig& cfg) {
  if (cfg.in.empty()) throw ConfigError("--in is required");
  WeierData w = read_surface_file(cfg.in);
  if (cfg.grid) {
    w.grid.nu = cfg.grid->first;
    w.grid.nv = cfg.grid->second;
  }
  return w;
}

/// Writes an artifact to --out, or to the report stream when --out is absent.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
  f << text;
}

std::string flag_names(const NodeFlags& f) {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += "|";
    s += name;
  };
  add(f.f_zero, "f_zero");
  add(f.derivative_condition_violated, "derivative_condition");
  add(f.hermitian_condition_violated, "hermitian_condition");
  add(f.branch_cut_crossed, "branch_cut");
  add(f.evaluation_failed, "evaluation_failed");
  return s;
}

void print_validity(const WeierData& w, const ValidityReport& rep, std::ostream& out) {
  out << "form: " << form_tag(w.form) << '\n'
      << "nodes: " << rep.grid.size() << '\n'
      << "f_zero: " << rep.f_zero << '\n'
      << "derivative_condition: " << rep.derivative_condition << '\n'
      << "hermitian_condition: " << rep.hermitian_condition << '\n'
      << "branch_cut: " << rep.branch_cut << '\n'
      << "evaluation_failed: " << rep.evaluation_failed << '\n'
      << "status: " << (rep.ok() ? "ok" : "violated") << '\n';
  for (int j = 0; j < rep.grid.nv; ++j) {
    for (int i = 0; i < rep.grid.nu; ++i) {
      const NodeFlags& f = rep.at(i, j);
      if (!f.any()) continue;
      const cd t = rep.grid.node(i, j);
      out << "violation: i=" << i << " j=" << j << " u=" << format_double(t.real())
          << " v=" << format_double(t.imag()) << " " << flag_names(f) << '\n';
    }
  }
}

/// Validates and reports to err; false when violated.
bool require_valid(const WeierData& w, const RunConfig& cfg, std::ostream& err) {
  const ValidityReport rep = validate(w, w.grid, cfg.tol);
  if (rep.ok()) return true;
  print_validity(w, rep, err);
  return false;
}

CanonicalType parse_type(const std::string& s) {
  if (s == "first") return CanonicalType::First;
  if (s == "second") return CanonicalType::Second;
  throw ConfigError("canonical type must be 'first' or 'second'");
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const WeierData w = load(cfg);
  const ValidityReport rep = validate(w, w.grid, cfg.tol);
  print_validity(w, rep, out);
  return rep.ok() ? 0 : 1;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WeierData w = load(cfg);
  if (!require_valid(w, cfg, err)) return 1;
  std::ostringstream csv;
  write_csv(csv, sample(w, w.grid, cfg.t0));
  emit(cfg, out, csv.str());
  return 0;
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WeierData w = load(cfg);
  const Projection p = Projection::parse(cfg.projection);
  if (!require_valid(w, cfg, err)) return 1;
  std::ostringstream obj;
  write_obj(obj, sample(w, w.grid, cfg.t0), p);
  emit(cfg, out, obj.str());
  return 0;
}

int cmd_canonize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WeierData w = load(cfg);
  if (!require_valid(w, cfg, err)) return 1;
  const CanonicalType type = parse_type(cfg.canonical_type);
  const cd t0 = cfg.t0.value_or(w.grid.node(0, 0));
  const CanonizeResult res = canonize(w, t0, type);

  // positions do not depend on the parameter; curvatures come from the
  // pulled-back Phi at the mapped nodes
  const SurfaceGrid orig = sample(w, w.grid, t0);
  const PhiSource pulled = res.map.pullback();
  SurfaceGrid s = orig;
  s.canonical = pulled.canonical();
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    const cd sk = res.map.mapped_nodes()[k];
    SurfacePoint p = evaluate_point(pulled, sk);
    p.psi = orig.points[k].psi;
    p.x = orig.points[k].x;
    s.points[k] = p;
  }
  if (!is_canonical(pulled, res.map.mapped_nodes(), type))
    throw NotCanonical("pulled-back data fails the canonical check");
  std::ostringstream csv;
  write_csv(csv, s);
  emit(cfg, out, csv.str());
  if (!cfg.out.empty())
    out << "type: " << cfg.canonical_type << '\n' << "identity: " << (res.identity ? "yes" : "no") << '\n';
  return 0;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WeierData w = load(cfg);
  if (!require_valid(w, cfg, err)) return 1;
  if (cfg.mobius.has_value() == cfg.lorentz.has_value())
    throw ConfigError("transform needs exactly one of --mobius or --lorentz");
  Mat2 b;
  MotionVariant v = cfg.variant;
  if (cfg.mobius) {
    b = *cfg.mobius;
  } else {
    const SO31 a = SO31::tagged(*cfg.lorentz);
    if (a.lorentz_defect() > 1e-10) throw ConfigError("--lorentz matrix is not a Lorentz transformation");
    v = a.proper ? (a.orthochronous ? MotionVariant::OrthochronousProper : MotionVariant::NonOrthochronousProper)
                 : (a.orthochronous ? MotionVariant::OrthochronousImproper
                                    : MotionVariant::NonOrthochronousImproper);
    const Mat2 at = so31_to_spinor(variant_matrix(v) * a.a);
    b << std::conj(at(0, 0)), -std::conj(at(0, 1)), -std::conj(at(1, 0)), std::conj(at(1, 1));
  }
  const WeierData m = mobius_act(w, b, v);
  emit(cfg, out, format_surface(m));
  if (!cfg.out.empty()) out << "variant: " << variant_tag(v) << '\n';
  return 0;
}

int cmd_family(const RunConfig& cfg, std::ostream& out, double phi, bool conj) {
  const WeierData w = load(cfg);
  const FamilyMember m = conj ? conjugate(w) : associate(w, phi);
  emit(cfg, out, format_surface(m.data));
  if (!cfg.out.empty()) {
    out << "phi: " << format_double(m.phi) << '\n';
    if (!m.note.empty()) out << "note: " << m.note << '\n';
  }
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WeierData w = load(cfg);
  if (!require_valid(w, cfg, err)) return 1;
  bool all = true;
  std::ostringstream text;
  for (const PropertyResult& r : run_invariant_suite(w, w.grid, cfg.t0)) {
    text << format_property(r) << '\n';
    all = all && r.passed;
  }
  text << "summary: " << (all ? "PASS" : "FAIL") << '\n';
  emit(cfg, out, text.str());
  return all ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& cli_commands() {
  static const std::vector<std::string> cmds{"validate", "sample",    "mesh",      "canonize",
                                             "transform", "associate", "conjugate", "report"};
  return cmds;
}

std::pair<int, int> parse_grid_flag(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t p1 = 0, p2 = 0;
    const int nu = std::stoi(s.substr(0, x), &p1);
    const int nv = std::stoi(s.substr(x + 1), &p2);
    if (p1 != x || p2 != s.size() - x - 1 || nu < 2 || nv < 2) throw std::invalid_argument(s);
    return {nu, nv};
  } catch (const std::logic_error&) {
    throw ConfigError("--grid expects NUxNV with both at least 2, got '" + s + "'");
  }
}

std::vector<double> parse_reals_flag(const std::string& s, std::size_t n) {
  std::vector<double> vals;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw ConfigError("not a number: '" + item + "'");
    vals.push_back(x);
  }
  if (vals.size() != n)
    throw ConfigError("expected " + std::to_string(n) + " comma-separated reals, got " + std::to_string(vals.size()));
  return vals;
}

cd parse_complex_flag(const std::string& s) {
  const auto v = parse_reals_flag(s, 2);
  return {v[0], v[1]};
}

Mat2 parse_mobius_flag(const std::string& s) {
  const auto v = parse_reals_flag(s, 8);
  Mat2 b;
  b << cd(v[0], v[1]), cd(v[2], v[3]), cd(v[4], v[5]), cd(v[6], v[7]);
  return b;
}

Mat4 parse_lorentz_flag(const std::string& s) {
  const auto v = parse_reals_flag(s, 16);
  Mat4 a;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = v[4 * r + c];
  return a;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol > 0)) throw ConfigError("--tol must be positive");
    const std::string& c = cfg.command;
    if (c == "validate") return cmd_validate(cfg, out);
    if (c == "sample") return cmd_sample(cfg, out, err);
    if (c == "mesh") return cmd_mesh(cfg, out, err);
    if (c == "canonize") return cmd_canonize(cfg, out, err);
    if (c == "transform") return cmd_transform(cfg, out, err);
    if (c == "associate") {
      if (!cfg.phi) throw ConfigError("associate needs --phi");
      return cmd_family(cfg, out, *cfg.phi, false);
    }
    if (c == "conjugate") return cmd_family(cfg, out, std::numbers::pi / 2, true);
    if (c == "report") return cmd_report(cfg, out, err);
    throw ConfigError("unknown command '" + c + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace wsurf
