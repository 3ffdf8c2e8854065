#include "wsurf/export.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace wsurf {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_real(const std::string& s) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ConfigError("not a number: '" + s + "'");
  return x;
}

}  // namespace

void write_csv(std::ostream& out, const SurfaceGrid& s) {
  out << kCsvHeader << '\n';
  for (const SurfacePoint& p : s.points) {
    out << fmt(p.t.real()) << ',' << fmt(p.t.imag());
    for (int k = 0; k < 4; ++k) out << ',' << fmt(p.x(k));
    out << ',' << fmt(p.E) << ',' << fmt(p.K) << ',' << fmt(p.kappa) << ',';
    if (p.nu) out << fmt(*p.nu);
    out << ',';
    if (p.mu) out << fmt(*p.mu);
    out << ',' << (p.degenerate ? 1 : 0) << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("CSV header mismatch");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) throw ConfigError("CSV row with " + std::to_string(f.size()) + " fields");
    CsvRow r;
    r.u = to_real(f[0]);
    r.v = to_real(f[1]);
    for (int k = 0; k < 4; ++k) r.x(k) = to_real(f[2 + k]);
    r.E = to_real(f[6]);
    r.K = to_real(f[7]);
    r.kappa = to_real(f[8]);
    if (!f[9].empty()) r.nu = to_real(f[9]);
    if (!f[10].empty()) r.mu = to_real(f[10]);
    r.degenerate = f[11] == "1";
    rows.push_back(r);
  }
  return rows;
}

Projection Projection::parse(const std::string& spec) {
  Projection p;
  p.spec = spec;
  p.m.setZero();
  if (spec == "drop-x4") {
    p.m(0, 0) = p.m(1, 1) = p.m(2, 2) = 1;
  } else if (spec == "drop-x3") {
    p.m(0, 0) = p.m(1, 1) = p.m(2, 3) = 1;
  } else if (spec.rfind("orthographic:", 0) == 0) {
    const auto vals = split(spec.substr(13), ',');
    if (vals.size() != 12) throw ConfigError("orthographic projection needs 12 numbers (4x3 matrix)");
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c) p.m(c, r) = to_real(vals[3 * r + c]);
  } else {
    throw ConfigError("unknown projection '" + spec + "'");
  }
  return p;
}

void write_obj(std::ostream& out, const SurfaceGrid& s, const Projection& p) {
  out << "# projection: " << p.spec << '\n';
  for (const SurfacePoint& pt : s.points) {
    const Eigen::Vector3d v = p.apply(pt.x);
    out << "v " << fmt(v(0)) << ' ' << fmt(v(1)) << ' ' << fmt(v(2)) << '\n';
  }
  const GridSpec& g = s.grid;
  for (int j = 0; j + 1 < g.nv; ++j) {
    for (int i = 0; i + 1 < g.nu; ++i) {
      const int a = g.index(i, j) + 1, b = g.index(i + 1, j) + 1;
      const int c = g.index(i + 1, j + 1) + 1, d = g.index(i, j + 1) + 1;
      out << "f " << a << ' ' << b << ' ' << c << '\n' << "f " << a << ' ' << c << ' ' << d << '\n';
    }
  }
}

}  // namespace wsurf
