#pragma once

// CSV and OBJ output of sampled surfaces.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wsurf/surface.hpp"

namespace wsurf {

inline constexpr const char* kCsvHeader = "u,v,x1,x2,x3,x4,E,K,kappa,nu,mu,degenerate";

/// One line per node in grid order; nu and mu are empty when not populated.
void write_csv(std::ostream& out, const SurfaceGrid& s);

struct CsvRow {
  double u = 0, v = 0;
  RVec4 x = RVec4::Zero();
  double E = 0, K = 0, kappa = 0;
  std::optional<double> nu, mu;
  bool degenerate = false;
};

/// Reads what write_csv wrote. Throws ConfigError on malformed input.
std::vector<CsvRow> read_csv(std::istream& in);

/// Linear map R^4 -> R^3 used for OBJ vertices.
struct Projection {
  std::string spec;
  Eigen::Matrix<double, 3, 4> m;

  /// "drop-x4", "drop-x3", or "orthographic:m11,m12,m13,...,m43" (a 4x3
  /// matrix M, row-major; vertices are M^T x).
  static Projection parse(const std::string& spec);
  Eigen::Vector3d apply(const RVec4& x) const { return m * x; }
};

/// Vertices in grid order, each cell split into two triangles with the same
/// winding. The first line records the projection.
void write_obj(std::ostream& out, const SurfaceGrid& s, const Projection& p);

}  // namespace wsurf
