#pragma once

// Command runner behind the wsurf executable. Commands return process exit
// codes: 0 ok, 1 condition violation, 2 parse error, 3 degenerate point,
// 4 numerical failure, 5 not congruent / not canonical.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsurf/motions.hpp"

namespace wsurf {

struct RunConfig {
  std::string command;
  std::string in;
  std::string out;  // empty: standard output
  std::optional<std::pair<int, int>> grid;
  std::optional<cd> t0;
  std::optional<double> phi;
  std::optional<Mat2> mobius;
  std::optional<Mat4> lorentz;
  MotionVariant variant = MotionVariant::OrthochronousProper;
  std::string projection = "drop-x4";
  double tol = kValidityEps;
  std::string canonical_type = "first";
};

const std::vector<std::string>& cli_commands();

/// "NUxNV"
std::pair<int, int> parse_grid_flag(const std::string& s);
/// "RE,IM"
cd parse_complex_flag(const std::string& s);
/// Comma-separated reals, exactly n of them.
std::vector<double> parse_reals_flag(const std::string& s, std::size_t n);
/// 8 reals, row-major (re a, im a, re b, im b, ...).
Mat2 parse_mobius_flag(const std::string& s);
/// 16 reals, row-major.
Mat4 parse_lorentz_flag(const std::string& s);

/// Runs one command. Reports go to out (or the --out file for artifacts),
/// diagnostics to err. Never throws.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace wsurf
