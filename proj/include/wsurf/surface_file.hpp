#pragma once

// Surface definition files: `key = value` lines, '#' starts a comment.
//
//   form = gform_canonical
//   g1 = exp(t)
//   g2 = exp(t)
//   u_min = -1
//   u_max = 1
//   v_min = -1
//   v_max = 1
//   nu = 21
//   nv = 21
//
// Component keys by form: f, h1, h2 (trig, hyperbolic); f, w1, w2 (wform);
// f, g1, g2 (gform); g1, g2 (gform_canonical); h1, h2
// (hyperbolic_canonical); w1, w2 (wform_canonical). Grid keys are optional.

#include <iosfwd>
#include <string>

#include "wsurf/weier.hpp"

namespace wsurf {

WeierData read_surface(std::istream& in);
WeierData read_surface_file(const std::string& path);

/// Deterministic text in the format above. Throws ConfigError when a
/// component holds an opaque evaluator.
std::string format_surface(const WeierData& w);
void write_surface_file(const std::string& path, const WeierData& w);

/// Shortest round-trip decimal text.
std::string format_double(double x);

}  // namespace wsurf
