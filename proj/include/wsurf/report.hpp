#pragma once

// Invariant suite over a sampled surface: every property is evaluated on the
// grid nodes and reported with its worst deviation.

#include <optional>
#include <string>
#include <vector>

#include "wsurf/weier.hpp"

namespace wsurf {

struct PropertyResult {
  std::string name;
  bool skipped = false;
  bool passed = false;
  double worst = 0;  // max deviation found
  double tol = 0;
  std::string detail;
};

std::vector<PropertyResult> run_invariant_suite(const WeierData& w, const GridSpec& grid,
                                                std::optional<cd> t0 = std::nullopt);

/// "name: PASS|FAIL|SKIP worst=... tol=... [detail]"
std::string format_property(const PropertyResult& r);

}  // namespace wsurf
