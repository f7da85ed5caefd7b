#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace qqinv {

struct Violation {
  std::string relation;
  double max_violation = 0.0;
};

/// Outcome of a numerical identity check: the worst absolute violation of
/// each relation over the sampled inputs.
struct CheckReport {
  std::string name;
  std::vector<Violation> items;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  double worst() const {
    double w = 0.0;
    for (const auto& v : items) w = std::max(w, v.max_violation);
    return w;
  }
  // NaN compares false, so a NaN violation fails the check.
  bool passed() const {
    return std::all_of(items.begin(), items.end(),
                       [&](const Violation& v) { return v.max_violation <= tolerance; });
  }
};

}  // namespace qqinv
