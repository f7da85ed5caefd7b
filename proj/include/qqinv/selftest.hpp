#pragma once

#include <cstdint>
#include <vector>

#include "qqinv/report.hpp"

namespace qqinv {

inline constexpr std::uint64_t kSelftestSeed = 20100101;

struct SelftestOptions {
  std::uint64_t seed = kSelftestSeed;
  std::size_t panel_size = 200;
};

/// Every module-level check: structure identities and closure for su(2),
/// su(3) (exhaustive) and su(6) (sampled), symmetrized traces, Casimir
/// routes, characteristic coefficients, positivity oracle, the trace-word
/// battery and both Molien cross-validations. Sub-seeds are derived from
/// options.seed.
std::vector<CheckReport> run_selftest(const SelftestOptions& options = {});

}  // namespace qqinv
