#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nomamec {

struct ValidationOptions {
  std::uint64_t uplink_trials = 1'000'000;
  std::uint64_t downlink_trials = 10'000'000;
  std::uint64_t seed = 1;
  std::uint64_t chunk = 65'536;
};

struct CheckLine {
  std::string block;
  std::string label;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckLine> lines;
  bool all_passed() const;
  /// Lines of one block, in run order.
  std::vector<CheckLine> block(const std::string& name) const;
};

/// Runs the full grid: identity, uplink latency, limits, uplink slopes,
/// uplink energy, the 25 dB anchor, energy regimes, downlink energy,
/// downlink slopes, quadrature doubling, region identity and determinism.
/// `progress`, when set, sees each line as it is produced.
ValidationReport run_validation(const ValidationOptions& options,
                                const std::function<void(const CheckLine&)>& progress = {});

/// Agreement rule shared by every oracle block.
bool within_oracle_tolerance(double analytic, double estimate, double std_error);

}  // namespace nomamec
