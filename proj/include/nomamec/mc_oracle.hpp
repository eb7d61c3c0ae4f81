#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nomamec/chanstat.hpp"

namespace nomamec {

/// Trial budget and seeding. Trials are split into `chunk`-sized blocks;
/// block i draws from RandomStream::substream(seed, i), so the estimate
/// depends only on (seed, trials, chunk) and never on the worker count.
struct MonteCarloSpec {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t chunk = 65'536;

  /// Throws ConfigError unless trials >= 1 and 1 <= chunk <= trials.
  void validate() const;
  std::uint64_t chunk_count() const { return (trials + chunk - 1) / chunk; }
};

/// Empirical frequency with its binomial standard error.
struct ProbabilityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;

  static ProbabilityEstimate from_counts(std::uint64_t hits, std::uint64_t trials);
};

/// Pure predicate over one sampled ordered pair.
using GainEvent = std::function<bool(const ChannelGainPair&)>;

/// Estimates P(event) over ordered pairs drawn for `cfg`. Blocks run under
/// OpenMP; per-block hit counts are reduced in block order.
ProbabilityEstimate estimate_event(const GainEvent& event, const OrderedPairConfig& cfg,
                                   const MonteCarloSpec& spec);

/// Several events evaluated on the same draws.
std::vector<ProbabilityEstimate> estimate_events(std::span<const GainEvent> events,
                                                 const OrderedPairConfig& cfg,
                                                 const MonteCarloSpec& spec);

/// Single-threaded reference with identical block structure; must agree
/// bit-for-bit with the parallel path.
std::vector<ProbabilityEstimate> estimate_events_serial(std::span<const GainEvent> events,
                                                        const OrderedPairConfig& cfg,
                                                        const MonteCarloSpec& spec);

ProbabilityEstimate estimate_event_serial(const GainEvent& event, const OrderedPairConfig& cfg,
                                          const MonteCarloSpec& spec);

}  // namespace nomamec
