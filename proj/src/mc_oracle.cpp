#include "nomamec/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nomamec/errors.hpp"
#include "nomamec/rng.hpp"

namespace nomamec {

namespace {

// Hit counts of every event for block `index`, written to hits[0..events).
void run_block(std::span<const GainEvent> events, const OrderedPairConfig& cfg,
               const MonteCarloSpec& spec, std::uint64_t index, std::span<std::uint64_t> hits,
               std::vector<double>& scratch) {
  RandomStream stream = RandomStream::substream(spec.seed, index);
  const std::uint64_t begin = index * spec.chunk;
  const std::uint64_t end = std::min(spec.trials, begin + spec.chunk);
  std::fill(hits.begin(), hits.end(), 0);
  for (std::uint64_t t = begin; t < end; ++t) {
    const ChannelGainPair gains = sample_ordered_pair(cfg, stream, scratch);
    for (std::size_t e = 0; e < events.size(); ++e) {
      if (events[e](gains)) ++hits[e];
    }
  }
}

std::vector<ProbabilityEstimate> reduce(std::span<const std::uint64_t> block_hits,
                                        std::size_t event_count, std::uint64_t blocks,
                                        std::uint64_t trials) {
  std::vector<ProbabilityEstimate> out;
  out.reserve(event_count);
  for (std::size_t e = 0; e < event_count; ++e) {
    std::uint64_t total = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) total += block_hits[b * event_count + e];
    out.push_back(ProbabilityEstimate::from_counts(total, trials));
  }
  return out;
}

}  // namespace

void MonteCarloSpec::validate() const {
  if (trials < 1) throw ConfigError("Monte Carlo trials must be >= 1");
  if (chunk < 1 || chunk > trials) {
    throw ConfigError("Monte Carlo chunk must satisfy 1 <= chunk <= trials (chunk=" +
                      std::to_string(chunk) + ", trials=" + std::to_string(trials) + ")");
  }
}

ProbabilityEstimate ProbabilityEstimate::from_counts(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw ConfigError("probability estimate needs at least one trial");
  ProbabilityEstimate est;
  est.trials = trials;
  est.value = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(trials));
  return est;
}

std::vector<ProbabilityEstimate> estimate_events(std::span<const GainEvent> events,
                                                 const OrderedPairConfig& cfg,
                                                 const MonteCarloSpec& spec) {
  spec.validate();
  const std::uint64_t blocks = spec.chunk_count();
  const std::size_t ne = events.size();
  std::vector<std::uint64_t> block_hits(blocks * ne, 0);

#pragma omp parallel
  {
    std::vector<double> scratch(static_cast<std::size_t>(cfg.population()));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
      const auto idx = static_cast<std::uint64_t>(b);
      run_block(events, cfg, spec, idx, std::span(block_hits).subspan(idx * ne, ne), scratch);
    }
  }
  return reduce(block_hits, ne, blocks, spec.trials);
}

std::vector<ProbabilityEstimate> estimate_events_serial(std::span<const GainEvent> events,
                                                        const OrderedPairConfig& cfg,
                                                        const MonteCarloSpec& spec) {
  spec.validate();
  const std::uint64_t blocks = spec.chunk_count();
  const std::size_t ne = events.size();
  std::vector<std::uint64_t> block_hits(blocks * ne, 0);
  std::vector<double> scratch(static_cast<std::size_t>(cfg.population()));
  for (std::uint64_t b = 0; b < blocks; ++b) {
    run_block(events, cfg, spec, b, std::span(block_hits).subspan(b * ne, ne), scratch);
  }
  return reduce(block_hits, ne, blocks, spec.trials);
}

ProbabilityEstimate estimate_event(const GainEvent& event, const OrderedPairConfig& cfg,
                                   const MonteCarloSpec& spec) {
  return estimate_events(std::span(&event, 1), cfg, spec).front();
}

ProbabilityEstimate estimate_event_serial(const GainEvent& event, const OrderedPairConfig& cfg,
                                          const MonteCarloSpec& spec) {
  return estimate_events_serial(std::span(&event, 1), cfg, spec).front();
}

}  // namespace nomamec
