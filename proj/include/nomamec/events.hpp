#pragma once

#include <array>

#include "nomamec/downlink.hpp"
#include "nomamec/mc_oracle.hpp"
#include "nomamec/uplink_energy.hpp"
#include "nomamec/uplink_latency.hpp"

namespace nomamec::events {

// Event predicates built from the probability definitions. None of them
// reuses the integration limits or series of the closed forms.

/// |h_n|^2 > (rho_m/rho_n)|h_m|^2 + (rho_m^2/rho_n)|h_m|^4.
GainEvent uplink_latency(const SnrOperatingPoint& snr);

/// |h_n|^2 <= ((1-beta)(1 + rho_m |h_m|^2) - beta) / (beta^2 rho_n).
GainEvent uplink_energy(const SnrOperatingPoint& snr, const EnergyScaling& scale);

/// Bit-count comparison with cognitive-radio allocation:
/// NOMA slot-1 plus slot-2 bits to server n <= OMA bits to server n.
GainEvent downlink_energy(double rho, double beta_tilde, const DownlinkTaskSpec& task);

/// The two single-slot completion events under a fixed split.
std::array<GainEvent, 2> downlink_latency(double rho, const PowerSplit& split,
                                          const LatencyTasks& tasks);

}  // namespace nomamec::events
