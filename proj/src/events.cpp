#include "nomamec/events.hpp"

#include <cmath>

#include "nomamec/errors.hpp"

namespace nomamec::events {

GainEvent uplink_latency(const SnrOperatingPoint& snr) {
  const double linear = snr.rho_m() / snr.rho_n();
  const double quadratic = snr.rho_m() * snr.rho_m() / snr.rho_n();
  return [=](const ChannelGainPair& g) {
    const double x = g.weak_gain;
    return g.strong_gain > linear * x + quadratic * x * x;
  };
}

GainEvent uplink_energy(const SnrOperatingPoint& snr, const EnergyScaling& scale) {
  const double beta = scale.beta();
  const double rho_m = snr.rho_m();
  const double denom = beta * beta * snr.rho_n();
  return [=](const ChannelGainPair& g) {
    return g.strong_gain <= ((1.0 - beta) * (1.0 + rho_m * g.weak_gain) - beta) / denom;
  };
}

GainEvent downlink_energy(double rho, double beta_tilde, const DownlinkTaskSpec& task) {
  if (!(beta_tilde > 0.0 && beta_tilde < 1.0)) throw ConfigError("beta_tilde must lie in (0, 1)");
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  return [=](const ChannelGainPair& g) {
    const PowerSplit split = cr_power_allocation(rho, g.weak_gain, task);
    const DownlinkBits noma = downlink_rates(rho, g, split, beta_tilde, task);
    return noma.bits_n_slot1 + noma.bits_n_slot2 <= oma_bits(rho, g.strong_gain, task);
  };
}

std::array<GainEvent, 2> downlink_latency(double rho, const PowerSplit& split,
                                          const LatencyTasks& tasks) {
  const DownlinkTaskSpec rate_task(1.0, tasks.slot);
  return {
      GainEvent([=](const ChannelGainPair& g) {
        return downlink_rates(rho, g, split, 0.0, rate_task).bits_m >= tasks.bits_m;
      }),
      GainEvent([=](const ChannelGainPair& g) {
        return downlink_rates(rho, g, split, 0.0, rate_task).bits_n_slot1 >= tasks.bits_n;
      }),
  };
}

}  // namespace nomamec::events
