#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nomamec/mc_oracle.hpp"

namespace nomamec {

enum class SweepMode {
  uplink_latency,
  uplink_latency_asymptotic,
  uplink_energy,
  downlink_energy,
  downlink_latency,
};

std::string_view to_string(SweepMode mode);
/// Accepts the CLI spelling ("uplink-latency", ...). Throws ConfigError.
SweepMode parse_sweep_mode(std::string_view text);

/// One SNR axis in dB, inclusive of both ends.
struct SweepAxis {
  std::string parameter;  ///< "rho-m-db", "rho-n-db" or "rho-db"
  double start_db = 0.0;
  double stop_db = 0.0;
  double step_db = 1.0;

  /// Parses "param:start:stop:step". Throws ConfigError.
  static SweepAxis parse(std::string_view text);
  /// start + i*step for i = 0.. while <= stop (with a small slack).
  std::vector<double> values() const;
};

/// Parameters held fixed across the axis. Unset fields are simply absent;
/// each mode checks the ones it needs.
struct SweepParameters {
  std::optional<int> population;
  std::optional<int> weak_index;
  std::optional<int> strong_index;
  std::optional<double> rho_m_db;
  std::optional<double> rho_n_db;
  std::optional<double> rho_db;
  std::optional<double> eta;
  std::optional<double> beta;
  std::optional<double> beta_tilde;
  std::optional<double> bits;
  std::optional<double> slot;
  std::optional<double> alpha_n_sq;
  std::optional<double> bits_m;
  std::optional<double> bits_n;
  int quad_points = 64;
};

struct SweepConfig {
  SweepMode mode = SweepMode::uplink_latency;
  SweepAxis grid;
  SweepParameters fixed;
  std::optional<MonteCarloSpec> mc;
  std::filesystem::path output;

  /// Checks every parameter the mode needs before anything is computed.
  /// Throws ConfigError.
  void validate() const;
};

/// Seed for grid point `index`, derived from the master seed.
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index);

/// The CSV text: header, then one row per grid point in axis order
/// (downlink-latency emits an m row and an n row per point).
std::string render_sweep_csv(const SweepConfig& config);

/// Validates, opens `config.output` (failing before any computation if it
/// cannot be written), renders and writes the CSV.
void run_sweep(const SweepConfig& config);

}  // namespace nomamec
