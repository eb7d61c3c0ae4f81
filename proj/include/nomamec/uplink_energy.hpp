#pragma once

#include <optional>
#include <string_view>

#include "nomamec/chanstat.hpp"
#include "nomamec/uplink_latency.hpp"

namespace nomamec {

/// Strong-user power fraction beta used in both NOMA slots; NOMA spends
/// 2*beta of the OMA energy, so 0 < beta < 1/2.
class EnergyScaling {
public:
  explicit EnergyScaling(double beta);

  double beta() const { return beta_; }

  /// (1-2beta)/(beta^2 rho_n - (1-beta) rho_m); only meaningful when the
  /// denominator is positive (second branch).
  double kappa1(const SnrOperatingPoint& snr) const;

  /// True when (1-beta) rho_m >= beta^2 rho_n: the OMA-wins region reaches
  /// every weak-user gain.
  bool first_branch(const SnrOperatingPoint& snr) const;

private:
  double beta_;
};

/// P(NOMA with reduced power delivers no more bits than OMA), i.e.
///   P(|h_n|^2 <= ((1-beta)(1 + rho_m |h_m|^2) - beta) / (beta^2 rho_n)).
/// The branch follows the sign of (1-beta) rho_m - beta^2 rho_n; the
/// boundary goes to the first branch. Throws RangeError for population > 20
/// and NumericError on a non-finite summand.
double p_tilde_exact(const OrderedPairConfig& cfg, const SnrOperatingPoint& snr,
                     const EnergyScaling& scale);

/// Upper bound of the vanishing regime, M!/(M-m)! (1-2beta)^m / (beta^{2m} rho_n^m).
double p_tilde_vanishing_approx(const OrderedPairConfig& cfg, double rho_n,
                                const EnergyScaling& scale);

/// Limit of p_tilde_exact as both SNRs grow with rho_m/rho_n -> ratio in
/// the first branch:
///   1 - Sum_p (m-1)! c_p c_mn / ((M-m-p) prod_{i=1}^{m} (b~ + p + i)),
/// b~ = ratio (1-beta)(M-m-p)/beta^2.
double p_tilde_plateau(const OrderedPairConfig& cfg, double ratio, const EnergyScaling& scale);

/// Which SNRs grow without bound; `ratio_limit` is lim rho_m/rho_n and is
/// required when both grow.
struct GrowthDescription {
  bool rho_m_grows = false;
  bool rho_n_grows = false;
  std::optional<double> ratio_limit;
};

enum class Regime { vanishes, plateaus };

std::string_view to_string(Regime r);

struct RegimeResult {
  Regime regime;
  /// Limiting value for `plateaus` (1 when only rho_m grows).
  std::optional<double> plateau;
};

/// Asymptotic classification of p_tilde_exact. Throws ConfigError for an
/// ambiguous description (nothing grows, or both grow without a ratio).
RegimeResult p_tilde_regime(const GrowthDescription& growth, const EnergyScaling& scale,
                            const OrderedPairConfig& cfg);

}  // namespace nomamec
