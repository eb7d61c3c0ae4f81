#include "nomamec/uplink_energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nomamec/compensated_sum.hpp"
#include "nomamec/errors.hpp"

namespace nomamec {

namespace {

constexpr double kProbabilitySlack = 1e-9;

double checked_probability(double raw, const char* who) {
  if (!(raw >= -kProbabilitySlack && raw <= 1.0 + kProbabilitySlack)) {
    throw NumericError(std::string(who) + ": value " + std::to_string(raw) +
                       " outside the probability tolerance window");
  }
  return std::clamp(raw, 0.0, 1.0);
}

}  // namespace

EnergyScaling::EnergyScaling(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta < 0.5)) {
    throw ConfigError("beta must lie in (0, 1/2), got " + std::to_string(beta));
  }
}

double EnergyScaling::kappa1(const SnrOperatingPoint& snr) const {
  return (1.0 - 2.0 * beta_) / (beta_ * beta_ * snr.rho_n() - (1.0 - beta_) * snr.rho_m());
}

bool EnergyScaling::first_branch(const SnrOperatingPoint& snr) const {
  return (1.0 - beta_) * snr.rho_m() >= beta_ * beta_ * snr.rho_n();
}

double p_tilde_exact(const OrderedPairConfig& cfg, const SnrOperatingPoint& snr,
                     const EnergyScaling& scale) {
  cfg.require_closed_form_range();
  const int M = cfg.population();
  const int m = cfg.weak_index();
  const int n = cfg.strong_index();
  const double beta = scale.beta();
  const double beta_sq_rho_n = beta * beta * snr.rho_n();
  const bool first = scale.first_branch(snr);
  const double kappa = first ? 0.0 : scale.kappa1(snr);
  const double cmn = c_mn(cfg);

  // Joint part: P(|h_m|^2 <= kappa, |h_n|^2 above the threshold line), with
  // kappa = infinity in the first branch.
  CompensatedSum joint;
  for (int p = 0; p <= n - 1 - m; ++p) {
    const int k = M - m - p;
    const double decay = std::exp(-k * (1.0 - 2.0 * beta) / beta_sq_rho_n);
    for (int l = 0; l < m; ++l) {
      const double a_tilde = snr.rho_m() * (1.0 - beta) * k / beta_sq_rho_n + p + l + 1;
      const double truncation = first ? 1.0 : -std::expm1(-a_tilde * kappa);
      const double term = cmn * c_p(cfg, p) * c_l(m, l) * decay * truncation / (k * a_tilde);
      if (!std::isfinite(term)) {
        throw NumericError("p_tilde_exact: non-finite summand at p=" + std::to_string(p) +
                               ", l=" + std::to_string(l),
                           p, l);
      }
      joint += term;
    }
  }

  const double reach = first ? 1.0 : order_stat_cdf(M, m, kappa);
  return checked_probability(reach - joint.value(), "p_tilde_exact");
}

double p_tilde_vanishing_approx(const OrderedPairConfig& cfg, double rho_n,
                                const EnergyScaling& scale) {
  cfg.require_closed_form_range();
  const int M = cfg.population();
  const int m = cfg.weak_index();
  const double beta = scale.beta();
  const double falling = static_cast<double>(factorial(M) / factorial(M - m));
  return falling * std::pow(1.0 - 2.0 * beta, m) / (std::pow(beta, 2 * m) * std::pow(rho_n, m));
}

double p_tilde_plateau(const OrderedPairConfig& cfg, double ratio, const EnergyScaling& scale) {
  cfg.require_closed_form_range();
  if (!std::isfinite(ratio) || ratio < 0.0) {
    throw ConfigError("plateau ratio must be finite and nonnegative");
  }
  const int M = cfg.population();
  const int m = cfg.weak_index();
  const double beta = scale.beta();
  const double cmn = c_mn(cfg);
  const double fact_m1 = static_cast<double>(factorial(m - 1));
  CompensatedSum sum;
  for (int p = 0; p <= cfg.strong_index() - 1 - m; ++p) {
    const int k = M - m - p;
    const double b_tilde = ratio * (1.0 - beta) * k / (beta * beta);
    double product = 1.0;
    for (int i = 1; i <= m; ++i) product *= b_tilde + p + i;
    sum += fact_m1 * c_p(cfg, p) * cmn / (k * product);
  }
  return checked_probability(1.0 - sum.value(), "p_tilde_plateau");
}

std::string_view to_string(Regime r) {
  return r == Regime::vanishes ? "vanishes" : "plateaus";
}

RegimeResult p_tilde_regime(const GrowthDescription& growth, const EnergyScaling& scale,
                            const OrderedPairConfig& cfg) {
  if (!growth.rho_m_grows && !growth.rho_n_grows) {
    throw ConfigError("growth description: neither SNR grows");
  }
  if (growth.rho_m_grows != growth.rho_n_grows) {
    if (growth.ratio_limit) {
      throw ConfigError("growth description: ratio_limit applies only when both SNRs grow");
    }
    if (growth.rho_n_grows) return {Regime::vanishes, std::nullopt};
    return {Regime::plateaus, 1.0};
  }
  if (!growth.ratio_limit || !std::isfinite(*growth.ratio_limit) || *growth.ratio_limit < 0.0) {
    throw ConfigError("growth description: both SNRs grow but no finite ratio_limit given");
  }
  const double beta = scale.beta();
  const double ratio = *growth.ratio_limit;
  if (ratio < beta * beta / (1.0 - beta)) return {Regime::vanishes, std::nullopt};
  return {Regime::plateaus, p_tilde_plateau(cfg, ratio, scale)};
}

}  // namespace nomamec
