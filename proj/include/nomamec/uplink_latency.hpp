#pragma once

#include "nomamec/chanstat.hpp"
#include "nomamec/units.hpp"

namespace nomamec {

/// Linear transmit SNRs of the weak (m) and strong (n) users.
class SnrOperatingPoint {
public:
  /// Throws ConfigError unless both are finite and positive.
  SnrOperatingPoint(double rho_m, double rho_n);

  static SnrOperatingPoint from_eta(double rho_m, double eta);
  static SnrOperatingPoint from_db(double rho_m_db, double rho_n_db);

  double rho_m() const { return rho_m_; }
  double rho_n() const { return rho_n_; }
  /// rho_n / rho_m.
  double eta() const { return eta_; }

private:
  double rho_m_;
  double rho_n_;
  double eta_;
};

/// Per-summand quantities of the high-SNR expansion for one index p.
struct HighSnrTerms {
  double a = 0.0;        ///< (rho_m^2/rho_n)(M-m-p)
  double lambda = 0.0;   ///< p + 1 + (M-m-p)/eta
  double mu_m = 0.0;     ///< Sum_l c_l l^m + m! lambda (-1)^{m-1}
  double q1_tilde = 0.0;
  double q2_tilde = 0.0;

  /// b = p + l + 1 + (M-m-p) rho_m/rho_n = l + lambda.
  double b(int l) const { return l + lambda; }
};

/// Probability that the strong user n completes offloading inside the weak
/// user's OMA slot:
///   P(|h_n|^2 > (rho_m/rho_n)|h_m|^2 + (rho_m^2/rho_n)|h_m|^4).
///
/// Exact closed form; the Gaussian tail factor is evaluated through the
/// scaled complement, so no exp(b^2/4a) is ever formed. Valid for both
/// rho_n >= rho_m and rho_n < rho_m.
///
/// Throws RangeError for population > 20 and NumericError (with summand
/// indices) on a non-finite summand or a raw value outside
/// [-1e-9, 1 + 1e-9].
double p_n_exact(const OrderedPairConfig& cfg, const SnrOperatingPoint& snr);

/// High-SNR terms for summand p at (rho_m, eta).
HighSnrTerms high_snr_terms(const OrderedPairConfig& cfg, double rho_m, double eta, int p);

/// High-SNR approximation of p_n_exact for rho_m >> 1 at fixed eta:
///   rho_m^{-m/2} Sum_p eta^{m/2} c_mn c_p (M-m-p)^{-(m/2+1)} (Q1~ - Q2~).
double p_n_highsnr(const OrderedPairConfig& cfg, double rho_m, double eta);

/// Leading term only (Q1~ for odd m, -Q2~ for even m); decays as rho^{-m/2}.
double p_n_dominant(const OrderedPairConfig& cfg, double rho_m, double eta);

struct MinimalPower {
  double noma = 0.0;  ///< strong-user SNR needed to finish within T_m under NOMA
  double oma = 0.0;   ///< same with an interference-free slot of length T_m

  double excess() const { return noma - oma; }
};

/// Minimal strong-user transmit SNR for NOMA and OMA over the weak user's
/// slot. Throws DomainError when strong_gain is zero.
MinimalPower min_noma_power(double rho_m, const ChannelGainPair& gains);

}  // namespace nomamec
