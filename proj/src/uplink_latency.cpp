#include "nomamec/uplink_latency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nomamec/compensated_sum.hpp"
#include "nomamec/errors.hpp"
#include "nomamec/special.hpp"

namespace nomamec {

namespace {

constexpr double kProbabilitySlack = 1e-9;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ConfigError(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

SnrOperatingPoint::SnrOperatingPoint(double rho_m, double rho_n)
    : rho_m_(rho_m), rho_n_(rho_n), eta_(0.0) {
  require_positive(rho_m, "rho_m");
  require_positive(rho_n, "rho_n");
  eta_ = rho_n_ / rho_m_;
}

SnrOperatingPoint SnrOperatingPoint::from_eta(double rho_m, double eta) {
  require_positive(eta, "eta");
  return SnrOperatingPoint(rho_m, eta * rho_m);
}

SnrOperatingPoint SnrOperatingPoint::from_db(double rho_m_db, double rho_n_db) {
  return SnrOperatingPoint(db_to_linear(rho_m_db), db_to_linear(rho_n_db));
}

double p_n_exact(const OrderedPairConfig& cfg, const SnrOperatingPoint& snr) {
  cfg.require_closed_form_range();
  const int M = cfg.population();
  const int m = cfg.weak_index();
  const int n = cfg.strong_index();
  const double rho_m = snr.rho_m();
  const double rho_n = snr.rho_n();

  // Below this weak-user gain the event holds automatically (the threshold
  // curve lies under the ordering constraint |h_n|^2 >= |h_m|^2).
  const double threshold = std::max(0.0, rho_n - rho_m) / (rho_m * rho_m);
  const double cmn = c_mn(cfg);

  // Part above the threshold: Gaussian-tail integrals
  //   int_c^inf exp(-a x^2 - b x) dx
  //     = sqrt(pi)/(2 sqrt(a)) exp(-a c^2 - b c) erfcx(sqrt(a) c + b/(2 sqrt(a))).
  CompensatedSum above;
  for (int p = 0; p <= n - 1 - m; ++p) {
    const int k = M - m - p;
    const double a = rho_m * rho_m / rho_n * k;
    const double sqrt_a = std::sqrt(a);
    const double weight_p = cmn * c_p(cfg, p) / k;
    for (int l = 0; l < m; ++l) {
      const double b = p + l + 1 + k * rho_m / rho_n;
      const double arg = sqrt_a * threshold + b / (2.0 * sqrt_a);
      const double tail = 0.5 * (1.0 / std::numbers::inv_sqrtpi) / sqrt_a *
                          std::exp(-a * threshold * threshold - b * threshold) *
                          scaled_complement(arg);
      const double term = weight_p * c_l(m, l) * tail;
      if (!std::isfinite(term)) {
        throw NumericError("p_n_exact: non-finite summand at p=" + std::to_string(p) +
                               ", l=" + std::to_string(l),
                           p, l);
      }
      above += term;
    }
  }

  const double below = order_stat_cdf(M, m, threshold);
  const double raw = above.value() + below;
  if (!(raw >= -kProbabilitySlack && raw <= 1.0 + kProbabilitySlack)) {
    throw NumericError("p_n_exact: value " + std::to_string(raw) +
                       " outside the probability tolerance window");
  }
  return std::clamp(raw, 0.0, 1.0);
}

HighSnrTerms high_snr_terms(const OrderedPairConfig& cfg, double rho_m, double eta, int p) {
  cfg.require_closed_form_range();
  require_positive(rho_m, "rho_m");
  require_positive(eta, "eta");
  const int M = cfg.population();
  const int m = cfg.weak_index();
  if (p < 0 || p > cfg.strong_index() - 1 - m) throw ConfigError("summand index p out of range");
  const int k = M - m - p;

  HighSnrTerms t;
  t.a = rho_m / eta * k;
  t.lambda = p + 1 + k / eta;
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
  const double fact_m1 = static_cast<double>(factorial(m - 1));
  t.mu_m = alternating_power_sum(m - 1, m) + static_cast<double>(factorial(m)) * t.lambda * sign;

  const double sqrt_pi = (1.0 / std::numbers::inv_sqrtpi);
  const double half_m = 0.5 * m;
  // Q1, Q2 carry their own powers of a; the tilde forms factor out a^{-m/2}.
  double q1 = 0.0;
  double q2 = 0.0;
  if (m % 2 == 1) {
    q1 = sqrt_pi * sign * fact_m1 /
         (static_cast<double>(factorial((m - 1) / 2)) * std::ldexp(1.0, m) * std::pow(t.a, half_m));
    q2 = t.mu_m / (double_factorial(m) * std::pow(2.0, 0.5 * (m + 1)) *
                   std::pow(t.a, 0.5 * (m + 1)));
  } else {
    q1 = sqrt_pi * t.mu_m /
         (static_cast<double>(factorial(m / 2)) * std::ldexp(1.0, m + 1) *
          std::pow(t.a, 0.5 * (m + 1)));
    q2 = sign * fact_m1 /
         (double_factorial(m - 1) * std::ldexp(1.0, m / 2) * std::pow(t.a, half_m));
  }
  const double scale = std::pow(t.a, half_m);
  t.q1_tilde = q1 * scale;
  t.q2_tilde = q2 * scale;
  return t;
}

double p_n_highsnr(const OrderedPairConfig& cfg, double rho_m, double eta) {
  const int m = cfg.weak_index();
  const int M = cfg.population();
  const double cmn = c_mn(cfg);
  const double half_m = 0.5 * m;
  CompensatedSum sum;
  for (int p = 0; p <= cfg.strong_index() - 1 - m; ++p) {
    const HighSnrTerms t = high_snr_terms(cfg, rho_m, eta, p);
    const int k = M - m - p;
    sum += std::pow(eta, half_m) * cmn * c_p(cfg, p) / std::pow(k, half_m + 1.0) *
           (t.q1_tilde - t.q2_tilde);
  }
  return sum.value() / std::pow(rho_m, half_m);
}

double p_n_dominant(const OrderedPairConfig& cfg, double rho_m, double eta) {
  const int m = cfg.weak_index();
  const int M = cfg.population();
  const double cmn = c_mn(cfg);
  const double half_m = 0.5 * m;
  CompensatedSum sum;
  for (int p = 0; p <= cfg.strong_index() - 1 - m; ++p) {
    const HighSnrTerms t = high_snr_terms(cfg, rho_m, eta, p);
    const int k = M - m - p;
    const double leading = (m % 2 == 1) ? t.q1_tilde : -t.q2_tilde;
    sum += std::pow(eta, half_m) * cmn * c_p(cfg, p) / std::pow(k, half_m + 1.0) * leading;
  }
  return sum.value() / std::pow(rho_m, half_m);
}

MinimalPower min_noma_power(double rho_m, const ChannelGainPair& gains) {
  require_positive(rho_m, "rho_m");
  if (!std::isfinite(gains.weak_gain) || gains.weak_gain < 0.0 ||
      !std::isfinite(gains.strong_gain) || gains.strong_gain < 0.0) {
    throw DomainError("channel gains must be finite and nonnegative");
  }
  if (gains.strong_gain == 0.0) throw DomainError("min_noma_power: strong_gain is zero");
  const double ratio = gains.weak_gain / gains.strong_gain;
  MinimalPower out;
  out.oma = ratio * rho_m;
  out.noma = out.oma * (1.0 + rho_m * gains.weak_gain);
  return out;
}

}  // namespace nomamec
