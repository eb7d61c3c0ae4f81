#include "nomamec/downlink.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nomamec/compensated_sum.hpp"
#include "nomamec/errors.hpp"
#include "nomamec/events.hpp"
#include "nomamec/units.hpp"

namespace nomamec {

namespace {

constexpr double kProbabilitySlack = 1e-9;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ConfigError(std::string(name) + " must be finite and positive");
  }
}

void require_gains(const ChannelGainPair& g) {
  if (!std::isfinite(g.weak_gain) || g.weak_gain < 0.0 || !std::isfinite(g.strong_gain) ||
      g.strong_gain < 0.0) {
    throw ConfigError("channel gains must be finite and nonnegative");
  }
}

void require_beta_tilde(double beta_tilde) {
  if (!(beta_tilde > 0.0 && beta_tilde < 1.0)) {
    throw ConfigError("beta_tilde must lie in (0, 1), got " + std::to_string(beta_tilde));
  }
}

// T log2(1 + s)
double slot_bits(double slot, double sinr) { return slot * std::log1p(sinr) / std::numbers::ln2; }

double ipow(double base, int exponent) {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

double quadrature_sum(const OrderedPairConfig& cfg, double rho, double beta_tilde,
                      double epsilon, int points) {
  const double lo = epsilon / rho;
  const double hi = epsilon / (beta_tilde * rho);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const double weight = std::numbers::pi / points * half;
  const int m = cfg.weak_index();

  CompensatedSum total;
  for (int p = 0; p <= cfg.strong_index() - 1 - m; ++p) {
    CompensatedSum integral;
    for (int i = 1; i <= points; ++i) {
      const double angle = (2.0 * i - 1.0) * std::numbers::pi / (2.0 * points);
      const double x = mid + half * std::cos(angle);
      integral += weight * downlink_kernel(cfg, p, x, rho, beta_tilde, epsilon) * std::sin(angle);
    }
    total += c_p(cfg, p) * integral.value();
  }
  return c_mn(cfg) * total.value();
}

}  // namespace

DownlinkTaskSpec::DownlinkTaskSpec(double bits, double slot) : bits_(bits), slot_(slot) {
  require_positive(bits, "bits");
  require_positive(slot, "slot");
  epsilon_ = std::expm1(bits / slot * std::numbers::ln2);
}

PowerSplit PowerSplit::from_strong_share(double alpha_n_sq) {
  if (!(alpha_n_sq >= 0.0 && alpha_n_sq <= 1.0)) {
    throw ConfigError("alpha_n^2 must lie in [0, 1], got " + std::to_string(alpha_n_sq));
  }
  return {1.0 - alpha_n_sq, alpha_n_sq};
}

DownlinkScaling::DownlinkScaling(double beta_tilde, PowerSplit split)
    : beta_tilde_(beta_tilde), split_(split) {
  require_beta_tilde(beta_tilde);
  if (!(split.alpha_n_sq >= 0.0 && split.alpha_m_sq >= 0.0) ||
      std::fabs(split.alpha_m_sq + split.alpha_n_sq - 1.0) > 1e-12) {
    throw ConfigError("power split must be nonnegative and sum to 1");
  }
}

void QuadratureSpec::validate() const {
  if (points < 1) throw ConfigError("quadrature points must be >= 1");
}

double QuadratureSpec::node(int i) const {
  return std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * points));
}

PowerSplit cr_power_allocation(double rho, double weak_gain, const DownlinkTaskSpec& task) {
  require_positive(rho, "rho");
  if (!std::isfinite(weak_gain) || weak_gain < 0.0) {
    throw ConfigError("weak_gain must be finite and nonnegative");
  }
  const double received = rho * weak_gain;
  const double eps = task.epsilon();
  if (received <= eps) return {1.0, 0.0};
  const double strong = (received - eps) / (received * (1.0 + eps));
  return {1.0 - strong, strong};
}

DownlinkBits downlink_rates(double rho, const ChannelGainPair& gains, const PowerSplit& split,
                            double second_slot_fraction, const DownlinkTaskSpec& task) {
  require_positive(rho, "rho");
  require_gains(gains);
  if (!(second_slot_fraction >= 0.0 && second_slot_fraction <= 1.0)) {
    throw ConfigError("second-slot power fraction must lie in [0, 1]");
  }
  const double T = task.slot();
  DownlinkBits out;
  out.bits_m = slot_bits(T, rho * split.alpha_m_sq * gains.weak_gain /
                                (1.0 + rho * split.alpha_n_sq * gains.weak_gain));
  out.bits_n_slot1 = slot_bits(T, rho * split.alpha_n_sq * gains.strong_gain);
  out.bits_n_slot2 = slot_bits(T, second_slot_fraction * rho * gains.strong_gain);
  return out;
}

DownlinkBits downlink_rates(double rho, const ChannelGainPair& gains,
                            const DownlinkScaling& scaling, const DownlinkTaskSpec& task) {
  return downlink_rates(rho, gains, scaling.split(), scaling.beta_tilde(), task);
}

double oma_bits(double rho, double gain, const DownlinkTaskSpec& task) {
  require_positive(rho, "rho");
  return slot_bits(task.slot(), rho * gain);
}

double downlink_region_bound(double x, double rho, double beta_tilde, double epsilon) {
  const double gap = rho * x - epsilon;
  const double numerator = rho * x * ((1.0 - beta_tilde) * (1.0 + epsilon) - 1.0) + epsilon;
  return numerator / (rho * beta_tilde * gap);
}

double downlink_kernel(const OrderedPairConfig& cfg, int p, double x, double rho,
                       double beta_tilde, double epsilon) {
  const int m = cfg.weak_index();
  const int k = cfg.population() - m - p;
  const double base = std::exp(-(p + 1) * x) * ipow(-std::expm1(-x), m - 1);
  // The upper limit diverges as x -> eps/rho from above, where its
  // exponential vanishes; a non-positive or underflowed denominator is
  // taken as that limit.
  const double denominator = rho * beta_tilde * (rho * x - epsilon);
  double upper_tail = 0.0;
  if (denominator > 0.0 && std::isnormal(denominator)) {
    const double bound = downlink_region_bound(x, rho, beta_tilde, epsilon);
    upper_tail = std::isfinite(bound) ? std::exp(-k * bound) : 0.0;
  }
  return base * (std::exp(-k * x) - upper_tail) / k;
}

double p_d_tilde_quadrature(const OrderedPairConfig& cfg, double rho, double beta_tilde,
                            const DownlinkTaskSpec& task, const QuadratureSpec& quad) {
  cfg.require_closed_form_range();
  require_positive(rho, "rho");
  require_beta_tilde(beta_tilde);
  quad.validate();
  const double eps = task.epsilon();
  const double no_admission = order_stat_cdf(cfg.population(), cfg.weak_index(), eps / rho);
  const double raw = no_admission + quadrature_sum(cfg, rho, beta_tilde, eps, quad.points);
  if (!std::isfinite(raw) || raw < -kProbabilitySlack || raw > 1.0 + kProbabilitySlack) {
    throw NumericError("p_d_tilde_quadrature: value " + std::to_string(raw) +
                       " outside the probability tolerance window");
  }
  return std::clamp(raw, 0.0, 1.0);
}

bool QuadratureCheck::converged(double tolerance) const { return std::fabs(delta()) < tolerance; }

QuadratureCheck p_d_tilde_quadrature_checked(const OrderedPairConfig& cfg, double rho,
                                             double beta_tilde, const DownlinkTaskSpec& task,
                                             const QuadratureSpec& quad) {
  QuadratureCheck out;
  out.value = p_d_tilde_quadrature(cfg, rho, beta_tilde, task, quad);
  out.doubled = p_d_tilde_quadrature(cfg, rho, beta_tilde, task, QuadratureSpec{2 * quad.points});
  return out;
}

std::pair<ProbabilityEstimate, ProbabilityEstimate> p_d_latency_mc(
    const OrderedPairConfig& cfg, double rho, const PowerSplit& split, const LatencyTasks& tasks,
    const MonteCarloSpec& spec) {
  require_positive(rho, "rho");
  require_positive(tasks.slot, "slot");
  if (!(tasks.bits_m >= 0.0) || !(tasks.bits_n >= 0.0) || !std::isfinite(tasks.bits_m) ||
      !std::isfinite(tasks.bits_n)) {
    throw ConfigError("task sizes must be finite and nonnegative");
  }
  const PowerSplit checked = PowerSplit::from_strong_share(split.alpha_n_sq);
  spec.validate();
  const auto events = events::downlink_latency(rho, checked, tasks);
  const auto est = estimate_events(events, cfg, spec);
  return {est[0], est[1]};
}

double decay_exponent_fit(std::span<const CurvePoint> curve, DbWindow window) {
  std::vector<std::pair<double, double>> pts;
  constexpr double slack = 1e-9;
  for (const CurvePoint& c : curve) {
    if (!(c.rho > 0.0)) continue;
    const double db = linear_to_db(c.rho);
    if (db < window.low_db - slack || db > window.high_db + slack) continue;
    if (!(c.probability > 0.0) || !std::isfinite(c.probability)) {
      throw DomainError("decay_exponent_fit: non-positive probability inside the window");
    }
    pts.emplace_back(std::log(c.rho), std::log(c.probability));
  }
  if (pts.size() < 4) {
    throw DomainError("decay_exponent_fit: fewer than 4 points inside the window");
  }
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return -sxy / sxx;
}

}  // namespace nomamec
