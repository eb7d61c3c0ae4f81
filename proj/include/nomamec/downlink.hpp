#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "nomamec/chanstat.hpp"
#include "nomamec/mc_oracle.hpp"

namespace nomamec {

/// Task size N (bits), slot length T (s) and the SINR threshold
/// epsilon = 2^{N/T} - 1 needed to move N bits in one slot.
class DownlinkTaskSpec {
public:
  DownlinkTaskSpec(double bits, double slot);

  double bits() const { return bits_; }
  double slot() const { return slot_; }
  double epsilon() const { return epsilon_; }

private:
  double bits_;
  double slot_;
  double epsilon_;
};

/// Superposition-coding power split, alpha_m^2 + alpha_n^2 = 1.
struct PowerSplit {
  double alpha_m_sq = 1.0;
  double alpha_n_sq = 0.0;

  /// Throws ConfigError unless alpha_n_sq lies in [0, 1].
  static PowerSplit from_strong_share(double alpha_n_sq);
};

/// Power split plus the second-slot power fraction beta~ in (0, 1).
class DownlinkScaling {
public:
  DownlinkScaling(double beta_tilde, PowerSplit split);

  double beta_tilde() const { return beta_tilde_; }
  double alpha_m_sq() const { return split_.alpha_m_sq; }
  double alpha_n_sq() const { return split_.alpha_n_sq; }
  const PowerSplit& split() const { return split_; }

private:
  double beta_tilde_;
  PowerSplit split_;
};

/// Chebyshev-Gauss node count.
struct QuadratureSpec {
  int points = 64;

  void validate() const;
  /// Node i (1-based) on [-1, 1]: cos((2i-1) pi / (2N)).
  double node(int i) const;
};

/// Cognitive-radio split: the weak server gets exactly its OMA rate first,
///   alpha_n^2 = max(0, (rho g_m - eps) / (rho g_m (1 + eps))).
/// Throws ConfigError for non-positive rho or a negative gain.
PowerSplit cr_power_allocation(double rho, double weak_gain, const DownlinkTaskSpec& task);

struct DownlinkBits {
  double bits_m = 0.0;        ///< weak server, first slot (strong signal as interference)
  double bits_n_slot1 = 0.0;  ///< strong server after SIC, first slot
  double bits_n_slot2 = 0.0;  ///< strong server, dedicated second slot at beta~ rho
};

/// Bits delivered per slot, all rates in log base 2. `second_slot_fraction`
/// may be 0 (silent second slot) up to 1.
DownlinkBits downlink_rates(double rho, const ChannelGainPair& gains, const PowerSplit& split,
                            double second_slot_fraction, const DownlinkTaskSpec& task);

DownlinkBits downlink_rates(double rho, const ChannelGainPair& gains,
                            const DownlinkScaling& scaling, const DownlinkTaskSpec& task);

/// Bits the OMA benchmark delivers to a server with gain `gain` in one slot.
double oma_bits(double rho, double gain, const DownlinkTaskSpec& task);

/// P(NOMA with second-slot power beta~ delivers no more bits to server n
/// than OMA), under cognitive-radio allocation. Closed form:
///   P(|g_m|^2 <= eps/rho) + c_mn Sum_p c_p int_{eps/rho}^{eps/(beta~ rho)} f_p(x) dx,
/// the integral by Chebyshev-Gauss quadrature with `quad.points` nodes.
double p_d_tilde_quadrature(const OrderedPairConfig& cfg, double rho, double beta_tilde,
                            const DownlinkTaskSpec& task, const QuadratureSpec& quad = {});

struct QuadratureCheck {
  double value = 0.0;    ///< at quad.points
  double doubled = 0.0;  ///< at 2 * quad.points
  double delta() const { return doubled - value; }
  bool converged(double tolerance) const;
};

/// Evaluates at quad.points and 2*quad.points so callers can reject an
/// unconverged value.
QuadratureCheck p_d_tilde_quadrature_checked(const OrderedPairConfig& cfg, double rho,
                                             double beta_tilde, const DownlinkTaskSpec& task,
                                             const QuadratureSpec& quad = {});

/// The integrand f_p(x) for summand p (exposed for tests).
double downlink_kernel(const OrderedPairConfig& cfg, int p, double x, double rho,
                       double beta_tilde, double epsilon);

/// Upper limit on |g_n|^2 for NOMA to lose, given |g_m|^2 = x > eps/rho:
///   (rho x [(1-beta~)(1+eps) - 1] + eps) / (rho beta~ (rho x - eps)).
double downlink_region_bound(double x, double rho, double beta_tilde, double epsilon);

struct LatencyTasks {
  double bits_m = 1.0;
  double bits_n = 1.0;
  double slot = 1.0;
};

/// Monte Carlo estimates of the two single-slot completion probabilities
/// under a fixed power split: P(bits_m >= N_m) and P(bits_n_slot1 >= N_n).
std::pair<ProbabilityEstimate, ProbabilityEstimate> p_d_latency_mc(
    const OrderedPairConfig& cfg, double rho, const PowerSplit& split, const LatencyTasks& tasks,
    const MonteCarloSpec& spec);

struct CurvePoint {
  double rho = 0.0;  ///< linear
  double probability = 0.0;
};

struct DbWindow {
  double low_db = 0.0;
  double high_db = 0.0;
};

/// Least-squares slope of ln(probability) against ln(rho) over the points
/// whose rho lies in `window`, negated. Needs >= 4 points in the window;
/// throws DomainError on a non-positive probability there.
double decay_exponent_fit(std::span<const CurvePoint> curve, DbWindow window);

}  // namespace nomamec
