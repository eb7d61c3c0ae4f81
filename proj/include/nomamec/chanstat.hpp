#pragma once

#include <cstdint>
#include <span>

#include "nomamec/rng.hpp"

namespace nomamec {

/// Largest population for which the alternating binomial closed forms are
/// evaluated. Cancellation grows roughly like 2^M.
inline constexpr int kMaxClosedFormPopulation = 20;

/// Population size and the two ordered indices paired for NOMA.
///
/// Indices are 1-based ranks in ascending channel-gain order: the m-th and
/// n-th smallest of `population` i.i.d. gains, 1 <= m < n <= population.
class OrderedPairConfig {
public:
  /// Throws ConfigError unless population >= 2 and 1 <= m < n <= population.
  OrderedPairConfig(int population, int weak_index, int strong_index);

  int population() const { return population_; }
  int weak_index() const { return weak_; }
  int strong_index() const { return strong_; }

  /// Throws RangeError when population exceeds kMaxClosedFormPopulation.
  void require_closed_form_range() const;

  friend bool operator==(const OrderedPairConfig&, const OrderedPairConfig&) = default;

private:
  int population_;
  int weak_;
  int strong_;
};

/// Squared channel magnitudes of the paired nodes, weak <= strong.
struct ChannelGainPair {
  double weak_gain = 0.0;
  double strong_gain = 0.0;

  /// Validating factory: both finite, nonnegative and ordered.
  static ChannelGainPair checked(double weak, double strong);
};

// --- Combinatorial constants -------------------------------------------------

/// n! for 0 <= n <= 20 (exact in 64 bits).
std::uint64_t factorial(int n);

/// Binomial coefficient, exact for n <= 62.
std::uint64_t binomial(int n, int k);

/// ln(n!) via lgamma, for any n >= 0.
double log_factorial(int n);

/// Odd/even double factorial k!! with (-1)!! = 0!! = 1.
double double_factorial(int k);

/// c_mn = M! / ((m-1)! (n-1-m)! (M-n)!), the joint-density normalizer.
double c_mn(const OrderedPairConfig& cfg);

/// c_p = C(n-1-m, p) (-1)^(n-1-m-p), p = 0..n-1-m.
double c_p(const OrderedPairConfig& cfg, int p);

/// c_l = C(m-1, l) (-1)^l, l = 0..m-1.
double c_l(int m, int l);

/// Sum_{l=0}^{t} (-1)^l C(t, l) l^k computed in exact integer arithmetic.
double alternating_power_sum(int t, int k);

// --- Order statistics of unit-mean exponentials --------------------------------

/// Joint density of the m-th and n-th smallest of M unit exponentials at
/// (x, y); zero when x > y. Throws DomainError on negative/non-finite input.
double ordered_joint_pdf(double x, double y, const OrderedPairConfig& cfg);

/// P(X_(k) <= t) for the k-th smallest of `population` unit exponentials.
/// Evaluated as a sum of nonnegative binomial terms, so it keeps full
/// relative accuracy for small t.
double order_stat_cdf(int population, int k, double t);

/// The same CDF written as 1 - M!/((k-1)!(M-k)!) Sum_l c_l e^{-(M-k+l+1)t}/(M-k+l+1),
/// the alternating form that appears in the closed-form probabilities.
double order_stat_cdf_alternating(int population, int k, double t);

/// Order-statistic transform of `population` uniforms in (0, 1]: each
/// becomes -ln U, the values are fully sorted ascending, and the m-th and
/// n-th smallest are returned. `scratch` must hold population doubles.
ChannelGainPair ordered_pair_from_uniforms(const OrderedPairConfig& cfg,
                                           std::span<const double> uniforms,
                                           std::span<double> scratch);

/// Draws one ordered pair from `stream`; `scratch` must hold population doubles.
ChannelGainPair sample_ordered_pair(const OrderedPairConfig& cfg, RandomStream& stream,
                                    std::span<double> scratch);

/// Convenience overload that allocates its own scratch.
ChannelGainPair sample_ordered_pair(const OrderedPairConfig& cfg, RandomStream& stream);

/// (M!/((m-1)!(M-m)!)) Sum_{l=0}^{m-1} c_l/(M-m+l+1), which equals 1 for
/// every 1 <= m < M. Each term carries a single rounding and the sum is
/// compensated. Throws RangeError for M > 20, ConfigError for bad indices.
double binomial_identity_lhs(int population, int m);

}  // namespace nomamec
