#include "nomamec/chanstat.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nomamec/compensated_sum.hpp"
#include "nomamec/errors.hpp"

namespace nomamec {

namespace {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

double ipow(double base, int exponent) {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

void require_finite_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be finite and nonnegative");
  }
}

// M! / ((k-1)! (M-k)!) as an exact integer, M <= 20.
std::uint64_t order_stat_prefactor(int population, int k) {
  return factorial(population) / (factorial(k - 1) * factorial(population - k));
}

}  // namespace

OrderedPairConfig::OrderedPairConfig(int population, int weak_index, int strong_index)
    : population_(population), weak_(weak_index), strong_(strong_index) {
  if (population < 2) {
    throw ConfigError("population must be at least 2, got " + std::to_string(population));
  }
  if (weak_index < 1 || weak_index >= strong_index || strong_index > population) {
    throw ConfigError("ordered indices must satisfy 1 <= m < n <= population (m=" +
                      std::to_string(weak_index) + ", n=" + std::to_string(strong_index) +
                      ", population=" + std::to_string(population) + ")");
  }
}

void OrderedPairConfig::require_closed_form_range() const {
  if (population_ > kMaxClosedFormPopulation) {
    throw RangeError("closed forms are limited to population <= " +
                     std::to_string(kMaxClosedFormPopulation) + ", got " +
                     std::to_string(population_));
  }
}

ChannelGainPair ChannelGainPair::checked(double weak, double strong) {
  require_finite_nonnegative(weak, "weak_gain");
  require_finite_nonnegative(strong, "strong_gain");
  if (weak > strong) throw DomainError("weak_gain must not exceed strong_gain");
  return {weak, strong};
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw RangeError("factorial argument outside [0, 20]: " + std::to_string(n));
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 62) throw RangeError("binomial n outside [0, 62]: " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint128 r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
  return static_cast<std::uint64_t>(r);
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial of a negative integer");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double double_factorial(int k) {
  double r = 1.0;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

double c_mn(const OrderedPairConfig& cfg) {
  const int M = cfg.population();
  const int m = cfg.weak_index();
  const int n = cfg.strong_index();
  if (M <= 20) {
    return static_cast<double>(factorial(M) /
                               (factorial(m - 1) * factorial(n - 1 - m) * factorial(M - n)));
  }
  return std::exp(log_factorial(M) - log_factorial(m - 1) - log_factorial(n - 1 - m) -
                  log_factorial(M - n));
}

double c_p(const OrderedPairConfig& cfg, int p) {
  const int t = cfg.strong_index() - 1 - cfg.weak_index();
  const double mag = static_cast<double>(binomial(t, p));
  return ((t - p) % 2 == 0) ? mag : -mag;
}

double c_l(int m, int l) {
  const double mag = static_cast<double>(binomial(m - 1, l));
  return (l % 2 == 0) ? mag : -mag;
}

double alternating_power_sum(int t, int k) {
  if (t < 0 || t > 20 || k < 0 || k > 24) {
    throw RangeError("alternating_power_sum arguments out of range");
  }
  int128 sum = 0;
  for (int l = 0; l <= t; ++l) {
    int128 power = 1;
    for (int i = 0; i < k; ++i) power *= l;
    const int128 term = static_cast<int128>(binomial(t, l)) * power;
    sum += (l % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

double ordered_joint_pdf(double x, double y, const OrderedPairConfig& cfg) {
  require_finite_nonnegative(x, "x");
  require_finite_nonnegative(y, "y");
  if (x > y) return 0.0;
  const int M = cfg.population();
  const int m = cfg.weak_index();
  const int n = cfg.strong_index();
  const double below = -std::expm1(-x);                   // 1 - e^{-x}
  const double between = std::exp(-x) * -std::expm1(x - y);  // e^{-x} - e^{-y}
  return c_mn(cfg) * std::exp(-x - (M - n + 1) * y) * ipow(below, m - 1) *
         ipow(between, n - 1 - m);
}

double order_stat_cdf(int population, int k, double t) {
  if (population < 1 || k < 1 || k > population) {
    throw ConfigError("order_stat_cdf requires 1 <= k <= population");
  }
  if (std::isnan(t)) throw DomainError("order_stat_cdf of NaN");
  if (t <= 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  const double q = -std::expm1(-t);
  CompensatedSum sum;
  if (population <= 62) {
    const double r = std::exp(-t);
    for (int j = k; j <= population; ++j) {
      sum += static_cast<double>(binomial(population, j)) * std::pow(q, j) *
             std::pow(r, population - j);
    }
  } else {
    const double log_q = std::log(q);
    for (int j = k; j <= population; ++j) {
      const double log_choose =
          log_factorial(population) - log_factorial(j) - log_factorial(population - j);
      sum += std::exp(log_choose + j * log_q - (population - j) * t);
    }
  }
  return std::min(1.0, sum.value());
}

double order_stat_cdf_alternating(int population, int k, double t) {
  if (population < 1 || k < 1 || k > population) {
    throw ConfigError("order_stat_cdf_alternating requires 1 <= k <= population");
  }
  if (population > kMaxClosedFormPopulation) {
    throw RangeError("alternating order-statistic CDF limited to population <= 20");
  }
  const std::uint64_t pre = order_stat_prefactor(population, k);
  CompensatedSum sum(1.0);
  for (int l = 0; l < k; ++l) {
    const double coeff = static_cast<double>(pre * binomial(k - 1, l));
    const int rate = population - k + l + 1;
    const double term = coeff * std::exp(-rate * t) / rate;
    sum += (l % 2 == 0) ? -term : term;
  }
  return sum.value();
}

ChannelGainPair ordered_pair_from_uniforms(const OrderedPairConfig& cfg,
                                           std::span<const double> uniforms,
                                           std::span<double> scratch) {
  const auto M = static_cast<std::size_t>(cfg.population());
  if (uniforms.size() < M || scratch.size() < M) {
    throw ConfigError("ordered_pair_from_uniforms: buffers shorter than population");
  }
  for (std::size_t i = 0; i < M; ++i) scratch[i] = -std::log(uniforms[i]);
  std::sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(M));
  return {scratch[static_cast<std::size_t>(cfg.weak_index() - 1)],
          scratch[static_cast<std::size_t>(cfg.strong_index() - 1)]};
}

ChannelGainPair sample_ordered_pair(const OrderedPairConfig& cfg, RandomStream& stream,
                                    std::span<double> scratch) {
  const auto M = static_cast<std::size_t>(cfg.population());
  if (scratch.size() < M) throw ConfigError("sample_ordered_pair: scratch shorter than population");
  for (std::size_t i = 0; i < M; ++i) scratch[i] = stream.exponential();
  std::sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(M));
  return {scratch[static_cast<std::size_t>(cfg.weak_index() - 1)],
          scratch[static_cast<std::size_t>(cfg.strong_index() - 1)]};
}

ChannelGainPair sample_ordered_pair(const OrderedPairConfig& cfg, RandomStream& stream) {
  std::vector<double> scratch(static_cast<std::size_t>(cfg.population()));
  return sample_ordered_pair(cfg, stream, scratch);
}

double binomial_identity_lhs(int population, int m) {
  if (population > kMaxClosedFormPopulation) {
    throw RangeError("binomial identity evaluated only for M <= 20, got M=" +
                     std::to_string(population));
  }
  if (m < 1 || m >= population) throw ConfigError("binomial identity requires 1 <= m < M");
  const std::uint64_t pre = order_stat_prefactor(population, m);
  CompensatedSum sum;
  for (int l = 0; l < m; ++l) {
    const double numerator = static_cast<double>(pre * binomial(m - 1, l));
    const double term = numerator / (population - m + l + 1);
    sum += (l % 2 == 0) ? term : -term;
  }
  return sum.value();
}

}  // namespace nomamec
