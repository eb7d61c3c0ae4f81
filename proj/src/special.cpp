#include "nomamec/special.hpp"

#include <cmath>
#include <numbers>

namespace nomamec {

namespace {

constexpr double kContinuedFractionThreshold = 3.0;

// erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// evaluated with the modified Lentz algorithm.
double scaled_complement_cf(double z) {
  constexpr double tiny = 1e-300;
  double f = z;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = z + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::numbers::inv_sqrtpi / f;
}

}  // namespace

double prob_integral(double x) { return std::erf(x); }

double scaled_complement(double z) {
  if (std::isnan(z)) return z;
  if (std::isinf(z)) return z > 0 ? 0.0 : HUGE_VAL;
  if (z >= kContinuedFractionThreshold) return scaled_complement_cf(z);
  return std::exp(z * z) * std::erfc(z);
}

}  // namespace nomamec
