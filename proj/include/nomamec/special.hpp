#pragma once

namespace nomamec {

/// Probability integral Phi(x) = (2/sqrt(pi)) * integral_0^x exp(-t^2) dt.
double prob_integral(double x);

/// Scaled complement exp(z^2) * (1 - Phi(z)).
///
/// Direct evaluation for small |z|; a continued fraction for z >= 3 where
/// exp(z^2) would otherwise be multiplied by an underflowing erfc. Lies in
/// (0, 1] and decreases monotonically for z >= 0. May overflow to +inf for
/// z below about -26.
double scaled_complement(double z);

}  // namespace nomamec
