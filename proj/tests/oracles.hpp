#pragma once

// Reference computations used only by tests. Nothing here calls into the
// library's closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

// Joint density of the m-th and n-th smallest of M unit exponentials,
// written from the general order-statistic formula.
inline double joint_pdf(int M, int m, int n, double x, double y) {
  if (x < 0.0 || y < x) return 0.0;
  const double log_norm = std::lgamma(M + 1.0) - std::lgamma(m) - std::lgamma(n - m) -
                          std::lgamma(M - n + 1.0);
  const double Fx = -std::expm1(-x);
  const double between = std::exp(-x) - std::exp(-y);
  return std::exp(log_norm - x - y) * std::pow(Fx, m - 1) * std::pow(between, n - m - 1) *
         std::pow(std::exp(-y), M - n);
}

template <typename F>
double integrate(F f, double a, double b, double tol = 1e-11) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol);
}

// P(lower(x) <= Y <= upper(x)) restricted to x in [x_lo, x_hi], with
// the ordering y >= x applied. `breaks` splits the outer range where the
// limits have kinks.
inline double region_probability(int M, int m, int n, const std::function<double(double)>& lower,
                                 const std::function<double(double)>& upper, double x_lo,
                                 double x_hi, std::vector<double> breaks = {}) {
  auto inner = [&](double x) {
    const double lo = std::max(x, lower(x));
    const double hi = std::min(upper(x), lo + 60.0);
    return integrate([&](double y) { return joint_pdf(M, m, n, x, y); }, lo, hi);
  };
  breaks.push_back(x_lo);
  breaks.push_back(x_hi);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::clamp(breaks[i], x_lo, x_hi);
    const double b = std::clamp(breaks[i + 1], x_lo, x_hi);
    total += integrate(inner, a, b, 1e-10);
  }
  return total;
}

inline double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace oracle
