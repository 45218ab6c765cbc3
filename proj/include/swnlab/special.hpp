#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace swnlab {

// Lanczos approximation, g = 7, 9 terms. Relative error of Gamma is around
// 1e-15 for Re z >= 1/2; smaller real parts are shifted up by recurrence.
inline std::complex<double> log_gamma(std::complex<double> z) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;

  std::complex<double> shift = 0.0;
  while (z.real() < 1.5) {
    shift -= std::log(z);
    z += 1.0;
  }
  z -= 1.0;
  std::complex<double> x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + g + 0.5;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return shift + half_log_2pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// |Gamma(x + i y)|^2 for x > 0.
inline double abs_gamma_sq(double x, double y) {
  return std::exp(2.0 * log_gamma({x, y}).real());
}

/// |Gamma(1 + i y)|^2 = pi y / sinh(pi y), written to stay finite for large |y|.
inline double abs_gamma_one_plus_iy_sq(double y) {
  const double a = std::numbers::pi * std::abs(y);
  if (a < 1e-8) return 1.0 - a * a / 6.0;
  const double e = std::exp(-2.0 * a);
  return 2.0 * a * std::exp(-a) / (1.0 - e);
}

/// Rising factorial (v)_n = v (v+1) ... (v+n-1).
inline double rising_factorial(double v, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= v + k;
  return r;
}

}  // namespace swnlab
