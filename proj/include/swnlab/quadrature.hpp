#pragma once

// Quadrature used as an independent route to moments of the continuous
// laws. Integration runs over finite windows whose ends are pushed out
// until the integrand drops below 1e-12 of the largest value seen.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace swnlab {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double tail_ratio = 1e-12;
  double tolerance = 1e-14;
  double max_relative_error = 1e-9;  // estimated error / L1 norm beyond which we fail
  double step = 1.0;
  double limit = 1e4;
  int confirm = 4;
};

/// First point origin + k*step*dir (k = 1, 2, ...) from which |f| stays below
/// tail_ratio times the running peak for `confirm` consecutive steps. The
/// confirmation guards against stopping at an isolated zero of a polynomial
/// factor in the integrand.
inline double find_cutoff(const std::function<double(double)>& f, double origin, double dir,
                          const QuadratureOptions& opt = {}) {
  double peak = 0.0;
  int quiet = 0;
  double first_quiet = origin;
  for (double d = opt.step; d <= opt.limit; d += opt.step) {
    const double x = origin + dir * d;
    const double v = std::abs(f(x));
    if (!std::isfinite(v)) throw QuadratureError("find_cutoff: non-finite integrand at " + std::to_string(x));
    peak = std::max(peak, v);
    if (peak > 0.0 && v < opt.tail_ratio * peak) {
      if (quiet++ == 0) first_quiet = x;
      if (quiet >= opt.confirm) return first_quiet;
    } else {
      quiet = 0;
    }
  }
  throw QuadratureError("find_cutoff: integrand tail does not decay within the search limit");
}

/// Integral over [a, b]; integrable endpoint singularities are fine.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  boost::math::quadrature::tanh_sinh<double> engine;
  double error = 0.0, l1 = 0.0;
  const double value = engine.integrate(f, a, b, opt.tolerance, &error, &l1);
  if (!std::isfinite(value) || error > opt.max_relative_error * std::max(l1, 1e-300))
    throw QuadratureError("integrate: no convergence on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "], error estimate " + std::to_string(error));
  return value;
}

/// Integral over the real line, split at `split` (the integrand is never sampled there).
inline double integrate_line(const std::function<double(double)>& f, double split = 0.0,
                             const QuadratureOptions& opt = {}) {
  const double lo = find_cutoff(f, split, -1.0, opt);
  const double hi = find_cutoff(f, split, +1.0, opt);
  return integrate(f, lo, split, opt) + integrate(f, split, hi, opt);
}

/// Integral over (a, infinity).
inline double integrate_right(const std::function<double(double)>& f, double a,
                              const QuadratureOptions& opt = {}) {
  const double hi = find_cutoff(f, a, +1.0, opt);
  return integrate(f, a, hi, opt);
}

}  // namespace swnlab
