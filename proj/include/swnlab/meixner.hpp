#pragma once

// Meixner-class laws: the spectral measure nu~_beta of J_beta, the Levy
// measure nu_beta = s^-2 nu~_beta, the one-dimensional marginals mu_{beta,D}
// of the noise, and the cumulant/moment bookkeeping for <., phi>.
//
//   0 <= beta < 2   Meixner   (densities built on |Gamma(x + i y)|^2)
//   beta == 2       Gamma
//   beta > 2        Pascal    (atoms at sqrt(beta^2-4) k)
//
// The Meixner densities carry the tilt exp(+2 s a / r), r = sqrt(4 - beta^2),
// a = arctan(beta / r); this is the orientation with mean beta for nu~ and
// mean 0 for the marginal.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swnlab/basespace.hpp"
#include "swnlab/jacobi.hpp"
#include "swnlab/multiset.hpp"
#include "swnlab/quadrature.hpp"
#include "swnlab/special.hpp"

namespace swnlab {

enum class Regime { Meixner, Gamma, Pascal };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Meixner: return "meixner";
    case Regime::Gamma: return "gamma";
    case Regime::Pascal: return "pascal";
  }
  return "?";
}

enum class LevyKind { NuTilde, Nu };

struct LevyMeasureSpec {
  double beta = 0.0;
  Regime regime = Regime::Meixner;
  double root = 2.0;  // sqrt(|4 - beta^2|)
  double p = 0.0;     // Pascal only

  static LevyMeasureSpec make(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
      throw std::domain_error("LevyMeasureSpec: beta must be finite and >= 0");
    LevyMeasureSpec s;
    s.beta = beta;
    s.root = std::sqrt(std::abs(4.0 - beta * beta));
    if (beta < 2.0) {
      s.regime = Regime::Meixner;
    } else if (beta == 2.0) {
      s.regime = Regime::Gamma;
    } else {
      s.regime = Regime::Pascal;
      s.p = (beta - s.root) / (beta + s.root);
    }
    return s;
  }

  /// arctan(beta / r) / r, the Meixner tilt rate (per unit of 2s).
  double tilt() const { return std::atan(beta / root) / root; }
};

struct Atom {
  double support;
  double mass;
};

/// Density of nu~ or nu at s (Meixner, Gamma).
inline double levy_density(const LevyMeasureSpec& spec, LevyKind which, double s) {
  if (spec.regime == Regime::Pascal)
    throw std::domain_error("levy_density: Pascal measure is atomic; use levy_atom(spec, kind, k)");
  if (which == LevyKind::Nu && s == 0.0)
    throw std::domain_error("levy_density: nu = s^-2 nu~ is not defined at s = 0");
  double tilde = 0.0;
  if (spec.regime == Regime::Gamma) {
    if (s <= 0.0) {
      if (which == LevyKind::Nu) throw std::domain_error("levy_density: gamma nu requires s > 0");
      return 0.0;
    }
    tilde = std::exp(-s) * s;
  } else {
    const double r = spec.root;
    tilde = r / (2.0 * std::numbers::pi) * abs_gamma_one_plus_iy_sq(s / r) *
            std::exp(2.0 * s * spec.tilt());
  }
  return which == LevyKind::NuTilde ? tilde : tilde / (s * s);
}

/// Atom k >= 1 of the Pascal measure nu~ (mass (beta^2-4) p^k k) or nu.
inline Atom levy_atom(const LevyMeasureSpec& spec, LevyKind which, int k) {
  if (spec.regime != Regime::Pascal) throw std::domain_error("levy_atom: only the Pascal measure is atomic");
  if (k < 1) throw std::domain_error("levy_atom: support index k must be >= 1");
  const double s = spec.root * k;
  const double mass = (spec.beta * spec.beta - 4.0) * std::pow(spec.p, k) * k;
  return {s, which == LevyKind::NuTilde ? mass : mass / (s * s)};
}

namespace detail {
// Sums term(k) for k >= k0 until the geometric tail bound drops below
// 1e-12 of the running sum. Terms must eventually have decreasing ratios.
template <class Term>
double geometric_series(Term term, int k0) {
  double sum = 0.0, abs_sum = 0.0;
  double prev = term(k0);
  sum += prev;
  abs_sum += std::abs(prev);
  for (int k = k0 + 1; k < 100000; ++k) {
    const double t = term(k);
    sum += t;
    abs_sum += std::abs(t);
    if (prev != 0.0) {
      const double ratio = std::abs(t / prev);
      if (ratio < 1.0 && std::abs(t) * ratio / (1.0 - ratio) < 1e-12 * abs_sum) return sum;
    } else if (t == 0.0 && abs_sum == 0.0 && k > k0 + 64) {
      return 0.0;
    }
    prev = t;
  }
  throw QuadratureError("geometric_series: no convergence");
}
}  // namespace detail

/// Integral of s^j against nu~_beta by the regime's own route: closed form
/// (j+1)! for Gamma, atom series for Pascal, quadrature for Meixner.
inline double levy_reference_moment(const LevyMeasureSpec& spec, int j) {
  switch (spec.regime) {
    case Regime::Gamma: return factorial(static_cast<std::size_t>(j) + 1);
    case Regime::Pascal:
      return detail::geometric_series(
          [&](int k) {
            const Atom a = levy_atom(spec, LevyKind::NuTilde, k);
            return a.mass * std::pow(a.support, j);
          },
          1);
    case Regime::Meixner:
      return integrate_line([&](double s) { return std::pow(s, j) * levy_density(spec, LevyKind::NuTilde, s); });
  }
  return 0.0;
}

/// Distribution of <., chi_D> under the noise, |D| = area.
class MarginalLaw {
 public:
  MarginalLaw(double beta, double area) : spec_(LevyMeasureSpec::make(beta)), area_(area) {
    if (!(area > 0.0) || !std::isfinite(area)) throw std::domain_error("marginal_law: area must be > 0");
    if (spec_.regime == Regime::Meixner) {
      const double r = spec_.root;
      log_norm_ = (area - 1.0) / 2.0 * std::log(r * r) - std::log(2.0 * std::numbers::pi) - std::lgamma(area);
    } else if (spec_.regime == Regime::Gamma) {
      log_norm_ = -std::lgamma(area);
    } else {
      log_norm_ = area * std::log1p(-spec_.p);
    }
  }

  const LevyMeasureSpec& spec() const noexcept { return spec_; }
  Regime regime() const noexcept { return spec_.regime; }
  double area() const noexcept { return area_; }
  bool atomic() const noexcept { return spec_.regime == Regime::Pascal; }

  /// Density at s (Meixner, Gamma). Gamma is zero for s + |D| < 0.
  double density(double s) const {
    if (atomic()) throw std::domain_error("MarginalLaw::density: Pascal law is atomic; use atom(k)");
    if (spec_.regime == Regime::Gamma) return gamma_density_shifted(s + area_);
    const double r = spec_.root;
    const double y = (s + spec_.beta * area_ / 2.0) / r;
    const double lg = log_gamma({area_ / 2.0, y}).real();
    return std::exp(log_norm_ + 2.0 * lg + (2.0 * s + spec_.beta * area_) * spec_.tilt());
  }

  /// Atom k >= 0 of the negative binomial law.
  Atom atom(int k) const {
    if (!atomic()) throw std::domain_error("MarginalLaw::atom: law is absolutely continuous");
    if (k < 0) throw std::domain_error("MarginalLaw::atom: k must be >= 0");
    const double r = spec_.root;
    const double support = r * k - 2.0 * area_ / (spec_.beta + r);
    // (|D|)_k / k! p^k, accumulated in logs
    double log_mass = log_norm_ + k * std::log(spec_.p);
    log_mass += std::lgamma(area_ + k) - std::lgamma(area_) - std::lgamma(k + 1.0);
    return {support, std::exp(log_mass)};
  }

  /// Atoms k = 0..K.
  std::vector<Atom> atoms(int K) const {
    std::vector<Atom> out;
    for (int k = 0; k <= K; ++k) out.push_back(atom(k));
    return out;
  }

  /// Integral of s^j dmu by quadrature (Meixner, Gamma) or series (Pascal).
  double moment(int j) const {
    switch (spec_.regime) {
      case Regime::Pascal:
        return detail::geometric_series(
            [&](int k) {
              const Atom a = atom(k);
              return a.mass * (j == 0 ? 1.0 : std::pow(a.support, j));
            },
            0);
      case Regime::Gamma:
        // in t = s + |D| so that tanh-sinh abscissae near the singular
        // endpoint keep full relative precision
        return integrate_right([&](double t) { return std::pow(t - area_, j) * gamma_density_shifted(t); }, 0.0);
      case Regime::Meixner: {
        const double centre = -spec_.beta * area_ / 2.0;
        return integrate_line([&](double s) { return std::pow(s, j) * density(s); }, centre);
      }
    }
    return 0.0;
  }

 private:
  // Gamma density as a function of t = s + |D|.
  // At t = 0 the right limit is used: 0 for |D| > 1, 1 for |D| = 1, and
  // +inf for |D| < 1 (an integrable singularity).
  double gamma_density_shifted(double t) const {
    if (t < 0.0) return 0.0;
    if (t == 0.0) return area_ > 1.0 ? 0.0 : (area_ == 1.0 ? std::exp(log_norm_) : INFINITY);
    return std::exp(log_norm_ + (area_ - 1.0) * std::log(t) - t);
  }

  LevyMeasureSpec spec_;
  double area_;
  double log_norm_ = 0.0;
};

inline MarginalLaw marginal_law(double beta, double area) { return MarginalLaw(beta, area); }

/// j-th cumulant of <., phi> under mu_beta: 0 for j = 1, otherwise
/// (integral of s^{j-2} nu~_beta) * v * sum phi^j.
inline double cumulant(double beta, const GridFunction& phi, int j) {
  if (j < 1) throw std::invalid_argument("cumulant: j must be >= 1");
  if (j == 1) return 0.0;
  return spectral_moment(beta, j - 2) * power_integral(phi, j);
}

inline std::vector<double> cumulants(double beta, const GridFunction& phi, int k) {
  std::vector<double> out;
  for (int j = 1; j <= k; ++j) out.push_back(cumulant(beta, phi, j));
  return out;
}

/// m_k = sum over set partitions of {1..k} of prod kappa_{|block|};
/// kappas[i] holds kappa_{i+1}. Grouped by the block containing 1:
///   m_n = sum_i C(n-1, i-1) kappa_i m_{n-i}.
inline double moments_from_cumulants(std::span<const double> kappas, int k) {
  if (k < 0) throw std::invalid_argument("moments_from_cumulants: k must be >= 0");
  if (static_cast<int>(kappas.size()) < k)
    throw std::invalid_argument("moments_from_cumulants: need cumulants of orders 1.." + std::to_string(k));
  std::vector<double> m(static_cast<std::size_t>(k) + 1, 0.0);
  m[0] = 1.0;
  for (int n = 1; n <= k; ++n) {
    double s = 0.0;
    double binom = 1.0;  // C(n-1, i-1)
    for (int i = 1; i <= n; ++i) {
      s += binom * kappas[i - 1] * m[n - i];
      binom = binom * (n - i) / i;
    }
    m[n] = s;
  }
  return m[k];
}

/// Gram matrix <s P~_{m-1}, s P~_{n-1}>_{nu_beta}, m, n = 1..n_max, computed
/// against nu_beta itself (closed-form moments for Gamma, atom series for
/// Pascal, quadrature for Meixner). Expected: diag (n-1)! n!, zero elsewhere.
inline std::vector<std::vector<double>> gram_check_I3(double beta, std::size_t n_max) {
  if (n_max == 0 || n_max > 8) throw std::invalid_argument("gram_check_I3: n_max must be in 1..8");
  const auto spec = LevyMeasureSpec::make(beta);
  const PolynomialSequence seq(beta, n_max);
  std::vector<std::vector<double>> gram(n_max, std::vector<double>(n_max, 0.0));
  for (std::size_t m = 1; m <= n_max; ++m) {
    for (std::size_t n = m; n <= n_max; ++n) {
      const Polynomial prod = multiply(seq.shifted(m), seq.shifted(n));
      double value = 0.0;
      switch (spec.regime) {
        case Regime::Gamma:
          // nu_2(ds) = e^{-s} s^{-1} ds on s > 0: integral of s^i is (i-1)! for i >= 1
          for (std::size_t i = 1; i < prod.size(); ++i) value += prod[i] * factorial(i - 1);
          break;
        case Regime::Pascal:
          value = detail::geometric_series(
              [&](int k) {
                const Atom a = levy_atom(spec, LevyKind::Nu, k);
                return a.mass * evaluate(prod, a.support);
              },
              1);
          break;
        case Regime::Meixner: {
          // prod = s^2 q(s) exactly; q nu~ is the same integrand without the
          // removable 0/0 that tanh-sinh abscissae near s = 0 would hit.
          const Polynomial q(prod.begin() + 2, prod.end());
          value = integrate_line([&](double s) { return evaluate(q, s) * levy_density(spec, LevyKind::NuTilde, s); });
          break;
        }
      }
      gram[m - 1][n - 1] = gram[n - 1][m - 1] = value;
    }
  }
  return gram;
}

}  // namespace swnlab
