#pragma once

// Ladder operators on l2 and the Meixner-class Jacobi matrix
//   J_beta = J+ + beta J0 + J-,  J+ e_n = sqrt(n(n+1)) e_{n+1},  J0 e_n = n e_n,
// together with its monic orthogonal polynomials.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace swnlab {

/// Symmetric tridiagonal matrix; index 0 corresponds to e_1.
class JacobiMatrix {
 public:
  JacobiMatrix(std::vector<double> diagonal, std::vector<double> off_diagonal)
      : diag_(std::move(diagonal)), off_(std::move(off_diagonal)) {
    if (diag_.empty()) throw std::invalid_argument("JacobiMatrix: empty");
    if (off_.size() + 1 != diag_.size())
      throw std::invalid_argument("JacobiMatrix: off-diagonal must have size M-1");
    for (double b : off_)
      if (b < 0.0) throw std::invalid_argument("JacobiMatrix: negative off-diagonal entry");
  }

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diagonal() const noexcept { return diag_; }
  std::span<const double> off_diagonal() const noexcept { return off_; }

  double at(std::size_t i, std::size_t j) const {
    if (i == j) return diag_.at(i);
    if (i + 1 == j) return off_.at(i);
    if (j + 1 == i) return off_.at(j);
    return 0.0;
  }

  std::vector<double> apply(std::span<const double> x) const {
    if (x.size() != size()) throw std::domain_error("JacobiMatrix: dimension mismatch");
    std::vector<double> y(size());
    for (std::size_t i = 0; i < size(); ++i) {
      double s = diag_[i] * x[i];
      if (i > 0) s += off_[i - 1] * x[i - 1];
      if (i + 1 < size()) s += off_[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }

  /// (J^j)_{11}. Exact for the infinite matrix while 2*(M-1) >= j.
  double moment(int j) const {
    std::vector<double> x(size(), 0.0);
    x[0] = 1.0;
    const int half = j / 2;
    for (int k = 0; k < half; ++k) x = apply(x);
    if (j % 2 == 0) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    }
    const auto y = apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += x[i] * y[i];
    return s;
  }

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
};

/// J_beta truncated to e_1..e_M: diagonal beta*n, off-diagonal sqrt(n(n+1)).
inline JacobiMatrix jacobi_beta(double beta, std::size_t M) {
  if (beta < 0.0) throw std::domain_error("jacobi_beta: beta must be >= 0");
  if (M == 0) throw std::invalid_argument("jacobi_beta: M must be >= 1");
  std::vector<double> d(M), b(M - 1);
  for (std::size_t n = 1; n <= M; ++n) d[n - 1] = beta * static_cast<double>(n);
  for (std::size_t n = 1; n < M; ++n) b[n - 1] = std::sqrt(static_cast<double>(n * (n + 1)));
  return JacobiMatrix(std::move(d), std::move(b));
}

/// Integral of s^j against the spectral measure of J_beta at e_1.
inline double spectral_moment(double beta, int j) {
  if (j < 0) throw std::invalid_argument("spectral_moment: j must be >= 0");
  return jacobi_beta(beta, static_cast<std::size_t>(j) + 1).moment(j);
}

using Polynomial = std::vector<double>;  // ascending coefficients

inline double evaluate(const Polynomial& p, double s) {
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * s + *it;
  return r;
}

inline Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// Monic orthogonal polynomials of nu~_beta:
///   s P_n = P_{n+1} + beta (n+1) P_n + n(n+1) P_{n-1},  P_{-1} = 0, P_0 = 1.
class PolynomialSequence {
 public:
  PolynomialSequence(double beta, std::size_t n_max) : beta_(beta) {
    if (beta < 0.0) throw std::domain_error("polynomial_sequence: beta must be >= 0");
    polys_.push_back({1.0});
    for (std::size_t n = 0; n < n_max; ++n) {
      const Polynomial& cur = polys_[n];
      Polynomial next(cur.size() + 1, 0.0);
      for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
      const double a = beta * static_cast<double>(n + 1);
      for (std::size_t i = 0; i < cur.size(); ++i) next[i] -= a * cur[i];
      if (n > 0) {
        const double b = static_cast<double>(n * (n + 1));
        const Polynomial& prev = polys_[n - 1];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= b * prev[i];
      }
      polys_.push_back(std::move(next));
    }
  }

  double beta() const noexcept { return beta_; }
  std::size_t n_max() const noexcept { return polys_.size() - 1; }
  const Polynomial& operator[](std::size_t n) const { return polys_.at(n); }
  double operator()(std::size_t n, double s) const { return evaluate(polys_.at(n), s); }

  /// P_{beta,n}(s) = s * P~_{beta,n-1}(s), n >= 1.
  Polynomial shifted(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("PolynomialSequence::shifted: n must be >= 1");
    return multiply({0.0, 1.0}, polys_.at(n - 1));
  }

  /// Squared norm of P~_n under nu~_beta: prod_{k=1..n} k(k+1) = n!(n+1)!.
  static double norm_sq(std::size_t n) {
    double r = 1.0;
    for (std::size_t k = 1; k <= n; ++k) r *= static_cast<double>(k * (k + 1));
    return r;
  }

 private:
  double beta_;
  std::vector<Polynomial> polys_;
};

inline PolynomialSequence polynomial_sequence(double beta, std::size_t n_max) {
  return PolynomialSequence(beta, n_max);
}

}  // namespace swnlab
