#pragma once

// Extended Fock space over L^2(grid): level-n symmetric kernels with the
// inner product
//   (f, g)_n = sum_{alpha |- n} K_alpha v^{|alpha|} sum_{x in atoms^{|alpha|}} (D_alpha f)(x) (D_alpha g)(x),
//   K_alpha  = n! / prod_i (alpha_i! i^alpha_i),
// weighted by n! across levels, and the Jacobi-field operators
//   a+ f   = phi (x)^ f
//   a0 f   = (phi(x_1) + ... + phi(x_n)) f
//   a1- f  = n v sum_x phi(x) f(x, .)
//   a2- f  = n(n-1) sym(phi(x_1) f(x_1, x_1, x_2, ...))
//   a_beta = a+ + beta a0 + a1- + a2-.
// Integrals become v-weighted sums; a2- is pointwise and carries no v.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swnlab/basespace.hpp"
#include "swnlab/jacobi.hpp"
#include "swnlab/multiset.hpp"
#include "swnlab/special.hpp"
#include "swnlab/swn.hpp"

namespace swnlab {

/// Integer partition of n in multiplicity form: alpha[i] counts parts of size i+1.
class DiagonalPattern {
 public:
  explicit DiagonalPattern(std::vector<unsigned> alpha) : alpha_(std::move(alpha)) {
    while (!alpha_.empty() && alpha_.back() == 0) alpha_.pop_back();
  }

  const std::vector<unsigned>& alpha() const noexcept { return alpha_; }
  unsigned operator[](std::size_t i) const { return i < alpha_.size() ? alpha_[i] : 0u; }

  std::size_t n() const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < alpha_.size(); ++i) s += (i + 1) * alpha_[i];
    return s;
  }
  /// |alpha|, the number of blocks.
  std::size_t size() const {
    std::size_t s = 0;
    for (auto a : alpha_) s += a;
    return s;
  }

  /// Block sizes in D_alpha order: alpha_1 ones, then alpha_2 twos, ...
  std::vector<std::size_t> blocks() const {
    std::vector<std::size_t> b;
    for (std::size_t i = 0; i < alpha_.size(); ++i)
      for (unsigned k = 0; k < alpha_[i]; ++k) b.push_back(i + 1);
    return b;
  }

  friend bool operator==(const DiagonalPattern&, const DiagonalPattern&) = default;

 private:
  std::vector<unsigned> alpha_;
};

/// All partitions of n, ordered by increasing largest part, then
/// reverse-lexicographically within a largest part.
inline std::vector<DiagonalPattern> partitions(std::size_t n) {
  if (n == 0) throw std::invalid_argument("partitions: n must be >= 1");
  std::vector<DiagonalPattern> out;
  std::vector<std::size_t> parts;  // non-increasing
  auto emit = [&] {
    std::vector<unsigned> alpha(n, 0);
    for (auto p : parts) ++alpha[p - 1];
    out.emplace_back(std::move(alpha));
  };
  // recurse on (remaining, bound) with the first part fixed by the outer loop
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t bound) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (std::size_t p = std::min(bound, remaining); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  for (std::size_t largest = 1; largest <= n; ++largest) {
    parts.assign(1, largest);
    rec(rec, n - largest, largest);
  }
  return out;
}

/// K_alpha = n!/prod(alpha_i! i^alpha_i), the number of permutations of
/// cycle type alpha. Exact for n <= 20.
inline std::uint64_t kappa(const DiagonalPattern& alpha) {
  const std::size_t n = alpha.n();
  if (n > 20) throw std::overflow_error("kappa: n > 20 overflows 64-bit factorials");
  std::uint64_t num = 1;
  for (std::uint64_t k = 2; k <= n; ++k) num *= k;
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < alpha.alpha().size(); ++i) {
    for (std::uint64_t k = 2; k <= alpha[i]; ++k) den *= k;
    for (unsigned k = 0; k < alpha[i]; ++k) den *= (i + 1);
  }
  if (num % den != 0) throw std::logic_error("kappa: non-integral result");
  return num / den;
}

/// Level-n symmetric function on grid atoms, stored by multisets of atom indices.
class SymmetricKernel {
 public:
  explicit SymmetricKernel(std::size_t level) : level_(level) {}

  std::size_t level() const noexcept { return level_; }

  void add(const Multiset& m, double c) {
    if (m.size() != level_) throw std::invalid_argument("SymmetricKernel: wrong number of arguments");
    data_.add(m, c);
  }

  /// Value at an ordered tuple of atoms.
  double operator()(std::span<const std::uint32_t> x) const {
    if (x.size() != level_) throw std::invalid_argument("SymmetricKernel: wrong number of arguments");
    Multiset m(x.begin(), x.end());
    std::sort(m.begin(), m.end());
    return data_.at(m);
  }
  double at(const Multiset& m) const { return data_.at(m); }
  const MultisetVector::Map& entries() const noexcept { return data_.entries(); }

 private:
  std::size_t level_;
  MultisetVector data_;
};

/// D_alpha f as a function of |alpha| atoms.
class DiagonalEmbedding {
 public:
  DiagonalEmbedding(DiagonalPattern alpha, SymmetricKernel f) : blocks_(alpha.blocks()), f_(std::move(f)) {
    if (alpha.n() != f_.level())
      throw std::domain_error("diag_embed: pattern has n=" + std::to_string(alpha.n()) + " but kernel level is " +
                              std::to_string(f_.level()));
  }

  std::size_t arity() const noexcept { return blocks_.size(); }

  double operator()(std::span<const std::uint32_t> x) const {
    if (x.size() != blocks_.size()) throw std::invalid_argument("DiagonalEmbedding: wrong number of arguments");
    Multiset m;
    m.reserve(f_.level());
    for (std::size_t b = 0; b < blocks_.size(); ++b) m.insert(m.end(), blocks_[b], x[b]);
    std::sort(m.begin(), m.end());
    return f_.at(m);
  }

 private:
  std::vector<std::size_t> blocks_;
  SymmetricKernel f_;
};

inline DiagonalEmbedding diag_embed(const DiagonalPattern& alpha, const SymmetricKernel& f) {
  return DiagonalEmbedding(alpha, f);
}

/// Level-n extended inner product on a grid, by direct summation over
/// patterns and atom tuples.
inline double ext_inner(const SymmetricKernel& f, const SymmetricKernel& g, const GridSpace& grid) {
  if (f.level() != g.level()) throw std::domain_error("ext_inner: kernels have different levels");
  const std::size_t n = f.level();
  if (n == 0) return f.at({}) * g.at({});
  if (f.entries().empty() || g.entries().empty()) return 0.0;
  const auto G = static_cast<std::uint32_t>(grid.size());
  double total = 0.0;
  for (const auto& alpha : partitions(n)) {
    const DiagonalEmbedding df(alpha, f), dg(alpha, g);
    const std::size_t arity = alpha.size();
    std::vector<std::uint32_t> x(arity, 0);
    double s = 0.0;
    for (;;) {
      s += df(x) * dg(x);
      std::size_t i = 0;
      while (i < arity && ++x[i] == G) x[i++] = 0;
      if (i == arity) break;
    }
    total += static_cast<double>(kappa(alpha)) * std::pow(grid.cell_mass(), static_cast<double>(arity)) * s;
  }
  return total;
}

/// Finite vector of the extended Fock space, levels 0..max_level.
class ExtFockVector {
 public:
  ExtFockVector(GridPtr grid, std::size_t max_level) : grid_(std::move(grid)), max_level_(max_level) {
    if (!grid_) throw std::invalid_argument("ExtFockVector: null grid");
  }

  static ExtFockVector vacuum(GridPtr grid, std::size_t max_level) {
    ExtFockVector v(std::move(grid), max_level);
    v.add({}, 1.0);
    return v;
  }

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t max_level() const noexcept { return max_level_; }
  const MultisetVector& data() const noexcept { return data_; }
  const MultisetVector::Map& entries() const noexcept { return data_.entries(); }
  double coefficient(const Multiset& m) const { return data_.at(m); }

  void add(const Multiset& m, double c) {
    if (m.size() > max_level_) throw std::out_of_range("ExtFockVector: level exceeds max level");
    for (auto a : m)
      if (a >= grid_->size()) throw std::out_of_range("ExtFockVector: atom index out of range");
    data_.add(m, c);
  }

  /// Level-n component as a kernel.
  SymmetricKernel component(std::size_t n) const {
    SymmetricKernel k(n);
    for (const auto& [m, c] : data_.entries())
      if (m.size() == n) k.add(m, c);
    return k;
  }

  template <class Pred>
  void prune(Pred pred) {
    data_.erase_if(pred);
  }

  ExtFockVector& operator+=(const ExtFockVector& o) {
    check(o);
    data_ += o.data_;
    return *this;
  }
  ExtFockVector& operator-=(const ExtFockVector& o) {
    check(o);
    data_.axpy(-1.0, o.data_);
    return *this;
  }
  ExtFockVector& axpy(double a, const ExtFockVector& o) {
    check(o);
    data_.axpy(a, o.data_);
    return *this;
  }
  ExtFockVector& operator*=(double a) {
    data_ *= a;
    return *this;
  }
  friend ExtFockVector operator+(ExtFockVector a, const ExtFockVector& b) { return a += b; }
  friend ExtFockVector operator-(ExtFockVector a, const ExtFockVector& b) { return a -= b; }
  friend ExtFockVector operator*(double s, ExtFockVector a) { return a *= s; }

 private:
  void check(const ExtFockVector& o) const {
    if (!same_space(grid_, o.grid_) || max_level_ != o.max_level_)
      throw std::domain_error("ExtFockVector: space mismatch");
  }

  GridPtr grid_;
  std::size_t max_level_;
  MultisetVector data_;
};

/// sum_n n! (F_n, G_n)_n.
inline double ext_fock_inner(const ExtFockVector& F, const ExtFockVector& G) {
  if (!same_space(F.grid(), G.grid())) throw std::domain_error("ext_fock_inner: grid mismatch");
  const std::size_t top = std::min(F.data().max_level(), G.data().max_level());
  double s = 0.0;
  for (std::size_t n = 0; n <= top; ++n)
    s += factorial(n) * ext_inner(F.component(n), G.component(n), *F.grid());
  return s;
}

enum class AKind { Plus, Zero, Minus1, Minus2, Minus, Beta };

namespace detail {
inline void a_plus(const GridFunction& phi, const ExtFockVector& F, double scale, ExtFockVector& out) {
  for (const auto& [m, c] : F.entries()) {
    const std::size_t n = m.size();
    if (n + 1 > F.max_level()) continue;
    for (std::uint32_t a = 0; a < phi.size(); ++a) {
      if (phi[a] == 0.0) continue;
      Multiset t = with_added(m, a);
      const double k = static_cast<double>(multiplicity(t, a));
      out.add(t, scale * k / static_cast<double>(n + 1) * phi[a] * c);
    }
  }
}

inline void a_zero(const GridFunction& phi, const ExtFockVector& F, double scale, ExtFockVector& out) {
  for (const auto& [m, c] : F.entries()) {
    double s = 0.0;
    for (auto a : m) s += phi[a];
    out.add(m, scale * s * c);
  }
}

inline void a_minus1(const GridFunction& phi, const ExtFockVector& F, double scale, ExtFockVector& out) {
  const double v = phi.space()->cell_mass();
  for (const auto& [m, c] : F.entries()) {
    const auto n = static_cast<double>(m.size());
    for (auto [a, count] : distinct(m)) {
      if (phi[a] == 0.0) continue;
      out.add(with_removed(m, a), scale * n * v * phi[a] * c);
    }
  }
}

inline void a_minus2(const GridFunction& phi, const ExtFockVector& F, double scale, ExtFockVector& out) {
  for (const auto& [m, c] : F.entries()) {
    const auto n = static_cast<double>(m.size());
    for (auto [a, count] : distinct(m)) {
      if (count < 2 || phi[a] == 0.0) continue;
      out.add(with_removed(m, a), scale * n * static_cast<double>(count - 1) * phi[a] * c);
    }
  }
}
}  // namespace detail

inline ExtFockVector apply_a(AKind kind, const GridFunction& phi, const ExtFockVector& F, double beta = 0.0) {
  if (!same_space(phi.space(), F.grid())) throw std::domain_error("apply_a: phi lives on a different grid");
  ExtFockVector out(F.grid(), F.max_level());
  switch (kind) {
    case AKind::Plus: detail::a_plus(phi, F, 1.0, out); break;
    case AKind::Zero: detail::a_zero(phi, F, 1.0, out); break;
    case AKind::Minus1: detail::a_minus1(phi, F, 1.0, out); break;
    case AKind::Minus2: detail::a_minus2(phi, F, 1.0, out); break;
    case AKind::Minus:
      detail::a_minus1(phi, F, 1.0, out);
      detail::a_minus2(phi, F, 1.0, out);
      break;
    case AKind::Beta:
      detail::a_plus(phi, F, 1.0, out);
      if (beta != 0.0) detail::a_zero(phi, F, beta, out);
      detail::a_minus1(phi, F, 1.0, out);
      detail::a_minus2(phi, F, 1.0, out);
      break;
  }
  return out;
}

/// <Omega, a_beta(phi)^k Omega> in the n!-weighted extended space. Needs
/// max_level >= k; components above the remaining step count are dropped.
inline double ext_vacuum_moment(double beta, const GridFunction& phi, int k, std::size_t max_level) {
  if (k < 0) throw std::invalid_argument("ext_vacuum_moment: k must be >= 0");
  if (max_level < static_cast<std::size_t>(k))
    throw std::invalid_argument("ext_vacuum_moment: k=" + std::to_string(k) + " needs max level >= " +
                                std::to_string(k) + " (got " + std::to_string(max_level) + ")");
  ExtFockVector F = ExtFockVector::vacuum(phi.space(), max_level);
  for (int step = 1; step <= k; ++step) {
    F = apply_a(AKind::Beta, phi, F, beta);
    const auto remaining = static_cast<std::size_t>(k - step);
    F.prune([&](const Multiset& m) { return m.size() > remaining; });
  }
  return F.coefficient({});
}

inline double ext_vacuum_moment(double beta, const GridFunction& phi, int k) {
  return ext_vacuum_moment(beta, phi, k, static_cast<std::size_t>(std::max(k, 0)));
}

/// Representation adapter: B+, N, B act as 2a+, 2a0, 2a-.
struct ExtRepresentation {
  GridPtr grid;
  std::size_t max_level;

  using Vector = ExtFockVector;

  Vector apply(SwnKind kind, const GridFunction& phi, const Vector& F) const {
    switch (kind) {
      case SwnKind::Bdag: return 2.0 * apply_a(AKind::Plus, phi, F);
      case SwnKind::N: return 2.0 * apply_a(AKind::Zero, phi, F);
      case SwnKind::B: return 2.0 * apply_a(AKind::Minus, phi, F);
      case SwnKind::X: break;
    }
    throw std::invalid_argument("ExtRepresentation: X needs beta; use apply_a(AKind::Beta, ...)");
  }
  double inner(const Vector& F, const Vector& G) const { return ext_fock_inner(F, G); }
  Vector identity_times(double c, const Vector& F) const { return c * F; }
  Vector zero() const { return ExtFockVector(grid, max_level); }
  bool in_safe_window(const Vector& F) const { return F.data().max_level() + 2 <= max_level; }
};

inline ExtFockVector random_ext_vector(GridPtr grid, std::size_t max_level, std::uint64_t seed,
                                       std::size_t entries = 10) {
  if (max_level < 2) throw std::invalid_argument("random_ext_vector: max level must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> level(0, max_level - 2);
  std::uniform_int_distribution<std::uint32_t> atom(0, static_cast<std::uint32_t>(grid->size() - 1));
  ExtFockVector F(grid, max_level);
  for (std::size_t e = 0; e < entries; ++e) {
    Multiset m;
    const std::size_t n = level(rng);
    for (std::size_t i = 0; i < n; ++i) m = with_added(m, atom(rng));
    F.add(m, coef(rng));
  }
  return F;
}

/// Jacobi matrix of a_beta(1) at a single atom of mass v, read off from the
/// operator action on the unit kernels e_n = 1 at level n and normalized by
/// the level norms. Expected: diagonal beta*n, off-diagonal sqrt((n+1)(v+n)).
inline JacobiMatrix single_atom_jacobi(double beta, double v, std::size_t M) {
  if (M == 0) throw std::invalid_argument("single_atom_jacobi: M must be >= 1");
  const GridPtr grid = GridSpace::make(1, v);
  const auto one = GridFunction::constant(grid, 1.0);
  std::vector<double> norm_sq(M + 1);
  auto unit = [&](std::size_t n) {
    ExtFockVector e(grid, M + 1);
    e.add(Multiset(n, 0u), 1.0);
    return e;
  };
  for (std::size_t n = 0; n <= M; ++n) {
    const auto e = unit(n);
    norm_sq[n] = ext_fock_inner(e, e);
  }
  std::vector<double> diag(M), off(M - 1);
  for (std::size_t n = 0; n < M; ++n) {
    const auto image = apply_a(AKind::Beta, one, unit(n), beta);
    diag[n] = image.coefficient(Multiset(n, 0u));
    if (n + 1 < M) off[n] = image.coefficient(Multiset(n + 1, 0u)) * std::sqrt(norm_sq[n + 1] / norm_sq[n]);
  }
  return JacobiMatrix(std::move(diag), std::move(off));
}

}  // namespace swnlab
