#pragma once

// Truncated symmetric Fock space over R^D (orthonormal one-particle basis).
//
// A level-n component f^(n) is stored by its kernel values f(i_1..i_n) on
// multisets of mode indices. Norms carry the n! weight of the symmetric
// Fock space together with the number of ordered tuples per multiset:
//   <F,G> = sum_n n! sum_{tuples} f g = sum_m f(m) g(m) n! * n!/prod m_i!.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "swnlab/multiset.hpp"

namespace swnlab {

struct FockSpace {
  std::size_t modes = 1;      // D
  std::size_t max_level = 0;  // N
  friend bool operator==(const FockSpace&, const FockSpace&) = default;
};

class FockVector {
 public:
  explicit FockVector(FockSpace space) : space_(space) {
    if (space_.modes == 0) throw std::invalid_argument("FockSpace: zero modes");
  }

  const FockSpace& space() const noexcept { return space_; }
  const MultisetVector& data() const noexcept { return data_; }
  const MultisetVector::Map& entries() const noexcept { return data_.entries(); }
  double coefficient(const Multiset& m) const { return data_.at(m); }
  std::size_t max_level() const { return data_.max_level(); }

  void add(const Multiset& m, double c) {
    if (m.size() > space_.max_level)
      throw std::out_of_range("FockVector: level " + std::to_string(m.size()) + " exceeds N=" +
                              std::to_string(space_.max_level));
    for (auto i : m)
      if (i >= space_.modes) throw std::out_of_range("FockVector: mode index out of range");
    data_.add(m, c);
  }

  /// Drops entries for which pred(multiset) holds.
  template <class Pred>
  void prune(Pred pred) {
    data_.erase_if(pred);
  }

  FockVector& operator+=(const FockVector& o) {
    check(o);
    data_ += o.data_;
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    check(o);
    data_.axpy(-1.0, o.data_);
    return *this;
  }
  FockVector& axpy(double a, const FockVector& o) {
    check(o);
    data_.axpy(a, o.data_);
    return *this;
  }
  FockVector& operator*=(double a) {
    data_ *= a;
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(double s, FockVector a) { return a *= s; }

 private:
  void check(const FockVector& o) const {
    if (!(o.space_ == space_)) throw std::domain_error("FockVector: space mismatch");
  }

  FockSpace space_;
  MultisetVector data_;
};

/// Sparse D x D real matrix stored by columns.
class OneParticleOperator {
 public:
  struct Entry {
    std::uint32_t row;
    double value;
  };

  explicit OneParticleOperator(std::size_t dim) : columns_(dim) {}

  static OneParticleOperator identity(std::size_t dim) {
    OneParticleOperator h(dim);
    for (std::size_t i = 0; i < dim; ++i) h.set(i, i, 1.0);
    return h;
  }

  static OneParticleOperator dense(const std::vector<std::vector<double>>& rows) {
    OneParticleOperator h(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("OneParticleOperator: not square");
      for (std::size_t j = 0; j < rows.size(); ++j) h.set(i, j, rows[i][j]);
    }
    return h;
  }

  std::size_t dim() const noexcept { return columns_.size(); }

  /// Overwrites entry (row, col); zero values are not stored.
  void set(std::size_t row, std::size_t col, double value) {
    if (row >= dim() || col >= dim()) throw std::out_of_range("OneParticleOperator: index");
    auto& column = columns_[col];
    std::erase_if(column, [&](const Entry& e) { return e.row == row; });
    if (value != 0.0) column.push_back({static_cast<std::uint32_t>(row), value});
    std::sort(column.begin(), column.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }

  double at(std::size_t row, std::size_t col) const {
    for (const auto& e : columns_.at(col))
      if (e.row == row) return e.value;
    return 0.0;
  }

  std::span<const Entry> column(std::size_t col) const { return columns_[col]; }

  std::vector<double> apply(std::span<const double> x) const {
    if (x.size() != dim()) throw std::domain_error("OneParticleOperator: dimension mismatch");
    std::vector<double> y(dim(), 0.0);
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& e : columns_[j]) y[e.row] += e.value * x[j];
    return y;
  }

 private:
  std::vector<std::vector<Entry>> columns_;
};

inline FockVector vacuum(std::size_t modes, std::size_t max_level) {
  FockVector v(FockSpace{modes, max_level});
  v.add({}, 1.0);
  return v;
}

namespace detail {
inline void require_dim(std::size_t got, const FockSpace& s, const char* what) {
  if (got != s.modes)
    throw std::domain_error(std::string(what) + ": one-particle dimension " + std::to_string(got) +
                            " does not match D=" + std::to_string(s.modes));
}
}  // namespace detail

/// Symmetric tensor product g (x) F. Components pushed above level N are dropped.
inline FockVector create(std::span<const double> g, const FockVector& F) {
  detail::require_dim(g.size(), F.space(), "create");
  FockVector out(F.space());
  for (const auto& [m, c] : F.entries()) {
    const std::size_t n = m.size();
    if (n + 1 > F.space().max_level) continue;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0.0) continue;
      Multiset target = with_added(m, i);
      const double k = static_cast<double>(multiplicity(target, i));
      out.add(target, k / static_cast<double>(n + 1) * g[i] * c);
    }
  }
  return out;
}

/// Contraction n * <g, first slot>, the adjoint of create().
inline FockVector annihilate(std::span<const double> g, const FockVector& F) {
  detail::require_dim(g.size(), F.space(), "annihilate");
  FockVector out(F.space());
  for (const auto& [m, c] : F.entries()) {
    const std::size_t n = m.size();
    if (n == 0) continue;
    for (auto [i, count] : distinct(m)) {
      if (g[i] == 0.0) continue;
      out.add(with_removed(m, i), static_cast<double>(n) * g[i] * c);
    }
  }
  return out;
}

/// Differential second quantization: h acting in each tensor slot in turn.
inline FockVector dgamma(const OneParticleOperator& h, const FockVector& F) {
  detail::require_dim(h.dim(), F.space(), "dgamma");
  FockVector out(F.space());
  for (const auto& [m, c] : F.entries()) {
    for (auto [y, count] : distinct(m)) {
      for (const auto& e : h.column(y)) {
        Multiset target = with_replaced(m, y, e.row);
        const double k = static_cast<double>(multiplicity(target, e.row));
        out.add(target, k * e.value * c);
      }
    }
  }
  return out;
}

/// Weight of a kernel entry in the Fock inner product: n! * n!/prod m_i!.
inline double fock_weight(const Multiset& m) { return factorial(m.size()) * tuple_count(m); }

inline double fock_inner(const FockVector& F, const FockVector& G) {
  if (!(F.space() == G.space())) throw std::domain_error("fock_inner: space mismatch");
  const auto& small = F.entries().size() <= G.entries().size() ? F : G;
  const auto& large = &small == &F ? G : F;
  double s = 0.0;
  for (const auto& [m, c] : small.entries()) {
    const double d = large.coefficient(m);
    if (d != 0.0) s += c * d * fock_weight(m);
  }
  return s;
}

inline double fock_norm(const FockVector& F) { return std::sqrt(fock_inner(F, F)); }

}  // namespace swnlab
