#pragma once

// Sorted index multisets and sparse vectors keyed by them. Both the
// symmetric Fock space (modes) and the extended Fock space (grid atoms)
// store a symmetric kernel by its value on each multiset of arguments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace swnlab {

using Multiset = std::vector<std::uint32_t>;

inline std::size_t multiplicity(const Multiset& m, std::uint32_t x) {
  auto [lo, hi] = std::equal_range(m.begin(), m.end(), x);
  return static_cast<std::size_t>(hi - lo);
}

inline Multiset with_added(const Multiset& m, std::uint32_t x) {
  Multiset out;
  out.reserve(m.size() + 1);
  auto pos = std::upper_bound(m.begin(), m.end(), x);
  out.insert(out.end(), m.begin(), pos);
  out.push_back(x);
  out.insert(out.end(), pos, m.end());
  return out;
}

/// Removes one copy of x; x must be present.
inline Multiset with_removed(const Multiset& m, std::uint32_t x) {
  Multiset out = m;
  out.erase(std::lower_bound(out.begin(), out.end(), x));
  return out;
}

inline Multiset with_replaced(const Multiset& m, std::uint32_t drop, std::uint32_t add) {
  if (drop == add) return m;
  return with_added(with_removed(m, drop), add);
}

/// Distinct values of a sorted multiset with their multiplicities.
inline std::vector<std::pair<std::uint32_t, std::size_t>> distinct(const Multiset& m) {
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    out.emplace_back(m[i], j - i);
    i = j;
  }
  return out;
}

inline double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

/// Number of ordered tuples with this multiset of entries: n!/prod m_i!.
inline double tuple_count(const Multiset& m) {
  double w = factorial(m.size());
  for (auto [x, c] : distinct(m)) w /= factorial(c);
  return w;
}

/// Sparse real vector indexed by multisets. Ordered storage keeps every
/// traversal, and therefore every floating-point sum, deterministic.
class MultisetVector {
 public:
  using Map = std::map<Multiset, double>;

  void add(const Multiset& m, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = data_.try_emplace(m, c);
    if (!inserted) it->second += c;
  }

  double at(const Multiset& m) const {
    auto it = data_.find(m);
    return it == data_.end() ? 0.0 : it->second;
  }

  const Map& entries() const noexcept { return data_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t size() const noexcept { return data_.size(); }

  std::size_t max_level() const {
    std::size_t n = 0;
    for (const auto& [m, c] : data_) n = std::max(n, m.size());
    return n;
  }

  void erase_if(const std::function<bool(const Multiset&)>& pred) {
    std::erase_if(data_, [&](const auto& kv) { return pred(kv.first); });
  }

  MultisetVector& operator+=(const MultisetVector& o) {
    for (const auto& [m, c] : o.data_) add(m, c);
    return *this;
  }
  MultisetVector& axpy(double a, const MultisetVector& o) {
    for (const auto& [m, c] : o.data_) add(m, a * c);
    return *this;
  }
  MultisetVector& operator*=(double a) {
    for (auto& [m, c] : data_) c *= a;
    return *this;
  }

  friend bool operator==(const MultisetVector&, const MultisetVector&) = default;

 private:
  Map data_;
};

}  // namespace swnlab
