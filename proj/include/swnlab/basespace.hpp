#pragma once

// Finite base space: G atoms of common mass v standing in for R^d with
// Lebesgue measure. Test functions are real values per atom.

#include <cmath>
#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swnlab {

class GridSpace {
 public:
  GridSpace(std::vector<std::string> atom_ids, double cell_mass, int dim = 1)
      : atoms_(std::move(atom_ids)), cell_mass_(cell_mass), dim_(dim) {
    if (atoms_.empty()) throw std::invalid_argument("GridSpace: no atoms");
    if (!(cell_mass_ > 0.0) || !std::isfinite(cell_mass_))
      throw std::invalid_argument("GridSpace: cell mass must be positive");
    if (dim_ < 1) throw std::invalid_argument("GridSpace: dim must be >= 1");
    std::set<std::string> seen(atoms_.begin(), atoms_.end());
    if (seen.size() != atoms_.size())
      throw std::invalid_argument("GridSpace: duplicate atom identifiers");
  }

  /// Atoms named "x0", "x1", ...
  GridSpace(std::size_t atom_count, double cell_mass, int dim = 1)
      : GridSpace(default_ids(atom_count), cell_mass, dim) {}

  static std::shared_ptr<const GridSpace> make(std::size_t atom_count, double cell_mass, int dim = 1) {
    return std::make_shared<const GridSpace>(atom_count, cell_mass, dim);
  }

  std::size_t size() const noexcept { return atoms_.size(); }
  double cell_mass() const noexcept { return cell_mass_; }
  int dim() const noexcept { return dim_; }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }

  friend bool operator==(const GridSpace&, const GridSpace&) = default;

 private:
  static std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
    return ids;
  }

  std::vector<std::string> atoms_;
  double cell_mass_;
  int dim_;
};

using GridPtr = std::shared_ptr<const GridSpace>;

inline bool same_space(const GridPtr& a, const GridPtr& b) {
  return a == b || (a && b && *a == *b);
}

class GridFunction {
 public:
  GridFunction(GridPtr space, std::vector<double> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw std::invalid_argument("GridFunction: null space");
    if (values_.size() != space_->size())
      throw std::invalid_argument("GridFunction: expected " + std::to_string(space_->size()) +
                                  " values, got " + std::to_string(values_.size()));
  }

  static GridFunction constant(GridPtr space, double c) {
    const auto n = space->size();
    return GridFunction(std::move(space), std::vector<double>(n, c));
  }

  const GridPtr& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  GridPtr space_;
  std::vector<double> values_;
};

namespace detail {
inline void require_same(const GridFunction& f, const GridFunction& g, const char* what) {
  if (!same_space(f.space(), g.space()))
    throw std::domain_error(std::string(what) + ": grid functions live on different spaces");
}
}  // namespace detail

/// v * sum over atoms of f*g.
inline double inner(const GridFunction& f, const GridFunction& g) {
  detail::require_same(f, g, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return f.space()->cell_mass() * s;
}

inline GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  detail::require_same(f, g, "pointwise_product");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
  return GridFunction(f.space(), std::move(out));
}

/// v * sum over atoms of f^j.
inline double power_integral(const GridFunction& f, int j) {
  double s = 0.0;
  for (double x : f.values()) s += std::pow(x, j);
  return f.space()->cell_mass() * s;
}

}  // namespace swnlab
