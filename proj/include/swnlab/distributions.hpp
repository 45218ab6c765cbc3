#pragma once

// Density and mass tables for nu~_beta, nu_beta and the marginals
// mu_{beta,D}, with a normalization check for each table.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "swnlab/meixner.hpp"
#include "swnlab/quadrature.hpp"
#include "swnlab/report.hpp"

namespace swnlab {

struct DistributionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // NaN marks an undefined entry
  CheckReport normalization;

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + (std::isnan(row[i]) ? "" : format_double(row[i]));
      out += "\n";
    }
    return out;
  }
};

namespace detail {

// Display range: where the density exceeds 1e-8 of its peak.
inline QuadratureOptions display_options() {
  QuadratureOptions o;
  o.tail_ratio = 1e-8;
  o.step = 0.25;
  return o;
}

inline double trapezoid(const std::vector<std::vector<double>>& rows, std::size_t x, std::size_t y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = rows[i - 1][y], b = rows[i][y];
    if (std::isfinite(a) && std::isfinite(b)) sum += 0.5 * (a + b) * (rows[i][x] - rows[i - 1][x]);
  }
  return sum;
}

// Atoms up to the point where the remaining mass is below 1e-15.
template <class AtomAt>
std::vector<Atom> atoms_until_negligible(AtomAt atom_at, int k0) {
  std::vector<Atom> out;
  double prev = 0.0;
  for (int k = k0; k < 100000; ++k) {
    const Atom a = atom_at(k);
    out.push_back(a);
    if (k > k0 + 2 && a.mass < prev && a.mass < 1e-17) break;
    prev = a.mass;
  }
  return out;
}

}  // namespace detail

/// Table of nu~_beta and nu_beta: columns (s, nu_tilde, nu) for the
/// continuous regimes, (k, s, nu_tilde, nu) for Pascal atoms.
inline DistributionTable levy_table(double beta, std::size_t points, double tolerance) {
  const auto spec = LevyMeasureSpec::make(beta);
  DistributionTable t;
  Json params{{"beta", beta}, {"regime", to_string(spec.regime)}, {"measure", "nu_tilde"}};
  if (spec.regime == Regime::Pascal) {
    t.columns = {"k", "s", "nu_tilde", "nu"};
    double sum = 0.0;
    for (const auto& a : detail::atoms_until_negligible([&](int k) { return levy_atom(spec, LevyKind::NuTilde, k); }, 1)) {
      const double k = std::round(a.support / spec.root);
      t.rows.push_back({k, a.support, a.mass, a.mass / (a.support * a.support)});
      sum += a.mass;
    }
    params["rows"] = t.rows.size();
    t.normalization = numeric_check("distributions", "table-mass", params, sum, 1.0, tolerance);
    return t;
  }
  t.columns = {"s", "nu_tilde", "nu"};
  auto f = [&](double s) { return levy_density(spec, LevyKind::NuTilde, s); };
  const double lo = spec.regime == Regime::Gamma ? 0.0 : find_cutoff(f, 0.0, -1.0, detail::display_options());
  const double hi = find_cutoff(f, std::max(lo, 0.0), 1.0, detail::display_options());
  points = std::max<std::size_t>(points, 2);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double nt = f(s);
    const double nu = s == 0.0 ? NAN : (spec.regime == Regime::Gamma && s <= 0.0 ? 0.0 : nt / (s * s));
    t.rows.push_back({s, nt, nu});
  }
  params["rows"] = t.rows.size();
  params["range"] = Json::array({lo, hi});
  params["table_integral"] = detail::trapezoid(t.rows, 0, 1);
  try {
    t.normalization = numeric_check("distributions", "quadrature-mass", params, levy_reference_moment(spec, 0), 1.0, tolerance);
  } catch (const std::exception& e) {
    t.normalization = failed_check("distributions", "quadrature-mass", params, tolerance, e.what());
  }
  return t;
}

/// Table of mu_{beta,D}: (s, density) or (k, s, mass).
inline DistributionTable marginal_table(double beta, double area, std::size_t points, double tolerance) {
  const MarginalLaw law(beta, area);
  DistributionTable t;
  Json params{{"beta", beta}, {"regime", to_string(law.regime())}, {"measure", "marginal"}, {"area", area}};
  if (law.atomic()) {
    t.columns = {"k", "s", "mass"};
    double sum = 0.0;
    int k = 0;
    for (const auto& a : detail::atoms_until_negligible([&](int kk) { return law.atom(kk); }, 0)) {
      t.rows.push_back({static_cast<double>(k++), a.support, a.mass});
      sum += a.mass;
    }
    params["rows"] = t.rows.size();
    t.normalization = numeric_check("distributions", "table-mass", params, sum, 1.0, tolerance);
    return t;
  }
  t.columns = {"s", "density"};
  auto f = [&](double s) { return law.density(s); };
  double lo, hi;
  if (law.regime() == Regime::Gamma) {
    lo = -area;
    hi = find_cutoff(f, lo, 1.0, detail::display_options());
  } else {
    const double centre = -beta * area / 2.0;
    lo = find_cutoff(f, centre, -1.0, detail::display_options());
    hi = find_cutoff(f, centre, 1.0, detail::display_options());
  }
  points = std::max<std::size_t>(points, 2);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double d = f(s);
    t.rows.push_back({s, std::isinf(d) ? NAN : d});
  }
  params["rows"] = t.rows.size();
  params["range"] = Json::array({lo, hi});
  params["table_integral"] = detail::trapezoid(t.rows, 0, 1);
  try {
    t.normalization = numeric_check("distributions", "quadrature-mass", params, law.moment(0), 1.0, tolerance);
  } catch (const std::exception& e) {
    t.normalization = failed_check("distributions", "quadrature-mass", params, tolerance, e.what());
  }
  return t;
}

}  // namespace swnlab
