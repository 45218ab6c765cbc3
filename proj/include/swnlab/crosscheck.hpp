#pragma once

// Check suites. Each suite turns one family of identities into CheckReports:
//
//   commutators   the six SWN relations in the truncated Fock representation
//                 and for 2a+, 2a0, 2a- on the extended Fock space
//   adjointness   B+ vs B and N in Fock space, a+ vs a- and a0 in the
//                 extended space
//   theorem1      <Omega, X^k Omega> = <Omega, (2a_beta)^k Omega>
//                 = 2^k m_k(<., phi>) from the cumulants
//   spectral      (J_beta^j)_11 against the regime's own moments of nu~
//   gram          <s P~_{m-1}, s P~_{n-1}> under nu_beta
//   marginal      normalization, mean, variance of mu_{beta,D}
//   single_atom   level norms (v)_n n! and moments of a_beta at one atom
//   wick          the symbolic identity corpus
//
// Cases run through parallel_map; the report order follows the parameter
// order, never the completion order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "swnlab/basespace.hpp"
#include "swnlab/extfock.hpp"
#include "swnlab/jacobi.hpp"
#include "swnlab/meixner.hpp"
#include "swnlab/parallel.hpp"
#include "swnlab/relations.hpp"
#include "swnlab/report.hpp"
#include "swnlab/special.hpp"
#include "swnlab/swn.hpp"
#include "swnlab/wick/corpus.hpp"

namespace swnlab {

struct Tolerances {
  double commutator = 1e-10;
  double adjoint = 1e-10;
  double moment = 1e-8;
  double spectral_exact = 1e-10;  // Gamma closed form
  double spectral = 1e-6;         // Pascal series, Meixner quadrature
  double marginal = 1e-6;
  double gram = 1e-6;
  double single_atom = 1e-8;

  void set_all(double t) { commutator = adjoint = moment = spectral_exact = spectral = marginal = gram = single_atom = t; }
};

/// A grid with the test function used for moment checks.
struct GridCase {
  std::string name;
  std::size_t atoms = 1;
  double cell_mass = 1.0;
  int dim = 1;
  std::vector<double> phi;
};

struct CheckSettings {
  std::vector<double> betas{0.0, 1.0, 2.0, 3.0, 5.0};
  std::vector<GridCase> moment_grids{{"single", 1, 1.0, 1, {1.0}}, {"three", 3, 0.5, 1, {0.7, -1.2, 0.4}}};
  std::vector<std::size_t> commutator_atoms{1, 2, 3};
  double commutator_cell_mass = 0.5;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t vectors_per_seed = 3;
  int kmax = 8;
  // Truncations for the relation and adjointness suites.
  std::size_t fock_levels = 5;  // N
  std::size_t ladder = 5;       // M
  std::size_t ext_levels = 5;
  // Moment suite truncation; unset means kmax + 1.
  std::optional<std::size_t> moment_levels;
  std::optional<std::size_t> moment_ladder;
  int spectral_jmax = 8;
  std::size_t gram_nmax = 6;
  std::vector<double> areas{0.5, 1.0, 2.0};
  std::vector<double> single_atom_masses{0.5, 1.0, 2.0};
  int single_atom_order = 6;
  std::string corpus = "builtin";
  std::size_t workers = 0;  // 0 means hardware concurrency
  Tolerances tol;

  std::size_t worker_count() const { return workers == 0 ? default_workers() : workers; }
};

namespace detail {

inline Json vec_json(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(x);
  return j;
}

inline GridFunction random_function(const GridPtr& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(grid->size());
  for (auto& x : v) x = u(rng);
  return GridFunction(grid, std::move(v));
}

// Odd moments of a symmetric law vanish; sqrt(m_{j-1} m_{j+1}) bounds the
// absolute moment and serves as the scale there.
inline std::optional<double> odd_scale(int j, const std::vector<double>& exact) {
  if (j % 2 == 0 || j + 1 >= static_cast<int>(exact.size())) return std::nullopt;
  return std::sqrt(std::abs(exact[j - 1] * exact[j + 1]));
}

inline std::optional<double> with_floor(double lhs, double rhs, std::optional<double> natural) {
  if (!natural) return std::nullopt;
  return std::max({std::abs(lhs), std::abs(rhs), *natural});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Relations and adjointness

struct RelationCase {
  std::string representation;  // "fock" or "ext"
  std::size_t atoms;
  std::uint64_t seed;
};

template <SwnRepresentationLike R, class MakeVector>
std::vector<CheckReport> relation_reports(const R& rep, const RelationCase& c, const GridPtr& grid,
                                          MakeVector make_vector, const CheckSettings& s, Json truncation) {
  std::mt19937_64 rng(c.seed);
  const GridFunction phi = detail::random_function(grid, rng);
  const GridFunction psi = detail::random_function(grid, rng);
  std::vector<typename R::Vector> tests;
  for (std::size_t i = 0; i < s.vectors_per_seed; ++i) tests.push_back(make_vector(c.seed * 1000 + i));
  std::vector<CheckReport> out;
  for (const auto& rel : swn_relations(phi, psi)) {
    Json params;
    params["representation"] = c.representation;
    params["relation"] = rel.name;
    params["atoms"] = c.atoms;
    params["cell_mass"] = s.commutator_cell_mass;
    params["truncation"] = truncation;
    params["test_vectors"] = tests.size();
    CheckReport r = residual_check("commutators", rel.name, params,
                                   commutator_residual(rep, rel, phi, psi, std::span<const typename R::Vector>(tests)),
                                   s.tol.commutator);
    r.seeds = {c.seed};
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<RelationCase> relation_cases(const CheckSettings& s) {
  std::vector<RelationCase> cases;
  for (const char* rep : {"fock", "ext"})
    for (auto g : s.commutator_atoms)
      for (auto seed : s.seeds) cases.push_back({rep, g, seed});
  return cases;
}

inline std::vector<CheckReport> commutator_suite(const CheckSettings& s) {
  auto per_case = [&](const RelationCase& c) {
    const GridPtr grid = GridSpace::make(c.atoms, s.commutator_cell_mass);
    try {
      if (c.representation == "fock") {
        const SwnRepresentation rep{SwnSpace(grid, s.ladder, s.fock_levels)};
        Json tr{{"N", s.fock_levels}, {"M", s.ladder}};
        return relation_reports(rep, c, grid, [&](std::uint64_t seed) { return random_swn_vector(rep.space, seed); },
                                s, tr);
      }
      const ExtRepresentation rep{grid, s.ext_levels};
      Json tr{{"max_level", s.ext_levels}};
      return relation_reports(rep, c, grid,
                              [&](std::uint64_t seed) { return random_ext_vector(grid, s.ext_levels, seed); }, s, tr);
    } catch (const std::exception& e) {
      Json params{{"representation", c.representation}, {"atoms", c.atoms}};
      CheckReport r = failed_check("commutators", "setup", params, s.tol.commutator, e.what());
      r.seeds = {c.seed};
      return std::vector<CheckReport>{r};
    }
  };
  std::vector<CheckReport> out;
  for (auto& block : parallel_map(relation_cases(s), per_case, s.worker_count()))
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

inline std::vector<CheckReport> adjointness_suite(const CheckSettings& s) {
  auto per_case = [&](const RelationCase& c) {
    const GridPtr grid = GridSpace::make(c.atoms, s.commutator_cell_mass);
    std::mt19937_64 rng(c.seed ^ 0x5eedULL);
    const GridFunction phi = detail::random_function(grid, rng);
    std::vector<CheckReport> out;
    auto emit = [&](const std::string& name, const PairingCheck& p, Json tr) {
      Json params{{"representation", c.representation}, {"atoms", c.atoms}, {"cell_mass", s.commutator_cell_mass},
                  {"truncation", tr}};
      const double natural = std::max({std::abs(p.lhs), std::abs(p.rhs), p.scale});
      CheckReport r = numeric_check("adjointness", name, params, p.lhs, p.rhs, s.tol.adjoint, natural);
      r.seeds = {c.seed};
      out.push_back(std::move(r));
    };
    if (c.representation == "fock") {
      const SwnRepresentation rep{SwnSpace(grid, s.ladder, s.fock_levels)};
      const auto F = random_swn_vector(rep.space, c.seed * 7919 + 1);
      const auto G = random_swn_vector(rep.space, c.seed * 7919 + 2);
      Json tr{{"N", s.fock_levels}, {"M", s.ladder}};
      emit("<Bdag F,G>=<F,B G>", pairing(rep, SwnKind::Bdag, SwnKind::B, phi, F, G), tr);
      emit("<N F,G>=<F,N G>", pairing(rep, SwnKind::N, SwnKind::N, phi, F, G), tr);
    } else {
      const auto F = random_ext_vector(grid, s.ext_levels, c.seed * 7919 + 1);
      const auto G = random_ext_vector(grid, s.ext_levels, c.seed * 7919 + 2);
      Json tr{{"max_level", s.ext_levels}};
      auto pair = [&](AKind op, AKind adj) {
        const auto AF = apply_a(op, phi, F);
        const auto AG = apply_a(adj, phi, G);
        return PairingCheck{ext_fock_inner(AF, G), ext_fock_inner(F, AG),
                            std::sqrt(std::max(ext_fock_inner(AF, AF), 0.0) * std::max(ext_fock_inner(G, G), 0.0))};
      };
      emit("<a+ F,G>=<F,a- G>", pair(AKind::Plus, AKind::Minus), tr);
      emit("<a0 F,G>=<F,a0 G>", pair(AKind::Zero, AKind::Zero), tr);
    }
    return out;
  };
  std::vector<CheckReport> out;
  for (auto& block : parallel_map(relation_cases(s), per_case, s.worker_count()))
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

// ---------------------------------------------------------------------------
// Theorem 1 at the level of vacuum moments

struct MomentCase {
  double beta;
  std::size_t grid_index;
};

/// Reports for k = 0..k_max: the Fock-space moment and 2^k times the
/// extended-space moment, each against 2^k times the cumulant moment.
inline std::vector<CheckReport> theorem1_moment_check(double beta, const GridCase& g, int k_max,
                                                       const CheckSettings& s) {
  std::vector<CheckReport> out;
  const std::size_t N = s.moment_levels.value_or(static_cast<std::size_t>(k_max) + 1);
  const std::size_t M = s.moment_ladder.value_or(static_cast<std::size_t>(k_max) + 1);
  Json base{{"beta", beta},           {"grid", g.name}, {"atoms", g.atoms}, {"cell_mass", g.cell_mass},
            {"phi", detail::vec_json(g.phi)}, {"N", N},      {"M", M},          {"k_max_cap", 8}};
  try {
    const GridPtr grid = std::make_shared<const GridSpace>(g.atoms, g.cell_mass, g.dim);
    const GridFunction phi(grid, g.phi);
    const auto kappas = cumulants(beta, phi, std::max(k_max, 1));
    std::vector<double> target(static_cast<std::size_t>(k_max) + 2);
    for (int k = 0; k <= k_max; ++k) target[k] = std::ldexp(moments_from_cumulants(kappas, k), k);
    // variance of 2<., phi> sets the scale of the odd moments
    const double sigma = 2.0 * std::sqrt(power_integral(phi, 2));
    for (int k = 0; k <= k_max; ++k) {
      Json p = base;
      p["k"] = k;
      const double rhs = target[k];
      const double natural = std::pow(sigma, k);
      const double fock = vacuum_moment(beta, phi, k, N, M);
      const double ext = std::ldexp(ext_vacuum_moment(beta, phi, k, static_cast<std::size_t>(k_max)), k);
      out.push_back(numeric_check("theorem1", "fock-vs-cumulant", p, fock, rhs, s.tol.moment,
                                  std::max({std::abs(fock), std::abs(rhs), natural})));
      out.push_back(numeric_check("theorem1", "ext-vs-cumulant", p, ext, rhs, s.tol.moment,
                                  std::max({std::abs(ext), std::abs(rhs), natural})));
    }
  } catch (const std::exception& e) {
    out.push_back(failed_check("theorem1", "setup", base, s.tol.moment, e.what()));
  }
  return out;
}

inline std::vector<CheckReport> theorem1_suite(const CheckSettings& s) {
  std::vector<MomentCase> cases;
  for (double b : s.betas)
    for (std::size_t i = 0; i < s.moment_grids.size(); ++i) cases.push_back({b, i});
  auto run = [&](const MomentCase& c) { return theorem1_moment_check(c.beta, s.moment_grids[c.grid_index], s.kmax, s); };
  std::vector<CheckReport> out;
  for (auto& block : parallel_map(cases, run, s.worker_count())) out.insert(out.end(), block.begin(), block.end());
  return out;
}

// ---------------------------------------------------------------------------
// Proof chain surrogates

/// (J_beta^j)_11 against the regime's own moment of nu~ for j = 0..j_max.
inline std::vector<CheckReport> spectral_check(double beta, int j_max, const CheckSettings& s) {
  std::vector<CheckReport> out;
  const auto spec = LevyMeasureSpec::make(beta);
  const double tol = spec.regime == Regime::Gamma ? s.tol.spectral_exact : s.tol.spectral;
  std::vector<double> exact(static_cast<std::size_t>(j_max) + 2);
  for (int j = 0; j <= j_max + 1; ++j) exact[j] = spectral_moment(beta, j);
  for (int j = 0; j <= j_max; ++j) {
    Json p{{"beta", beta}, {"regime", to_string(spec.regime)}, {"j", j}};
    try {
      const double ref = levy_reference_moment(spec, j);
      const auto natural = detail::with_floor(exact[j], ref, detail::odd_scale(j, exact));
      out.push_back(numeric_check("spectral", "jacobi-vs-levy-moment", p, exact[j], ref, tol, natural));
    } catch (const std::exception& e) {
      out.push_back(failed_check("spectral", "jacobi-vs-levy-moment", p, tol, e.what()));
    }
  }
  return out;
}

inline std::vector<CheckReport> gram_check(double beta, std::size_t n_max, const CheckSettings& s) {
  std::vector<CheckReport> out;
  const auto spec = LevyMeasureSpec::make(beta);
  try {
    const auto gram = gram_check_I3(beta, n_max);
    for (std::size_t m = 1; m <= n_max; ++m) {
      for (std::size_t n = m; n <= n_max; ++n) {
        Json p{{"beta", beta}, {"regime", to_string(spec.regime)}, {"m", m}, {"n", n}};
        const double expected = m == n ? PolynomialSequence::norm_sq(n - 1) : 0.0;
        const double natural = std::sqrt(PolynomialSequence::norm_sq(m - 1) * PolynomialSequence::norm_sq(n - 1));
        out.push_back(numeric_check("gram", m == n ? "diagonal" : "off-diagonal", p, gram[m - 1][n - 1], expected,
                                    s.tol.gram, natural));
      }
    }
  } catch (const std::exception& e) {
    out.push_back(failed_check("gram", "setup", Json{{"beta", beta}}, s.tol.gram, e.what()));
  }
  return out;
}

inline std::vector<CheckReport> marginal_check(double beta, double area, const CheckSettings& s) {
  std::vector<CheckReport> out;
  const auto spec = LevyMeasureSpec::make(beta);
  Json p{{"beta", beta}, {"regime", to_string(spec.regime)}, {"area", area}};
  const char* names[] = {"normalization", "mean", "variance"};
  const double expected[] = {1.0, 0.0, area};
  const double natural[] = {1.0, std::sqrt(area), area};
  try {
    const MarginalLaw law(beta, area);
    for (int j = 0; j < 3; ++j) {
      try {
        const double m = law.moment(j);
        out.push_back(numeric_check("marginal", names[j], p, m, expected[j], s.tol.marginal,
                                    std::max({std::abs(m), expected[j], natural[j]})));
      } catch (const std::exception& e) {
        out.push_back(failed_check("marginal", names[j], p, s.tol.marginal, e.what()));
      }
    }
  } catch (const std::exception& e) {
    out.push_back(failed_check("marginal", "setup", p, s.tol.marginal, e.what()));
  }
  return out;
}

/// One atom of mass v: level norms against (v)_n n!, and the moments of
/// a_beta(1) (by operator powers and by the normalized Jacobi matrix)
/// against the moments of the marginal law with area v.
inline std::vector<CheckReport> single_atom_check(double beta, double v, int order, const CheckSettings& s) {
  std::vector<CheckReport> out;
  const auto spec = LevyMeasureSpec::make(beta);
  Json base{{"beta", beta}, {"regime", to_string(spec.regime)}, {"cell_mass", v}};
  try {
    const GridPtr grid = GridSpace::make(1, v);
    const auto one = GridFunction::constant(grid, 1.0);
    for (int n = 0; n <= order; ++n) {
      ExtFockVector e(grid, static_cast<std::size_t>(order));
      e.add(Multiset(static_cast<std::size_t>(n), 0u), 1.0);
      Json p = base;
      p["n"] = n;
      out.push_back(numeric_check("single_atom", "level-norm", p, ext_fock_inner(e, e),
                                  rising_factorial(v, n) * factorial(static_cast<std::size_t>(n)), s.tol.single_atom));
    }
    const MarginalLaw law(beta, v);
    const auto kappas = cumulants(beta, one, order + 1);
    std::vector<double> exact(static_cast<std::size_t>(order) + 2);
    for (int j = 0; j <= order + 1; ++j) exact[j] = moments_from_cumulants(kappas, j);
    const JacobiMatrix jac = single_atom_jacobi(beta, v, static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) {
      Json p = base;
      p["j"] = j;
      try {
        const double ref = law.moment(j);
        const double vac = ext_vacuum_moment(beta, one, j, static_cast<std::size_t>(order));
        const double jm = jac.moment(j);
        const auto natural = detail::odd_scale(j, exact);
        out.push_back(numeric_check("single_atom", "vacuum-moment-vs-marginal", p, vac, ref, s.tol.single_atom,
                                    detail::with_floor(vac, ref, natural)));
        out.push_back(numeric_check("single_atom", "jacobi-moment-vs-marginal", p, jm, ref, s.tol.single_atom,
                                    detail::with_floor(jm, ref, natural)));
      } catch (const std::exception& e) {
        out.push_back(failed_check("single_atom", "moment", p, s.tol.single_atom, e.what()));
      }
    }
  } catch (const std::exception& e) {
    out.push_back(failed_check("single_atom", "setup", base, s.tol.single_atom, e.what()));
  }
  return out;
}

/// Spectral moments, Gram matrix, single-atom reduction and marginals,
/// per beta, in that order.
inline std::vector<CheckReport> proofchain_check(double beta, std::size_t n_max, const CheckSettings& s) {
  std::vector<CheckReport> out = spectral_check(beta, s.spectral_jmax, s);
  auto append = [&](std::vector<CheckReport> more) { out.insert(out.end(), more.begin(), more.end()); };
  append(gram_check(beta, n_max, s));
  for (double v : s.single_atom_masses) append(single_atom_check(beta, v, s.single_atom_order, s));
  for (double a : s.areas) append(marginal_check(beta, a, s));
  return out;
}

inline std::vector<CheckReport> proofchain_suite(const CheckSettings& s) {
  std::vector<CheckReport> out;
  for (auto& block : parallel_map(s.betas, [&](double b) { return proofchain_check(b, s.gram_nmax, s); },
                                  s.worker_count()))
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic corpus

inline CheckReport wick_report(const wick::CorpusEntry& e) {
  CheckReport r;
  r.suite = "wick";
  r.name = e.name;
  r.params["lhs"] = e.lhs;
  r.params["rhs"] = e.rhs;
  r.params["c"] = e.options.c ? wick::to_string(*e.options.c) : "symbolic";
  if (e.options.ccr_only) r.params["ccr_only"] = true;
  if (e.options.smeared) r.params["smeared"] = *e.options.smeared;
  r.tolerance = 0.0;
  try {
    const auto v = wick::verify_identity(e.lhs, e.rhs, e.options);
    r.lhs = v.lhs;
    r.rhs = v.rhs;
    if (v.smeared) r.params["smeared_reading"] = *v.smeared;
    r.pass = v.pass;
    r.abs_error = r.rel_error = v.pass ? 0.0 : 1.0;
    if (!v.pass) r.note = v.failure + "; difference: " + v.diff;
  } catch (const std::exception& ex) {
    r.abs_error = r.rel_error = 1.0;
    r.note = ex.what();
  }
  return r;
}

inline std::vector<CheckReport> wick_suite(const std::vector<wick::CorpusEntry>& corpus, std::size_t workers) {
  return parallel_map(corpus, wick_report, workers);
}

}  // namespace swnlab
