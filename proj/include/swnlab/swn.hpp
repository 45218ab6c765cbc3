#pragma once

// Fock representation of the square-of-white-noise algebra on the truncated
// symmetric Fock space over (grid (x) l2-ladder):
//   B+(phi) = 2 A+(phi (x) e1) + 2 A0(phi (x) J+)
//   N(phi)  = 2 A0(phi (x) J0)
//   B(phi)  = 2 A-(phi (x) e1) + 2 A0(phi (x) J-)
//   X(phi)  = B+(phi) + B(phi) + beta N(phi)
// with c = 2. One-particle coordinates are taken in the orthonormal basis
// chi_a / sqrt(v) (x) e_{l+1}, so phi (x) e1 has coordinates sqrt(v) phi(a).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "swnlab/basespace.hpp"
#include "swnlab/fock.hpp"

namespace swnlab {

enum class SwnKind { Bdag, N, B, X };

inline const char* to_string(SwnKind k) {
  switch (k) {
    case SwnKind::Bdag: return "Bdag";
    case SwnKind::N: return "N";
    case SwnKind::B: return "B";
    case SwnKind::X: return "X";
  }
  return "?";
}

/// Grid (G atoms) times ladder e_1..e_M, Fock levels 0..N.
struct SwnSpace {
  GridPtr grid;
  std::size_t ladder = 1;     // M
  std::size_t max_level = 0;  // N

  SwnSpace(GridPtr g, std::size_t M, std::size_t N) : grid(std::move(g)), ladder(M), max_level(N) {
    if (!grid) throw std::invalid_argument("SwnSpace: null grid");
    if (M == 0) throw std::invalid_argument("SwnSpace: ladder size must be >= 1");
  }

  std::size_t atoms() const { return grid->size(); }
  std::size_t modes() const { return atoms() * ladder; }
  FockSpace fock() const { return {modes(), max_level}; }

  // Ladder-major numbering: a mode's index does not depend on M.
  std::uint32_t mode(std::size_t atom, std::size_t l) const {
    return static_cast<std::uint32_t>(l * atoms() + atom);
  }
  std::size_t atom_of(std::uint32_t mode) const { return mode % atoms(); }
  /// 1-based ladder index n of e_n.
  std::size_t ladder_of(std::uint32_t mode) const { return mode / atoms() + 1; }

  /// Sum of 1-based ladder indices over all particles.
  std::size_t ladder_weight(const Multiset& m) const {
    std::size_t w = 0;
    for (auto i : m) w += ladder_of(i);
    return w;
  }
};

struct SwnOperator {
  SwnKind kind;
  GridFunction phi;
  double beta = 0.0;
};

namespace detail {
inline void require_grid(const SwnSpace& space, const GridFunction& phi) {
  if (!same_space(space.grid, phi.space())) throw std::domain_error("SwnOperator: phi lives on a different grid");
}

inline std::vector<double> phi_e1(const SwnSpace& space, const GridFunction& phi) {
  std::vector<double> g(space.modes(), 0.0);
  const double root_v = std::sqrt(space.grid->cell_mass());
  for (std::size_t a = 0; a < space.atoms(); ++a) g[space.mode(a, 0)] = root_v * phi[a];
  return g;
}

enum class Ladder { Raise, Number, Lower };

// Multiplication by phi (x) J+, J0 or J- on the one-particle space.
inline OneParticleOperator phi_ladder(const SwnSpace& space, const GridFunction& phi, Ladder which) {
  OneParticleOperator h(space.modes());
  for (std::size_t a = 0; a < space.atoms(); ++a) {
    if (phi[a] == 0.0) continue;
    for (std::size_t n = 1; n <= space.ladder; ++n) {
      const std::size_t col = space.mode(a, n - 1);
      const double dn = static_cast<double>(n);
      switch (which) {
        case Ladder::Raise:
          if (n + 1 <= space.ladder) h.set(space.mode(a, n), col, phi[a] * std::sqrt(dn * (dn + 1.0)));
          break;
        case Ladder::Number: h.set(col, col, phi[a] * dn); break;
        case Ladder::Lower:
          if (n >= 2) h.set(space.mode(a, n - 2), col, phi[a] * std::sqrt((dn - 1.0) * dn));
          break;
      }
    }
  }
  return h;
}
}  // namespace detail

inline FockVector apply(const SwnOperator& op, const SwnSpace& space, const FockVector& F) {
  detail::require_grid(space, op.phi);
  if (!(F.space() == space.fock())) throw std::domain_error("SwnOperator: vector lives on a different Fock space");
  using detail::Ladder;
  auto bdag = [&] {
    FockVector r = create(detail::phi_e1(space, op.phi), F);
    r += dgamma(detail::phi_ladder(space, op.phi, Ladder::Raise), F);
    return 2.0 * std::move(r);
  };
  auto number = [&] { return 2.0 * dgamma(detail::phi_ladder(space, op.phi, Ladder::Number), F); };
  auto lower = [&] {
    FockVector r = annihilate(detail::phi_e1(space, op.phi), F);
    r += dgamma(detail::phi_ladder(space, op.phi, Ladder::Lower), F);
    return 2.0 * std::move(r);
  };
  switch (op.kind) {
    case SwnKind::Bdag: return bdag();
    case SwnKind::N: return number();
    case SwnKind::B: return lower();
    case SwnKind::X: {
      FockVector r = bdag();
      r += lower();
      if (op.beta != 0.0) r.axpy(op.beta, number());
      return r;
    }
  }
  throw std::logic_error("apply: unknown SwnKind");
}

/// Representation adapter used by the generic relation harness.
struct SwnRepresentation {
  SwnSpace space;

  using Vector = FockVector;

  Vector apply(SwnKind kind, const GridFunction& phi, const Vector& F) const {
    return swnlab::apply(SwnOperator{kind, phi, 0.0}, space, F);
  }
  double inner(const Vector& F, const Vector& G) const { return fock_inner(F, G); }
  Vector identity_times(double c, const Vector& F) const { return c * F; }
  Vector zero() const { return FockVector(space.fock()); }

  /// Level <= N-2 and ladder index <= M-2 for every particle.
  bool in_safe_window(const Vector& F) const {
    for (const auto& [m, c] : F.entries()) {
      if (m.size() + 2 > space.max_level) return false;
      for (auto i : m)
        if (space.ladder_of(i) + 2 > space.ladder) return false;
    }
    return true;
  }
};

/// Random sparse vector inside the safe window; entries uniform in [-1, 1].
inline FockVector random_swn_vector(const SwnSpace& space, std::uint64_t seed, std::size_t entries = 12) {
  if (space.max_level < 2 || space.ladder < 3)
    throw std::invalid_argument("random_swn_vector: need N >= 2 and M >= 3 for a nonempty safe window");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> level(0, space.max_level - 2);
  std::uniform_int_distribution<std::size_t> atom(0, space.atoms() - 1);
  std::uniform_int_distribution<std::size_t> lad(0, space.ladder - 3);
  FockVector F(space.fock());
  for (std::size_t e = 0; e < entries; ++e) {
    Multiset m;
    const std::size_t n = level(rng);
    for (std::size_t k = 0; k < n; ++k) m = with_added(m, space.mode(atom(rng), lad(rng)));
    F.add(m, coef(rng));
  }
  return F;
}

/// <Omega, X_beta(phi)^k Omega>. Needs N >= k+1 and M >= k+1; then the value
/// does not depend on the truncation. Components whose ladder weight exceeds
/// the remaining number of steps cannot return to the vacuum and are dropped.
inline double vacuum_moment(double beta, const GridFunction& phi, int k, std::size_t N, std::size_t M) {
  if (k < 0) throw std::invalid_argument("vacuum_moment: k must be >= 0");
  if (beta < 0.0) throw std::domain_error("vacuum_moment: beta must be >= 0");
  const auto need = static_cast<std::size_t>(k) + 1;
  if (N < need || M < need)
    throw std::invalid_argument("vacuum_moment: k=" + std::to_string(k) + " needs N >= " + std::to_string(need) +
                                " and M >= " + std::to_string(need) + " (got N=" + std::to_string(N) +
                                ", M=" + std::to_string(M) + ")");
  const SwnSpace space(phi.space(), M, N);
  const SwnOperator x{SwnKind::X, phi, beta};
  FockVector F = vacuum(space.modes(), N);
  for (int step = 1; step <= k; ++step) {
    F = apply(x, space, F);
    const auto remaining = static_cast<std::size_t>(k - step);
    F.prune([&](const Multiset& m) { return space.ladder_weight(m) > remaining; });
  }
  return F.coefficient({});
}

inline double vacuum_moment(double beta, const GridFunction& phi, int k) {
  const auto n = static_cast<std::size_t>(k) + 1;
  return vacuum_moment(beta, phi, k, n, n);
}

}  // namespace swnlab
