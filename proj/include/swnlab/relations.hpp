#pragma once

// The six smeared SWN commutation relations (c = 2),
//   [B(f), B+(g)] = 2c <f,g> 1 + 4 N(fg)
//   [N(f), B+(g)] = 2 B+(fg)
//   [N(f), B(g)]  = -2 B(fg)
//   [N(f), N(g)] = [B(f), B(g)] = [B+(f), B+(g)] = 0,
// checked numerically in any representation that can apply B+, N, B.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swnlab/basespace.hpp"
#include "swnlab/swn.hpp"

namespace swnlab {

template <class R>
concept SwnRepresentationLike = requires(const R& r, SwnKind k, const GridFunction& f, const typename R::Vector& v) {
  { r.apply(k, f, v) } -> std::same_as<typename R::Vector>;
  { r.inner(v, v) } -> std::convertible_to<double>;
  { r.identity_times(1.0, v) } -> std::same_as<typename R::Vector>;
  { r.zero() } -> std::same_as<typename R::Vector>;
  { r.in_safe_window(v) } -> std::convertible_to<bool>;
};

inline constexpr double kRenormalization = 2.0;  // c

/// coef * op(phi), or coef * identity when `identity` is set.
struct RelationTerm {
  double coef;
  bool identity = false;
  SwnKind kind = SwnKind::N;
  std::vector<double> phi_values;  // used when !identity
};

struct Relation {
  std::string name;
  SwnKind left, right;
  std::vector<RelationTerm> rhs;
};

/// The six relations for a given pair (phi, psi).
inline std::vector<Relation> swn_relations(const GridFunction& phi, const GridFunction& psi) {
  const auto prod = pointwise_product(phi, psi);
  const std::vector<double> fg(prod.values().begin(), prod.values().end());
  const double c = kRenormalization;
  return {
      {"[B,Bdag]=2c<phi,psi>+4N(phi psi)",
       SwnKind::B,
       SwnKind::Bdag,
       {{2.0 * c * inner(phi, psi), true, SwnKind::N, {}}, {4.0, false, SwnKind::N, fg}}},
      {"[N,Bdag]=2Bdag(phi psi)", SwnKind::N, SwnKind::Bdag, {{2.0, false, SwnKind::Bdag, fg}}},
      {"[N,B]=-2B(phi psi)", SwnKind::N, SwnKind::B, {{-2.0, false, SwnKind::B, fg}}},
      {"[N,N]=0", SwnKind::N, SwnKind::N, {}},
      {"[B,B]=0", SwnKind::B, SwnKind::B, {}},
      {"[Bdag,Bdag]=0", SwnKind::Bdag, SwnKind::Bdag, {}},
  };
}

/// max over test vectors of ||([P(phi), Q(psi)] - rhs) F|| / ||F||.
template <SwnRepresentationLike R>
double commutator_residual(const R& rep, const Relation& rel, const GridFunction& phi, const GridFunction& psi,
                           std::span<const typename R::Vector> tests) {
  double worst = 0.0;
  for (const auto& F : tests) {
    if (!rep.in_safe_window(F))
      throw std::invalid_argument("commutator_residual: test vector outside the safe truncation window");
    auto lhs = rep.apply(rel.left, phi, rep.apply(rel.right, psi, F));
    lhs -= rep.apply(rel.right, psi, rep.apply(rel.left, phi, F));
    for (const auto& t : rel.rhs) {
      if (t.identity) {
        lhs -= rep.identity_times(t.coef, F);
      } else {
        const GridFunction g(phi.space(), t.phi_values);
        lhs.axpy(-t.coef, rep.apply(t.kind, g, F));
      }
    }
    const double norm_f = std::sqrt(rep.inner(F, F));
    if (norm_f == 0.0) continue;
    worst = std::max(worst, std::sqrt(std::max(rep.inner(lhs, lhs), 0.0)) / norm_f);
  }
  return worst;
}

/// Relative mismatch |<A F, G> - <F, A* G>| / max(|lhs|, |rhs|, ||AF|| ||G||).
struct PairingCheck {
  double lhs;
  double rhs;
  double scale;
  double relative() const { return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), scale, 1e-300}); }
};

template <SwnRepresentationLike R>
PairingCheck pairing(const R& rep, SwnKind op, SwnKind adjoint, const GridFunction& phi,
                     const typename R::Vector& F, const typename R::Vector& G) {
  const auto AF = rep.apply(op, phi, F);
  const auto AG = rep.apply(adjoint, phi, G);
  const double lhs = rep.inner(AF, G);
  const double rhs = rep.inner(F, AG);
  const double scale = std::sqrt(std::max(rep.inner(AF, AF), 0.0) * std::max(rep.inner(G, G), 0.0));
  return {lhs, rhs, scale};
}

}  // namespace swnlab
