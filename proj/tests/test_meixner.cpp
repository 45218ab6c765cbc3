#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "swnlab/meixner.hpp"

using namespace swnlab;

namespace {

// Sum over all set partitions of {0..k-1} of the product of block cumulants.
double partition_sum(const std::vector<double>& kappas, int k) {
  std::vector<int> block_sizes;
  std::function<double(int)> rec = [&](int i) -> double {
    if (i == k) {
      double p = 1.0;
      for (int b : block_sizes) p *= kappas[static_cast<std::size_t>(b - 1)];
      return p;
    }
    double s = 0.0;
    // index loop: the recursion below appends to block_sizes
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
      ++block_sizes[b];
      s += rec(i + 1);
      --block_sizes[b];
    }
    block_sizes.push_back(1);
    s += rec(i + 1);
    block_sizes.pop_back();
    return s;
  };
  return rec(0);
}

}  // namespace

TEST(Special, GammaModulusClosedForms) {
  for (double y : {0.0, 0.3, 1.0, 2.5, 6.0}) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(abs_gamma_sq(0.5, y), pi / std::cosh(pi * y), 1e-13 * pi);
    const double ref = y == 0.0 ? 1.0 : pi * y / std::sinh(pi * y);
    EXPECT_NEAR(abs_gamma_one_plus_iy_sq(y), ref, 1e-14);
    EXPECT_NEAR(abs_gamma_sq(1.0, y), ref, 1e-13);
  }
  EXPECT_NEAR(std::exp(log_gamma({5.0, 0.0}).real()), 24.0, 1e-12);
  EXPECT_DOUBLE_EQ(rising_factorial(0.5, 3), 0.5 * 1.5 * 2.5);
}

TEST(LevySpec, RegimesAndPascalParameter) {
  EXPECT_EQ(LevyMeasureSpec::make(0.0).regime, Regime::Meixner);
  EXPECT_EQ(LevyMeasureSpec::make(1.999).regime, Regime::Meixner);
  EXPECT_EQ(LevyMeasureSpec::make(2.0).regime, Regime::Gamma);
  const auto pascal = LevyMeasureSpec::make(3.0);
  EXPECT_EQ(pascal.regime, Regime::Pascal);
  EXPECT_NEAR(pascal.p, 0.14589803375031546, 1e-15);
  EXPECT_THROW(LevyMeasureSpec::make(-1.0), std::domain_error);
}

TEST(LevyDensity, GammaPointValue) {
  const auto spec = LevyMeasureSpec::make(2.0);
  EXPECT_NEAR(levy_density(spec, LevyKind::NuTilde, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(levy_density(spec, LevyKind::NuTilde, -1.0), 0.0);
  EXPECT_NEAR(levy_density(spec, LevyKind::Nu, 2.0), std::exp(-2.0) / 2.0, 1e-15);
}

TEST(LevyDensity, NuUndefinedAtOrigin) {
  EXPECT_THROW(levy_density(LevyMeasureSpec::make(1.0), LevyKind::Nu, 0.0), std::domain_error);
  EXPECT_THROW(levy_density(LevyMeasureSpec::make(3.0), LevyKind::NuTilde, 1.0), std::domain_error);
  EXPECT_THROW(levy_atom(LevyMeasureSpec::make(1.0), LevyKind::Nu, 1), std::domain_error);
  EXPECT_THROW(levy_atom(LevyMeasureSpec::make(3.0), LevyKind::Nu, 0), std::domain_error);
}

TEST(LevyDensity, SymmetricAtBetaZero) {
  const auto spec = LevyMeasureSpec::make(0.0);
  for (double s : {0.2, 1.0, 3.0})
    EXPECT_NEAR(levy_density(spec, LevyKind::NuTilde, s), levy_density(spec, LevyKind::NuTilde, -s), 1e-15);
  // beta = 0: density (1/pi) |Gamma(1 + i s/2)|^2 = (s/2) / sinh(pi s / 2)
  EXPECT_NEAR(levy_density(spec, LevyKind::NuTilde, 1.0), 0.5 / std::sinh(std::numbers::pi / 2.0), 1e-14);
}

TEST(LevyMoments, TotalMassIsOneInEveryRegime) {
  for (double beta : {0.0, 1.0, 2.0, 3.0, 5.0})
    EXPECT_NEAR(levy_reference_moment(LevyMeasureSpec::make(beta), 0), 1.0, 1e-9) << beta;
}

TEST(LevyMoments, AgreeWithJacobiMatrix) {
  for (double beta : {0.0, 1.0, 3.0})
    for (int j = 0; j <= 6; ++j) {
      const double exact = spectral_moment(beta, j);
      EXPECT_NEAR(levy_reference_moment(LevyMeasureSpec::make(beta), j), exact,
                  1e-7 * std::max(1.0, std::abs(exact)))
          << beta << " " << j;
    }
}

TEST(Cumulants, DefinitionOnGrid) {
  const auto g = GridSpace::make(3, 0.5);
  const GridFunction phi(g, {0.7, -1.2, 0.4});
  EXPECT_EQ(cumulant(1.3, phi, 1), 0.0);
  EXPECT_NEAR(cumulant(1.3, phi, 2), power_integral(phi, 2), 1e-15);
  EXPECT_NEAR(cumulant(1.3, phi, 3), 1.3 * power_integral(phi, 3), 1e-15);
  EXPECT_NEAR(cumulant(1.3, phi, 4), (1.3 * 1.3 + 2.0) * power_integral(phi, 4), 1e-14);
  EXPECT_THROW(cumulant(1.0, phi, 0), std::invalid_argument);
  EXPECT_EQ(cumulants(1.0, phi, 5).size(), 5u);
}

TEST(Cumulants, MomentRecursionMatchesSetPartitionEnumeration) {
  const std::vector<double> kappas{0.3, 1.1, -0.4, 2.0, 0.7, -1.3, 0.9, 0.25};
  for (int k = 0; k <= 8; ++k) {
    const double oracle = partition_sum(kappas, k);
    EXPECT_NEAR(moments_from_cumulants(kappas, k), oracle, 1e-12 * std::max(1.0, std::abs(oracle))) << k;
  }
}

TEST(Cumulants, CenteredFourthMoment) {
  const std::vector<double> kappas{0.0, 1.5, 0.2, 0.9};
  EXPECT_NEAR(moments_from_cumulants(kappas, 4), 0.9 + 3.0 * 1.5 * 1.5, 1e-14);
  EXPECT_THROW(moments_from_cumulants(kappas, 5), std::invalid_argument);
}

TEST(Gram, OrthogonalityUnderLevyMeasure) {
  for (double beta : {0.0, 1.0, 2.0, 3.0}) {
    const auto gram = gram_check_I3(beta, 5);
    for (std::size_t m = 1; m <= 5; ++m)
      for (std::size_t n = 1; n <= 5; ++n) {
        const double dm = factorial(m - 1) * factorial(m), dn = factorial(n - 1) * factorial(n);
        const double expected = m == n ? dm : 0.0;
        EXPECT_NEAR(gram[m - 1][n - 1], expected, 1e-6 * std::sqrt(dm * dn)) << beta << " " << m << " " << n;
      }
  }
  EXPECT_THROW(gram_check_I3(1.0, 0), std::invalid_argument);
  EXPECT_THROW(gram_check_I3(1.0, 9), std::invalid_argument);
}

TEST(Marginal, NormalizedCenteredWithUnitVariancePerArea) {
  for (double beta : {0.0, 1.0, 2.0, 3.0, 5.0})
    for (double area : {0.5, 1.0, 2.0}) {
      const auto law = marginal_law(beta, area);
      EXPECT_NEAR(law.moment(0), 1.0, 1e-8) << beta << " " << area;
      EXPECT_NEAR(law.moment(1), 0.0, 1e-7 * std::sqrt(area)) << beta << " " << area;
      EXPECT_NEAR(law.moment(2), area, 1e-7 * area) << beta << " " << area;
      // third central moment equals the third cumulant beta * area
      EXPECT_NEAR(law.moment(3), beta * area, 1e-6 * std::max(1.0, beta * area)) << beta << " " << area;
    }
}

TEST(Marginal, GammaIsShiftedGammaDistribution) {
  const auto law = marginal_law(2.0, 1.5);
  for (double x : {0.2, 1.0, 3.0}) {
    const double ref = std::pow(x, 0.5) * std::exp(-x) / std::tgamma(1.5);
    EXPECT_NEAR(law.density(x - 1.5), ref, 1e-14);
  }
  EXPECT_EQ(law.density(-2.0), 0.0);
}

TEST(Marginal, PascalAtomsFormNegativeBinomial) {
  const auto law = marginal_law(3.0, 2.0);
  ASSERT_TRUE(law.atomic());
  const double p = law.spec().p;
  const auto atoms = law.atoms(3);
  // NB(r=2, p): (1-p)^2, 2 p (1-p)^2, 3 p^2 (1-p)^2, 4 p^3 (1-p)^2
  const double q2 = (1.0 - p) * (1.0 - p);
  EXPECT_NEAR(atoms[0].mass, q2, 1e-15);
  EXPECT_NEAR(atoms[1].mass, 2.0 * p * q2, 1e-15);
  EXPECT_NEAR(atoms[2].mass, 3.0 * p * p * q2, 1e-15);
  EXPECT_NEAR(atoms[3].mass, 4.0 * p * p * p * q2, 1e-15);
  EXPECT_NEAR(atoms[1].support - atoms[0].support, std::sqrt(5.0), 1e-14);
  EXPECT_THROW(law.density(0.0), std::domain_error);
  EXPECT_THROW(marginal_law(1.0, 1.0).atom(0), std::domain_error);
  EXPECT_THROW(marginal_law(1.0, 0.0), std::domain_error);
}
