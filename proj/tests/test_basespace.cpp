#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "swnlab/basespace.hpp"

using namespace swnlab;

namespace {

GridFunction random_function(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(g->size());
  for (auto& x : v) x = u(rng);
  return GridFunction(g, v);
}

}  // namespace

TEST(GridSpace, RejectsInvalidConstruction) {
  EXPECT_THROW(GridSpace(0, 1.0), std::invalid_argument);
  EXPECT_THROW(GridSpace(3, 0.0), std::invalid_argument);
  EXPECT_THROW(GridSpace(3, -1.0), std::invalid_argument);
  EXPECT_THROW(GridSpace(std::vector<std::string>{"a", "a"}, 1.0), std::invalid_argument);
  EXPECT_THROW(GridSpace(2, 1.0, 0), std::invalid_argument);
}

TEST(GridSpace, DefaultAtomIdsAreUnique) {
  const GridSpace g(4, 0.25, 2);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.dim(), 2);
  EXPECT_EQ(g.atoms().front(), "x0");
  EXPECT_EQ(g.atoms().back(), "x3");
}

TEST(GridFunction, NeedsOneValuePerAtom) {
  const auto g = GridSpace::make(3, 1.0);
  EXPECT_THROW(GridFunction(g, {1.0, 2.0}), std::invalid_argument);
}

TEST(Inner, ZeroFunction) {
  const auto g = GridSpace::make(3, 0.7);
  const auto z = GridFunction::constant(g, 0.0);
  EXPECT_EQ(inner(z, z), 0.0);
}

TEST(Inner, TwoAtomExample) {
  const auto g = GridSpace::make(2, 0.5);
  const GridFunction f(g, {1.0, 2.0}), h(g, {3.0, 4.0});
  // direct sum: 0.5 * (1*3 + 2*4)
  EXPECT_DOUBLE_EQ(inner(f, h), 5.5);
}

TEST(Inner, SymmetricBilinearPositive) {
  const auto g = GridSpace::make(5, 0.3);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_function(g, rng), h = random_function(g, rng), k = random_function(g, rng);
    EXPECT_DOUBLE_EQ(inner(f, h), inner(h, f));
    std::vector<double> sum(g->size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = 2.0 * f[i] + h[i];
    EXPECT_NEAR(inner(GridFunction(g, sum), k), 2.0 * inner(f, k) + inner(h, k), 1e-12);
    EXPECT_GT(inner(f, f), 0.0);
  }
}

TEST(Inner, MismatchedSpacesThrow) {
  const auto a = GridSpace::make(2, 1.0);
  const auto b = GridSpace::make(2, 0.5);
  EXPECT_THROW(inner(GridFunction::constant(a, 1.0), GridFunction::constant(b, 1.0)), std::domain_error);
  EXPECT_THROW(pointwise_product(GridFunction::constant(a, 1.0), GridFunction::constant(b, 1.0)), std::domain_error);
}

TEST(PointwiseProduct, Examples) {
  const auto g = GridSpace::make(2, 1.0);
  const GridFunction f(g, {1.0, 2.0}), h(g, {3.0, 4.0});
  const auto p = pointwise_product(f, h);
  EXPECT_EQ(p[0], 3.0);
  EXPECT_EQ(p[1], 8.0);
  const auto one = GridFunction::constant(g, 1.0);
  const auto q = pointwise_product(f, one);
  EXPECT_EQ(q[0], f[0]);
  EXPECT_EQ(q[1], f[1]);
}

TEST(PointwiseProduct, CommutesAndMultiplicationIsSymmetric) {
  const auto g = GridSpace::make(4, 0.8);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_function(g, rng), h = random_function(g, rng), k = random_function(g, rng);
    const auto fh = pointwise_product(f, h), hf = pointwise_product(h, f);
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_EQ(fh[i], hf[i]);
    EXPECT_NEAR(inner(pointwise_product(f, h), k), inner(f, pointwise_product(h, k)), 1e-12);
  }
}

TEST(PowerIntegral, MatchesDirectSum) {
  const auto g = GridSpace::make(3, 0.5);
  const GridFunction f(g, {0.7, -1.2, 0.4});
  EXPECT_NEAR(power_integral(f, 2), 0.5 * (0.49 + 1.44 + 0.16), 1e-15);
  EXPECT_NEAR(power_integral(f, 3), 0.5 * (0.343 - 1.728 + 0.064), 1e-15);
}
