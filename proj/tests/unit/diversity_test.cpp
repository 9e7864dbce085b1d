#include <gtest/gtest.h>

#include <cmath>

#include "magnitude/diversity.hpp"
#include "magnitude/engine.hpp"
#include "oracles.hpp"

using namespace magnitude;

namespace {

FiniteMetricSpace graph(const std::string& name) { return generate_space({.params = named_graph(name), .seed = {}}); }

FiniteMetricSpace equidistant(std::size_t n, double d) {
  Matrix m = Matrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), d);
  m.diagonal().setZero();
  return validate_metric(m);
}

// Grid search over the 2-simplex for three points.
double simplex_grid_best(const FiniteMetricSpace& a, double t, int steps) {
  const Matrix z = similarity_matrix(a, t).entries;
  double best = 0.0;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j) {
      Vector mu(3);
      mu << i, j, steps - i - j;
      mu /= steps;
      best = std::max(best, 1.0 / mu.dot(z * mu));
    }
  return best;
}

}  // namespace

TEST(Diversity, TwoPoints) {
  std::vector<double> x{0, 1};
  auto r = max_diversity(points_1d(x), 1.0);
  EXPECT_NEAR(r.value, 2.0 / (1.0 + std::exp(-1.0)), 1e-12);
  EXPECT_NEAR(r.optimizer.weights[0], 0.5, 1e-12);
  EXPECT_NEAR(max_diversity_exact(points_1d(x), 1.0).value, r.value, 1e-12);
}

TEST(Diversity, OnePoint) {
  std::vector<double> x{2.0};
  EXPECT_DOUBLE_EQ(max_diversity(points_1d(x), 1.0).value, 1.0);
}

TEST(Diversity, LineEqualsMagnitude) {
  std::vector<double> x{0, 1, 3};
  EXPECT_NEAR(max_diversity(points_1d(x), 1.0).value, 2.2237113133, 1e-9);
}

TEST(Diversity, EquidistantTriple) {
  auto a = equidistant(3, 1.0);
  const double expect = 3.0 / (1.0 + 2.0 * std::exp(-1.0));
  EXPECT_NEAR(max_diversity_exact(a, 1.0).value, expect, 1e-12);
  EXPECT_NEAR(max_diversity(a, 1.0).value, expect, 1e-12);
}

TEST(Diversity, K32IsAlwaysDefined) {
  auto r = max_diversity_exact(graph("k32"), 0.1);
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_GE(r.value, 1.0);
  EXPECT_NEAR(max_diversity(graph("k32"), 0.1).value, r.value, 1e-7);
}

TEST(Diversity, MatchesGridSearchOnTriples) {
  oracle::Gen g(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = space_from_points(g.cloud(3, 2, 2.0), Norm::L2);
    const double t = g.uniform(0.2, 3.0);
    const double grid = simplex_grid_best(a, t, 400);
    const double fw = max_diversity(a, t).value;
    EXPECT_GE(fw, grid - 1e-12);
    EXPECT_LE(fw, grid + 1e-3);
  }
}

TEST(Diversity, PureFrankWolfeAgreesWithPolish) {
  oracle::Gen g(43);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = space_from_points(g.cloud(10, 2, 3.0), Norm::L1);
    DiversityOptions pure;
    pure.polish = false;
    pure.tol = 1e-11;
    const double exact = max_diversity_exact(a, 1.0).value;
    EXPECT_NEAR(max_diversity(a, 1.0, pure).value, exact, 1e-7);
    EXPECT_NEAR(max_diversity(a, 1.0).value, exact, 1e-7);
  }
}

TEST(Diversity, NonConvergenceReported) {
  oracle::Gen g(47);
  auto a = space_from_points(g.cloud(30, 2, 3.0), Norm::L2);
  DiversityOptions opt;
  opt.polish = false;
  opt.max_iterations = 3;
  try {
    max_diversity(a, 1.0, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvergence);
  }
  opt.throw_on_nonconvergence = false;
  EXPECT_FALSE(max_diversity(a, 1.0, opt).converged);
}

TEST(Diversity, ExactRefusesLargeInput) {
  oracle::Gen g(53);
  try {
    max_diversity_exact(space_from_points(g.cloud(16, 1, 10.0), Norm::L1), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(Diversity, UniformIsOptimalOnHomogeneousSpaces) {
  for (const char* name : {"cycle:6", "complete:4", "cycle:5"}) {
    auto a = graph(name);
    const Matrix z = similarity_matrix(a, 0.8).entries;
    const Vector uniform = Vector::Constant(z.rows(), 1.0 / static_cast<double>(z.rows()));
    EXPECT_LE(diversity_kkt_gap(z, uniform), 1e-9) << name;
  }
}

TEST(Covering, Examples) {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  auto r = covering_number(points_1d(grid), 0.25);
  EXPECT_EQ(r.number, 2u);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(covering_number(points_1d(grid), 2.0).number, 1u);

  auto c = covering_number(points_1d(cantor_endpoints(3, 1.0)), 1.0 / 54.0);
  // One group per depth-3 interval: its two endpoints are exactly 2ε apart.
  EXPECT_EQ(c.number, 8u);
  EXPECT_EQ(c.lower_bound, 8u);
  EXPECT_EQ(covering_number(points_1d(cantor_endpoints(3, 1.0)), 1.0 / 60.0).number, 16u);
}

TEST(Covering, ClustersAreValid) {
  oracle::Gen g(59);
  auto a = space_from_points(g.cloud(60, 2, 4.0), Norm::L2);
  auto r = covering_number(a, 0.5);
  std::vector<int> seen(a.size(), 0);
  for (const auto& c : r.clusters)
    for (auto i : c) {
      ++seen[i];
      for (auto j : c) EXPECT_LE(a(i, j), 1.0 + 1e-12);
    }
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_LE(r.lower_bound, r.number);
}
