#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "magnitude/dimension.hpp"

using namespace magnitude;

TEST(Dimension, IntervalSlopeNearOne) {
  std::vector<double> x;
  for (int i = 0; i <= 1000; ++i) x.push_back(i / 1000.0);
  auto e = dimension_estimate(points_1d(x), {50.0, 500.0}, 8);
  EXPECT_NEAR(e.slope, 1.0, 0.05);
  EXPECT_EQ(e.t.size(), 8u);
  EXPECT_EQ(std::count(e.used.begin(), e.used.end(), true), 6);
  EXPECT_TRUE(e.within_resolution);
}

TEST(Dimension, SinglePointIsFlat) {
  std::vector<double> x{0.0};
  auto e = dimension_estimate(points_1d(x), {1.0, 100.0}, 8);
  EXPECT_NEAR(e.slope, 0.0, 1e-12);
}

TEST(Dimension, WindowTooNarrow) {
  std::vector<double> x{0.0, 1.0};
  try {
    dimension_estimate(points_1d(x), {1.0, 10.0}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooNarrow);
  }
}

TEST(Dimension, CoveringGrowthOnSquareGrid) {
  DimensionOptions opt;
  opt.method = DimensionMethod::CoveringGrowth;
  auto e = dimension_estimate(box_grid_family({1.0, 1.0}, Norm::L2), 20, {2.0, 8.0}, 6, opt);
  EXPECT_NEAR(e.slope, 2.0, 0.35);
  EXPECT_EQ(e.method, DimensionMethod::CoveringGrowth);
}

TEST(Dimension, ThreadsDoNotChangeResult) {
  std::vector<double> x;
  for (int i = 0; i <= 100; ++i) x.push_back(std::sqrt(i / 100.0));
  DimensionOptions one, many;
  one.threads = 1;
  many.threads = 3;
  auto a = dimension_estimate(points_1d(x), {5.0, 50.0}, 7, one);
  auto b = dimension_estimate(points_1d(x), {5.0, 50.0}, 7, many);
  EXPECT_EQ(a.quantity, b.quantity);
  EXPECT_EQ(a.slope, b.slope);
}

TEST(Dimension, DiversityGrowsWithScale) {
  std::vector<double> x{0, 0.3, 1, 1.1, 2.5};
  auto e = dimension_estimate(points_1d(x), {0.1, 10.0}, 12);
  for (std::size_t i = 1; i < e.quantity.size(); ++i) EXPECT_GE(e.quantity[i], e.quantity[i - 1] - 1e-9);
}
