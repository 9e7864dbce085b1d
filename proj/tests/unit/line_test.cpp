#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "magnitude/engine.hpp"
#include "magnitude/line.hpp"
#include "oracles.hpp"

using namespace magnitude;
using namespace magnitude::line;

namespace {
template <class F>
ErrorCode code_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidInput;
}
}  // namespace

TEST(LineMagnitude, Pinned) {
  std::vector<double> two{0, 1};
  auto w = line_magnitude(two, 1.0);
  EXPECT_NEAR(w.magnitude, 1.4621171573, 1e-10);
  EXPECT_DOUBLE_EQ(w.weights[0], 0.5 * (1 + std::tanh(0.5)));
  EXPECT_DOUBLE_EQ(w.weights[1], w.weights[0]);

  std::vector<double> three{0, 1, 3};
  EXPECT_NEAR(line_magnitude(three, 1.0).magnitude, 2.2237113133, 1e-10);
  std::vector<double> one{4.0};
  EXPECT_EQ(line_magnitude(one, 1.0).magnitude, 1.0);
}

TEST(LineMagnitude, RejectsDuplicates) {
  std::vector<double> x{0, 1, 1};
  EXPECT_EQ(code_of([&] { line_magnitude(x, 1.0); }), ErrorCode::DuplicatePoints);
  std::vector<double> y{1, 0};
  EXPECT_EQ(code_of([&] { line_magnitude(y, 1.0); }), ErrorCode::DuplicatePoints);
}

TEST(LineMagnitude, WeightsSolveTheSystem) {
  oracle::Gen g(5);
  auto x = g.line_points(30, 0.01, 1.0);
  auto w = line_magnitude(x, 2.0);
  auto ref = weighting(points_1d(x), 2.0);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(w.weights[i], ref.weighting[static_cast<Eigen::Index>(i)], 1e-12);
}

TEST(Interval, ClosedForm) {
  EXPECT_DOUBLE_EQ(interval_magnitude(0, 2, 1), 2.0);
  EXPECT_DOUBLE_EQ(interval_magnitude(5, 5, 7), 1.0);
  EXPECT_DOUBLE_EQ(interval_magnitude(0, 1, 3), 2.5);
  EXPECT_EQ(code_of([] { interval_magnitude(1, 0, 1); }), ErrorCode::ReversedInterval);
  auto m = interval_weight_measure(0, 2, 1);
  EXPECT_DOUBLE_EQ(m.left_atom, 0.5);
  EXPECT_DOUBLE_EQ(m.lebesgue_mass, 1.0);
  EXPECT_DOUBLE_EQ(m.total(), 2.0);
}

TEST(CompactR, Gaps) {
  GapDecomposition g({0, 3}, {{1, 2}});
  EXPECT_NEAR(compact_R_magnitude(g, 1.0), 2.4621171573, 1e-10);
  EXPECT_DOUBLE_EQ(g.measure(), 2.0);
  EXPECT_DOUBLE_EQ(compact_R_magnitude(GapDecomposition({0, 2}, {}), 1.0), 2.0);
}

TEST(CompactR, InvalidGaps) {
  EXPECT_EQ(code_of([] { GapDecomposition({0, 3}, {{1, 2}, {1.5, 2.5}}); }), ErrorCode::OverlappingGaps);
  EXPECT_EQ(code_of([] { GapDecomposition({0, 3}, {{2, 4}}); }), ErrorCode::OverlappingGaps);
  EXPECT_EQ(code_of([] { GapDecomposition({0, 3}, {{2, 1}}); }), ErrorCode::ReversedInterval);
  EXPECT_EQ(code_of([] { GapDecomposition({3, 0}, {}); }), ErrorCode::ReversedInterval);
}

TEST(CompactR, GapsAreSorted) {
  GapDecomposition g({0, 10}, {{6, 7}, {1, 2}, {3, 5}});
  EXPECT_EQ(g.gaps().front().first, 1.0);
  EXPECT_EQ(g.gaps().back().first, 6.0);
  EXPECT_DOUBLE_EQ(g.measure(), 6.0);
}

TEST(Cantor, SeriesValues) {
  auto s = cantor_magnitude(1.0, 1.0);
  EXPECT_NEAR(s.value, 1.4983504316, 1e-10);
  EXPECT_LT(s.tail_bound, 1e-14);
  EXPECT_DOUBLE_EQ(cantor_magnitude(1.0, 1.0, 1u).value, 1 + std::tanh(1.0 / 6.0));
  EXPECT_NEAR(cantor_magnitude(1e-12, 1.0).value, 1.0, 1e-11);
}

TEST(Cantor, GapListMatchesSeriesAtEveryDepth) {
  // The depth-k union of intervals keeps measure (2/3)^k, which the truncated
  // series leaves out.
  for (unsigned k = 1; k <= 12; ++k) {
    const auto g = cantor_gaps(k, 1.0);
    EXPECT_EQ(g.gaps().size(), (1u << k) - 1);
    EXPECT_NEAR(g.measure(), std::pow(2.0 / 3.0, k), 1e-12);
    EXPECT_NEAR(compact_R_magnitude(g, 1.0), cantor_magnitude(1.0, 1.0, k).value + g.measure() / 2, 1e-12) << k;
  }
  EXPECT_NEAR(compact_R_magnitude(cantor_gaps(12, 1.0), 1.0), cantor_magnitude(1.0, 1.0).value, 1e-10);
}

TEST(Cantor, TailBoundHolds) {
  const double full = cantor_magnitude(1.0, 3.0).value;
  for (unsigned k = 1; k < 20; ++k) {
    auto s = cantor_magnitude(1.0, 3.0, k);
    EXPECT_LE(full - s.value, s.tail_bound + 1e-15) << k;
    EXPECT_GE(full - s.value, 0.0);
  }
}

TEST(GapUnion, Formula) {
  EXPECT_NEAR(gap_union_magnitude(1.5, 1.5, 2, 1), 2 + std::tanh(1.0), 1e-15);
  EXPECT_NEAR(2 + std::tanh(1.0), 2.7615942, 1e-7);
  EXPECT_DOUBLE_EQ(gap_union_magnitude(2.0, 1.25, 0, 1), 2.25);
  std::vector<double> x{0, 0.7};
  EXPECT_DOUBLE_EQ(gap_union_magnitude(1, 1, 0.7, 2), line_magnitude(x, 2).magnitude);
  EXPECT_EQ(code_of([] { gap_union_magnitude(1, 1, -0.1, 1); }), ErrorCode::NegativeGap);
}

TEST(GapUnion, RepeatedUnionReproducesCompactR) {
  oracle::Gen gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = gen.uniform(0.1, 5.0);
    std::vector<std::pair<double, double>> pieces;
    double at = 0.0;
    for (std::size_t k = gen.index(1, 8); k-- > 0;) {
      const double len = gen.coin(0.3) ? 0.0 : gen.uniform(0.0, 2.0);
      pieces.emplace_back(at, at + len);
      at += len + gen.uniform(0.01, 1.0);
    }
    std::vector<std::pair<double, double>> gaps;
    double acc = interval_magnitude(pieces[0].first, pieces[0].second, t);
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      gaps.emplace_back(pieces[i - 1].second, pieces[i].first);
      acc = gap_union_magnitude(acc, interval_magnitude(pieces[i].first, pieces[i].second, t),
                                pieces[i].first - pieces[i - 1].second, t);
    }
    GapDecomposition g({pieces.front().first, pieces.back().second}, gaps);
    EXPECT_NEAR(compact_R_magnitude(g, t), acc, 1e-12 * acc);
  }
}

TEST(GapsFromPoints, InfersGaps) {
  auto g = gaps_from_points({3, 0, 1});
  EXPECT_EQ(g.hull(), (std::pair<double, double>{0, 3}));
  ASSERT_EQ(g.gaps().size(), 2u);
  EXPECT_DOUBLE_EQ(g.measure(), 0.0);
  std::vector<double> x{0, 1, 3};
  EXPECT_NEAR(compact_R_magnitude(g, 1.0), line_magnitude(x, 1.0).magnitude, 1e-15);
}

TEST(GapJson, RoundTrip) {
  GapDecomposition g({0, 3}, {{1, 2}});
  auto again = gap_decomposition_from_json(to_json(g));
  EXPECT_EQ(again.gaps(), g.gaps());
  EXPECT_EQ(again.hull(), g.hull());
}
