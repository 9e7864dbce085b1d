#pragma once

// Reference computations that share no code with the library paths they check.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "magnitude/metric_space.hpp"
#include "magnitude/pixels.hpp"

namespace oracle {

using magnitude::Matrix;
using magnitude::Rational;
using magnitude::pixels::Cell;
using magnitude::pixels::PixelSet;

/// First lexicographic (i, j, k) with d(i,j) > d(i,k) + d(k,j) + slack, by plain triple loop.
std::optional<std::array<std::size_t, 3>> triangle_violation(const Matrix& d, double slack);

/// Σw for (exp(−t d)) w = 1, by Gaussian elimination with partial pivoting in long double.
long double dense_magnitude(const Matrix& d, double t);

/// 1 + Σ tanh(t Δ/2) over sorted coordinates.
double line_closed_form(std::vector<double> coords, double t);

/// Monotone-path reachability by dynamic programming over the bounding box of
/// each pair (one coordinate step at a time or diagonal, toward the target).
bool l1_convex_dp(const PixelSet& p);

/// vol(P + rQⁿ) by inclusion–exclusion over the dilated boxes (small sets only).
Rational dilation_volume_ie(const PixelSet& p, const Rational& r);

/// All fixed polyominoes with `size` cells, normalised to touch both axes.
std::vector<PixelSet> fixed_polyominoes(unsigned size);

/// Grid points of spacing 1/per_unit (in cell units) that lie in the closed set.
Matrix pixel_grid_points(const PixelSet& p, unsigned per_unit);

/// Seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  /// Strictly increasing coordinates with gaps at least min_gap.
  std::vector<double> line_points(std::size_t n, double min_gap, double max_gap);
  /// n points uniform in [0, side]^dim.
  Matrix cloud(std::size_t n, unsigned dim, double side);
  /// Connected pixel set grown cell by cell.
  PixelSet grown_pixels(unsigned dim, std::size_t cells);
  /// Orthogonally convex staircase (Young-diagram) polyomino.
  PixelSet staircase(std::size_t columns, std::size_t max_height);

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
