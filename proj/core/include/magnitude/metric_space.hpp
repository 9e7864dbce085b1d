#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magnitude/error.hpp"

namespace magnitude {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Rejection raised by `validate_metric`. `witness()` names the offending
/// indices: (i) for a diagonal entry, (i, j) for an entry pair, and (i, j, k)
/// for a triangle violation d(i,j) > d(i,k) + d(k,j).
class MetricAxiomError : public Error {
 public:
  MetricAxiomError(ErrorCode code, std::vector<std::size_t> witness, const std::string& message)
      : Error(code, message), witness_(std::move(witness)) {}

  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

struct MetricTolerance {
  /// Triangle slack, relative to the largest distance.
  double triangle_relative = 1e-12;
};

/// Norms used by coordinate-built spaces.
enum class Norm { L1, L2 };

/// A classical finite metric space: symmetric, separated, finite distances
/// obeying the triangle inequality. Instances are immutable once built.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return static_cast<std::size_t>(distances_.rows()); }
  const Matrix& distances() const noexcept { return distances_; }
  double operator()(std::size_t i, std::size_t j) const {
    return distances_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double diameter() const;
  /// Smallest off-diagonal distance; +inf for a one-point space.
  double min_separation() const;

  /// Subspace on the given (distinct) indices, in the given order.
  FiniteMetricSpace subspace(std::span<const std::size_t> indices) const;

  friend FiniteMetricSpace validate_metric(const Matrix& raw, std::vector<std::string> labels,
                                           const MetricTolerance& tol);
  friend FiniteMetricSpace scale_space(const FiniteMetricSpace& space, double t);
  friend FiniteMetricSpace l1_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b);
  friend FiniteMetricSpace space_from_points(const Matrix& points, Norm norm);

 private:
  FiniteMetricSpace(Matrix distances, std::vector<std::string> labels)
      : distances_(std::move(distances)), labels_(std::move(labels)) {}

  Matrix distances_;
  std::vector<std::string> labels_;
};

/// Certifies all metric axioms. Checks run in the order: shape, finiteness,
/// diagonal, sign, symmetry, separation, triangle; the first failure throws
/// MetricAxiomError with its witness. Triangle triples are scanned in
/// lexicographic (i, j, k) order.
FiniteMetricSpace validate_metric(const Matrix& raw, std::vector<std::string> labels = {},
                                  const MetricTolerance& tol = {});

/// First triple (i, j, k) in lexicographic order with d(i,j) > d(i,k) + d(k,j) + slack.
std::optional<std::array<std::size_t, 3>> find_triangle_violation(const Matrix& d, double slack);

/// tA: every distance multiplied by t > 0. Labels are kept.
FiniteMetricSpace scale_space(const FiniteMetricSpace& space, double t);

/// A ×₁ B with summed distances; point (a, b) sits at index a * |B| + b.
FiniteMetricSpace l1_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

/// Rows of `points` are coordinates; distances come from the chosen norm, so
/// the triangle inequality holds by construction and only separation is checked.
FiniteMetricSpace space_from_points(const Matrix& points, Norm norm);

/// Points on the real line with d = |x - y|.
FiniteMetricSpace points_1d(std::span<const double> coords);

}  // namespace magnitude
