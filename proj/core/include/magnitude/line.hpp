#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace magnitude::line {

// Closed forms for subsets of the real line. On ℝ, Z(a,c) = Z(a,b) Z(b,c)
// whenever a < b < c, which makes every weighting explicit and positive.

struct LineWeighting {
  double magnitude = 0.0;
  std::vector<double> weights;
};

/// Magnitude and weighting of tA for strictly increasing points:
/// |tA| = 1 + Σ tanh(t Δᵢ / 2), interior weights ½(tanh(tΔ_left/2) + tanh(tΔ_right/2)),
/// end weights ½(1 + tanh(tΔ/2)). Throws DuplicatePoints for non-increasing input.
LineWeighting line_magnitude(std::span<const double> points, double t);

/// Weight measure ½(δ_a + λ_[a,b] + δ_b) of t[a,b], reported as its three masses.
struct IntervalWeightMeasure {
  double left_atom = 0.5;
  double lebesgue_mass = 0.0;
  double right_atom = 0.5;

  double total() const noexcept { return left_atom + lebesgue_mass + right_atom; }
};

/// 1 + t(b − a)/2. Throws ReversedInterval when b < a.
double interval_magnitude(double a, double b, double t);
IntervalWeightMeasure interval_weight_measure(double a, double b, double t);

/// A = [hull.first, hull.second] minus disjoint open gaps.
class GapDecomposition {
 public:
  /// Gaps may come in any order; they are sorted. Throws ReversedInterval for
  /// reversed hulls or gaps, OverlappingGaps when gaps intersect or leave the hull.
  GapDecomposition(std::pair<double, double> hull, std::vector<std::pair<double, double>> gaps);

  std::pair<double, double> hull() const noexcept { return hull_; }
  const std::vector<std::pair<double, double>>& gaps() const noexcept { return gaps_; }
  /// Lebesgue measure: hull length minus total gap length.
  double measure() const noexcept { return measure_; }

 private:
  std::pair<double, double> hull_;
  std::vector<std::pair<double, double>> gaps_;
  double measure_ = 0.0;
};

/// 1 + t vol₁(A)/2 + Σ tanh(t (bᵢ − aᵢ)/2).
double compact_R_magnitude(const GapDecomposition& g, double t);

/// Gaps of the depth-k middle-thirds construction on [0, length], level by level.
GapDecomposition cantor_gaps(unsigned depth, double length);

struct SeriesValue {
  double value = 0.0;
  /// Rigorous bound on the omitted tail.
  double tail_bound = 0.0;
  unsigned terms = 0;
};

/// Magnitude of the length-ℓ ternary Cantor set at scale t:
/// 1 + ½ Σ_{i≥1} 2^i tanh(tℓ / (2·3^i)). Level i contributes one term per each
/// of its 2^(i−1) gaps. With a finite depth the sum stops at i = depth; with
/// no depth it runs until the tail bound (tℓ/2)(2/3)^k (from tanh x ≤ x)
/// drops below `tail_target`.
SeriesValue cantor_magnitude(double length, double t, std::optional<unsigned> depth = std::nullopt,
                             double tail_target = 1e-14);

/// |A ∪ B| for compact A left of B with the given gap: |A| + |B| − 1 + tanh(t·gap/2).
double gap_union_magnitude(double mag_a, double mag_b, double gap, double t);

/// Hull and maximal gaps of a finite point cloud (sorted input not required).
GapDecomposition gaps_from_points(std::vector<double> points);

/// {"hull": [a, b], "gaps": [[a1, b1], ...]}.
GapDecomposition gap_decomposition_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GapDecomposition& g);

}  // namespace magnitude::line
