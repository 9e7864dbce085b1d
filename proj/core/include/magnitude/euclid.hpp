#pragma once

#include <nlohmann/json_fwd.hpp>

namespace magnitude::euclid {

/// Volume of the Euclidean unit n-ball, π^{n/2} / Γ(n/2 + 1).
double unit_ball_volume(unsigned n);

/// |B^n_R| for n ∈ {3, 5}. n = 3: 1 + 2R + R² + R³/6;
/// n = 5: (24 + 72R + 72R² + 35R³ + 9R⁴ + R⁵) / (8(R + 3)) + R⁵/120.
/// Throws UnsupportedDimension for other n.
double ball_magnitude(unsigned n, double radius);

/// Geodesic n-sphere of radius R, n even:
/// 2/(1 + e^{−πR}) · ∏_{odd j < n} (1 + (R/j)²). Throws OddDimension.
double sphere_magnitude_even(unsigned n, double radius);

/// Leading behaviour |tA| ~ c tⁿ for A ⊆ (ℝⁿ, ‖·‖_p) of the given volume.
struct AsymptoticPrediction {
  double leading_coefficient = 0.0;
  unsigned n = 0;
  unsigned p = 2;
  double volume = 0.0;
  /// The divisor: n!·ωₙ for p = 2, 2ⁿ for p = 1.
  double normalizer = 1.0;
};

/// p ∈ {1, 2}; throws InvalidInput otherwise or for nonpositive volume.
AsymptoticPrediction asymptotic_prediction(unsigned n, unsigned p, double volume);

struct ConjectureComparison {
  double exact = 0.0;
  /// Σᵢ Vᵢ(B^n_R) / (i! ωᵢ), Vᵢ the Euclidean intrinsic volumes.
  double conjectured = 0.0;
  /// exact − conjectured.
  double difference = 0.0;
};

ConjectureComparison conjecture_compare(unsigned n, double radius);

nlohmann::json to_json(const AsymptoticPrediction& a);
nlohmann::json to_json(const ConjectureComparison& c);

}  // namespace magnitude::euclid
