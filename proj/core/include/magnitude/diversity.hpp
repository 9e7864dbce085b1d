#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "magnitude/metric_space.hpp"

namespace magnitude {

/// A probability vector together with the indices where it is positive.
struct SimplexDistribution {
  std::vector<double> weights;
  std::vector<std::size_t> support;
};

struct DiversityOptions {
  /// Stop once the Frank–Wolfe gap m − minᵢ (Zμ)ᵢ drops to this, m = μᵀZμ.
  double tol = 1e-9;
  std::size_t max_iterations = 100000;
  /// Periodically solve Z_S x = 1 on the current support S and jump to
  /// x / Σx when that is a certified optimum.
  bool polish = true;
  /// Throw NonConvergence when the iteration budget runs out.
  bool throw_on_nonconvergence = true;
};

struct DiversityResult {
  /// 1 / (μᵀZμ) at the optimiser.
  double value = 0.0;
  SimplexDistribution optimizer;
  /// max(m − minᵢ (Zμ)ᵢ, max_{i∈S} (Zμ)ᵢ − m): both halves of the KKT conditions.
  double kkt_gap = 0.0;
  std::size_t iterations = 0;
  /// A direction of nonpositive curvature was met, so the objective may be nonconvex.
  bool nonconvex = false;
  bool converged = false;
};

/// KKT residual of μ for min μᵀZμ over the simplex, as reported in DiversityResult.
double diversity_kkt_gap(const Matrix& z, const Vector& mu);

/// Maximum diversity of tA: minimises μᵀZμ over the simplex by Frank–Wolfe
/// with away steps, starting from the uniform distribution and breaking ties
/// towards the lowest index. When Z is not positive definite the objective
/// is nonconvex: the run is repeated from every vertex of the simplex, the
/// best result is kept and `nonconvex` is set.
DiversityResult max_diversity(const FiniteMetricSpace& space, double t, const DiversityOptions& options = {});
DiversityResult max_diversity(const Matrix& z, const DiversityOptions& options = {});

/// Reference optimum by enumerating every support: solve Z_S x = 1, keep the
/// nonnegative solutions satisfying the off-support KKT conditions, take the
/// best. Throws TooLarge above `max_points`.
DiversityResult max_diversity_exact(const FiniteMetricSpace& space, double t, std::size_t max_points = 15);

struct CoveringResult {
  /// Best cover found; the minimum when `exact`.
  std::size_t number = 0;
  /// Size of a 2ε-separated packing, a lower bound on any cover.
  std::size_t lower_bound = 0;
  bool exact = false;
  /// The cover: groups of point indices, each of diameter at most 2ε.
  std::vector<std::vector<std::size_t>> clusters;
};

/// Fewest ε-balls covering A. A group of points fits in one ball exactly when
/// its diameter is at most 2ε (the case for subsets of ℝ with ambient
/// centres), so covers are groups of diameter ≤ 2ε. Branch and bound up to
/// `exact_limit` points; first-fit greedy above that.
CoveringResult covering_number(const FiniteMetricSpace& space, double eps, std::size_t exact_limit = 25);

/// {"diversity": x, "mu": [...], "kkt_gap": g, ...}.
nlohmann::json to_json(const DiversityResult& r);
nlohmann::json to_json(const CoveringResult& r);

}  // namespace magnitude
