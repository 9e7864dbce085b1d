#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "magnitude/metric_space.hpp"
#include "magnitude/space_spec.hpp"

namespace magnitude {

/// Z(i,j) = exp(-t d(i,j)).
struct SimilarityMatrix {
  Matrix entries;
  double source_scale = 1.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

enum class WeightingStatus { UniquePD, UniqueInvertible, Undefined };
std::string_view to_string(WeightingStatus status);

struct WeightingResult {
  Vector weighting;
  /// Z is symmetric, so the coweighting is the transpose of the weighting.
  Vector coweighting;
  /// Sum of the weighting; NaN when undefined.
  double magnitude = 0.0;
  WeightingStatus status = WeightingStatus::Undefined;
  /// Reciprocal condition estimate from the factorisation that was used.
  double rcond = 0.0;
  /// 1 / rcond.
  double condition_estimate = 0.0;
  /// ‖Zw − e‖∞; NaN when undefined.
  double residual = 0.0;
  /// Why the solve was rejected; empty when defined.
  std::string diagnostic;

  bool defined() const noexcept { return status != WeightingStatus::Undefined; }
};

struct SolverOptions {
  /// Solves whose reciprocal condition falls below N * rcond_per_point are
  /// reported as Undefined.
  double rcond_per_point = 1e-14;
  /// Target for ‖Zw − e‖∞; refinement steps are spent until it holds.
  double residual_target = 1e-9;
  int max_refinement_steps = 3;
};

SimilarityMatrix similarity_matrix(const FiniteMetricSpace& space, double t);

/// Cholesky, then partially pivoted LU, then Undefined. Never throws for
/// singular input: an undefined magnitude is a legitimate outcome.
WeightingResult solve_weighting(const SimilarityMatrix& z, const SolverOptions& options = {});

/// |tA|; the status tells whether the value exists.
WeightingResult weighting(const FiniteMetricSpace& space, double t, const SolverOptions& options = {});

/// |tA| or nullopt when the magnitude is undefined at t.
std::optional<double> magnitude(const FiniteMetricSpace& space, double t, const SolverOptions& options = {});

struct MagnitudeFunctionSample {
  double t = 0.0;
  std::optional<double> magnitude;
  bool positive_definite = false;
  WeightingStatus status = WeightingStatus::Undefined;
  double residual = 0.0;
  std::string failure_reason;
};

struct MagnitudeFunction {
  std::vector<MagnitudeFunctionSample> samples;
  /// Consecutive differences over the last quarter of the grid (defined
  /// neighbours only), for judging eventual monotone growth.
  std::vector<double> tail_differences;
};

/// One independent solve per t; t values are sorted ascending first. Work is
/// spread over `threads` workers (0 = hardware concurrency) and results are
/// written by index, so the output does not depend on scheduling.
MagnitudeFunction magnitude_function(const FiniteMetricSpace& space, std::vector<double> t_grid,
                                     const SolverOptions& options = {}, unsigned threads = 0);

/// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

enum class NegativeTypeVerdict { CertifiedNegativeType, CertifiedNot, Inconclusive };
std::string_view to_string(NegativeTypeVerdict verdict);

struct DefinitenessOptions {
  double certify_relative = 1e-10;
  double reject_relative = 1e-6;
};

struct DefinitenessReport {
  /// Cholesky succeeded at every sampled t.
  bool is_positive_definite = false;
  std::vector<double> t_samples;
  std::vector<bool> positive_definite_at;
  NegativeTypeVerdict negative_type_verdict = NegativeTypeVerdict::Inconclusive;
  /// Largest eigenvalue of P D P, P the projector onto {x : Σx = 0}.
  double cnd_max_eigenvalue = 0.0;
  /// Frobenius norm of D, the scale for the verdict thresholds.
  double distance_norm = 0.0;
  /// min over t of [t · min distance > log(N − 1)]; a one-point space passes.
  bool scattered_bound_holds = false;
};

DefinitenessReport definiteness_report(const FiniteMetricSpace& space, const std::vector<double>& t_samples,
                                       const DefinitenessOptions& options = {});

/// Cholesky test of Z_{tA}.
bool is_positive_definite(const FiniteMetricSpace& space, double t);

/// Speyer's shortcut N / (row sum of Z). Requires all row sums of Z_{tA} to
/// agree within `relative_tol` (exactly when the constant vector is a
/// weighting); throws NotRowHomogeneous otherwise.
double homogeneous_magnitude(const FiniteMetricSpace& space, double t, double relative_tol = 1e-12);

struct ApproximationStep {
  std::size_t level = 0;
  std::size_t points = 0;
  std::optional<double> magnitude;
  /// Difference from the previous defined level; NaN for the first.
  double increment = 0.0;
};

struct ApproximationOptions {
  /// Levels produce nested subsets (each contains the previous one).
  bool nested = true;
  /// Enforce the monotone increase that holds for nested subsets of a space of
  /// negative type.
  bool enforce_monotone = true;
  double monotone_slack = 1e-9;
  SolverOptions solver;
};

/// Maps a refinement index to a concrete finite approximation.
using SpaceFamily = std::function<SpaceSpec(std::size_t level)>;

/// |tA_k| along a refinement family. With nested levels and enforcement on,
/// a decrease beyond the slack throws MonotonicityViolation.
std::vector<ApproximationStep> approximate_compact_magnitude(const SpaceFamily& family,
                                                             const std::vector<std::size_t>& levels, double t,
                                                             const ApproximationOptions& options = {});

/// Uniform N-point grids on [0, length].
SpaceFamily interval_grid_family(double length);
/// Depth-k Cantor endpoints of the given length; level = depth.
SpaceFamily cantor_family(double length);
/// Prefix-stable seeded samples of the radius-R ball; level = point count.
SpaceFamily ball_sample_family(unsigned dim, double radius, Norm norm, std::uint64_t seed);
/// Uniform grid over the box with `level` points per unit length on every axis
/// (plus one endpoint per axis).
SpaceFamily box_grid_family(std::vector<double> side_lengths, Norm norm);

}  // namespace magnitude
