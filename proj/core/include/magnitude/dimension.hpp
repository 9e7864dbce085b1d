#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "magnitude/diversity.hpp"
#include "magnitude/engine.hpp"

namespace magnitude {

enum class DimensionMethod { DiversityGrowth, CoveringGrowth };
std::string_view to_string(DimensionMethod method);

struct DimensionOptions {
  DimensionMethod method = DimensionMethod::DiversityGrowth;
  /// Samples removed from each end of the window before fitting.
  std::size_t drop_each_end = 1;
  DiversityOptions diversity{.tol = 1e-9, .max_iterations = 100000, .polish = true, .throw_on_nonconvergence = false};
  /// Worker threads for the independent samples (0 = hardware concurrency).
  unsigned threads = 0;
};

struct DimensionEstimate {
  double slope = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  /// Root-mean-square residual of the log-log fit.
  double fit_residual = 0.0;
  DimensionMethod method = DimensionMethod::DiversityGrowth;
  std::vector<double> t;
  /// Diversity or covering number N(A, 1/t) at each t.
  std::vector<double> quantity;
  /// Which samples entered the regression.
  std::vector<bool> used;
  /// t_max times the smallest separation stays at most 1, the range in which
  /// a finite sample still resolves the set it approximates.
  bool within_resolution = true;
};

/// Least-squares slope of log(quantity) against log t over `samples`
/// log-spaced values in the window. Throws WindowTooNarrow when fewer than
/// four usable samples remain.
DimensionEstimate dimension_estimate(const FiniteMetricSpace& space, std::pair<double, double> window,
                                     std::size_t samples, const DimensionOptions& options = {});

/// Same, on the given level of a refinement family.
DimensionEstimate dimension_estimate(const SpaceFamily& family, std::size_t level, std::pair<double, double> window,
                                     std::size_t samples, const DimensionOptions& options = {});

nlohmann::json to_json(const DimensionEstimate& e);

}  // namespace magnitude
