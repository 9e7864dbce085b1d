#include "magnitude/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace magnitude {
namespace {

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

WeightingResult undefined(double rcond, std::string why) {
  WeightingResult r;
  r.status = WeightingStatus::Undefined;
  r.magnitude = kNaN;
  r.residual = kNaN;
  r.rcond = rcond;
  r.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  r.diagnostic = std::move(why);
  return r;
}

template <class Factor>
double refine(const Matrix& z, const Factor& factor, Vector& w, const SolverOptions& options) {
  const Vector ones = Vector::Ones(z.rows());
  Vector r = ones - z * w;
  double res = r.lpNorm<Eigen::Infinity>();
  for (int step = 0; step < options.max_refinement_steps && res > options.residual_target * 1e-3; ++step) {
    Vector w2 = w + factor.solve(r);
    Vector r2 = ones - z * w2;
    const double res2 = r2.lpNorm<Eigen::Infinity>();
    if (!(res2 < res)) break;
    w = std::move(w2);
    r = std::move(r2);
    res = res2;
  }
  return res;
}

WeightingResult finish(Vector w, double rcond, double residual, WeightingStatus status,
                       const SolverOptions& options) {
  if (!w.allFinite()) return undefined(rcond, "non-finite weighting");
  if (!(residual <= options.residual_target))
    return undefined(rcond, "residual " + num(residual) + " above target");
  WeightingResult r;
  r.status = status;
  r.magnitude = w.sum();
  r.coweighting = w;
  r.weighting = std::move(w);
  r.rcond = rcond;
  r.condition_estimate = 1.0 / rcond;
  r.residual = residual;
  return r;
}

}  // namespace

std::string_view to_string(WeightingStatus status) {
  switch (status) {
    case WeightingStatus::UniquePD: return "unique_pd";
    case WeightingStatus::UniqueInvertible: return "unique_invertible";
    case WeightingStatus::Undefined: return "undefined";
  }
  return "unknown";
}

std::string_view to_string(NegativeTypeVerdict verdict) {
  switch (verdict) {
    case NegativeTypeVerdict::CertifiedNegativeType: return "certified_negative_type";
    case NegativeTypeVerdict::CertifiedNot: return "certified_not";
    case NegativeTypeVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

SimilarityMatrix similarity_matrix(const FiniteMetricSpace& space, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NonpositiveScale, "t must be positive");
  return SimilarityMatrix{(-t * space.distances().array()).exp().matrix(), t};
}

WeightingResult solve_weighting(const SimilarityMatrix& sim, const SolverOptions& options) {
  const Matrix& z = sim.entries;
  const Eigen::Index n = z.rows();
  const double threshold = static_cast<double>(n) * options.rcond_per_point;
  const Vector ones = Vector::Ones(n);

  Eigen::LLT<Matrix> llt(z);
  if (llt.info() == Eigen::Success) {
    const double rc = llt.rcond();
    if (rc >= threshold) {
      Vector w = llt.solve(ones);
      const double res = refine(z, llt, w, options);
      return finish(std::move(w), rc, res, WeightingStatus::UniquePD, options);
    }
  }

  Eigen::PartialPivLU<Matrix> lu(z);
  const double rc = lu.rcond();
  if (!(rc >= threshold))
    return undefined(rc, "numerically singular: rcond " + num(rc) + " below " + num(threshold));
  Vector w = lu.solve(ones);
  const double res = refine(z, lu, w, options);
  return finish(std::move(w), rc, res, WeightingStatus::UniqueInvertible, options);
}

WeightingResult weighting(const FiniteMetricSpace& space, double t, const SolverOptions& options) {
  return solve_weighting(similarity_matrix(space, t), options);
}

std::optional<double> magnitude(const FiniteMetricSpace& space, double t, const SolverOptions& options) {
  auto r = weighting(space, t, options);
  if (!r.defined()) return std::nullopt;
  return r.magnitude;
}

MagnitudeFunction magnitude_function(const FiniteMetricSpace& space, std::vector<double> t_grid,
                                     const SolverOptions& options, unsigned threads) {
  if (t_grid.empty()) throw Error(ErrorCode::InvalidInput, "empty t grid");
  for (double t : t_grid)
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NonpositiveScale, "t values must be positive");
  std::sort(t_grid.begin(), t_grid.end());

  MagnitudeFunction out;
  out.samples.resize(t_grid.size());
  auto evaluate = [&](std::size_t i) {
    auto& s = out.samples[i];
    s.t = t_grid[i];
    const auto r = weighting(space, s.t, options);
    s.status = r.status;
    s.positive_definite = r.status == WeightingStatus::UniquePD;
    if (r.defined()) {
      s.magnitude = r.magnitude;
      s.residual = r.residual;
    } else {
      s.residual = r.residual;
      s.failure_reason = r.diagnostic;
      // Cholesky may still succeed on an ill-conditioned PD matrix.
      s.positive_definite = Eigen::LLT<Matrix>(similarity_matrix(space, s.t).entries).info() == Eigen::Success;
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, t_grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < t_grid.size(); i = next++) evaluate(i);
      });
  }

  const std::size_t start = (3 * out.samples.size()) / 4;
  std::optional<double> prev;
  for (std::size_t i = start; i < out.samples.size(); ++i) {
    const auto& m = out.samples[i].magnitude;
    if (!m) continue;
    if (prev) out.tail_differences.push_back(*m - *prev);
    prev = m;
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw Error(ErrorCode::InvalidInput, "bad log grid");
  std::vector<double> g(count);
  if (count == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count == 0) throw Error(ErrorCode::InvalidInput, "bad linear grid");
  if (count == 1) return {lo};
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  g.back() = hi;
  return g;
}

bool is_positive_definite(const FiniteMetricSpace& space, double t) {
  return Eigen::LLT<Matrix>(similarity_matrix(space, t).entries).info() == Eigen::Success;
}

DefinitenessReport definiteness_report(const FiniteMetricSpace& space, const std::vector<double>& t_samples,
                                       const DefinitenessOptions& options) {
  DefinitenessReport rep;
  rep.t_samples = t_samples.empty() ? std::vector<double>{1.0} : t_samples;
  const auto n = static_cast<Eigen::Index>(space.size());

  rep.is_positive_definite = true;
  rep.scattered_bound_holds = true;
  const double sep = space.min_separation();
  for (double t : rep.t_samples) {
    const bool pd = is_positive_definite(space, t);
    rep.positive_definite_at.push_back(pd);
    rep.is_positive_definite = rep.is_positive_definite && pd;
    if (n > 1 && !(t * sep > std::log(static_cast<double>(n - 1)))) rep.scattered_bound_holds = false;
  }

  const Matrix& d = space.distances();
  rep.distance_norm = d.norm();
  if (n == 1 || rep.distance_norm == 0.0) {
    rep.cnd_max_eigenvalue = 0.0;
    rep.negative_type_verdict = NegativeTypeVerdict::CertifiedNegativeType;
    return rep;
  }
  // P D P with P = I - eeᵀ/n, built as D minus row/column means plus grand mean.
  const Vector row_mean = d.rowwise().mean();
  const double grand = row_mean.mean();
  Matrix m = d;
  m.colwise() -= row_mean;
  m.rowwise() -= row_mean.transpose();
  m.array() += grand;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  rep.cnd_max_eigenvalue = eig.eigenvalues().maxCoeff();
  if (rep.cnd_max_eigenvalue <= options.certify_relative * rep.distance_norm)
    rep.negative_type_verdict = NegativeTypeVerdict::CertifiedNegativeType;
  else if (rep.cnd_max_eigenvalue >= options.reject_relative * rep.distance_norm)
    rep.negative_type_verdict = NegativeTypeVerdict::CertifiedNot;
  else
    rep.negative_type_verdict = NegativeTypeVerdict::Inconclusive;
  return rep;
}

double homogeneous_magnitude(const FiniteMetricSpace& space, double t, double relative_tol) {
  const auto z = similarity_matrix(space, t);
  const Vector rows = z.entries.rowwise().sum();
  const double hi = rows.maxCoeff(), lo = rows.minCoeff();
  if (hi - lo > relative_tol * hi)
    throw Error(ErrorCode::NotRowHomogeneous,
                "row sums of Z range over [" + num(lo) + ", " + num(hi) + "]");
  const double n = static_cast<double>(space.size());
  return n * n / rows.sum();
}

std::vector<ApproximationStep> approximate_compact_magnitude(const SpaceFamily& family,
                                                             const std::vector<std::size_t>& levels, double t,
                                                             const ApproximationOptions& options) {
  std::vector<ApproximationStep> steps;
  std::optional<double> prev;
  for (auto level : levels) {
    const auto space = generate_space(family(level));
    ApproximationStep s;
    s.level = level;
    s.points = space.size();
    s.magnitude = magnitude(space, t, options.solver);
    s.increment = kNaN;
    if (s.magnitude && prev) {
      s.increment = *s.magnitude - *prev;
      if (options.nested && options.enforce_monotone && s.increment < -options.monotone_slack)
        throw Error(ErrorCode::MonotonicityViolation,
                    "magnitude decreased by " + num(-s.increment) + " at level " + std::to_string(level));
    }
    if (s.magnitude) prev = s.magnitude;
    steps.push_back(s);
  }
  return steps;
}

SpaceFamily interval_grid_family(double length) {
  return [length](std::size_t n) {
    LpGridParams g;
    g.norm = Norm::L1;
    g.points_per_axis = {n};
    g.side_lengths = {length};
    return SpaceSpec{g, std::nullopt};
  };
}

SpaceFamily cantor_family(double length) {
  return [length](std::size_t depth) { return SpaceSpec{CantorParams{static_cast<unsigned>(depth), length}, {}}; };
}

SpaceFamily ball_sample_family(unsigned dim, double radius, Norm norm, std::uint64_t seed) {
  return [=](std::size_t count) { return SpaceSpec{BallSampleParams{dim, radius, count, norm}, seed}; };
}

SpaceFamily box_grid_family(std::vector<double> side_lengths, Norm norm) {
  return [side_lengths = std::move(side_lengths), norm](std::size_t per_unit) {
    LpGridParams g;
    g.norm = norm;
    g.side_lengths = side_lengths;
    for (double len : side_lengths)
      g.points_per_axis.push_back(static_cast<std::size_t>(std::llround(len * static_cast<double>(per_unit))) + 1);
    return SpaceSpec{g, std::nullopt};
  };
}

}  // namespace magnitude
