#include "magnitude/metric_space.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace magnitude {
namespace {

std::string pair_text(Eigen::Index i, Eigen::Index j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

std::vector<std::size_t> idx(std::initializer_list<Eigen::Index> values) {
  std::vector<std::size_t> out;
  for (auto v : values) out.push_back(static_cast<std::size_t>(v));
  return out;
}

}  // namespace

double FiniteMetricSpace::diameter() const {
  return distances_.size() == 0 ? 0.0 : distances_.maxCoeff();
}

double FiniteMetricSpace::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  const Eigen::Index n = distances_.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) best = std::min(best, distances_(i, j));
  return best;
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> indices) const {
  const auto m = static_cast<Eigen::Index>(indices.size());
  if (m == 0) throw Error(ErrorCode::EmptySet, "subspace needs at least one point");
  Matrix d(m, m);
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < m; ++a) {
    if (indices[a] >= size()) throw Error(ErrorCode::InvalidInput, "subspace index out of range");
    for (Eigen::Index b = 0; b < m; ++b) d(a, b) = (*this)(indices[a], indices[b]);
    if (!labels_.empty()) labels.push_back(labels_[indices[a]]);
  }
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b)
      if (!(d(a, b) > 0.0))
        throw MetricAxiomError(ErrorCode::ZeroDistanceDistinctPoints, idx({a, b}),
                               "repeated index in subspace " + pair_text(a, b));
  return FiniteMetricSpace(std::move(d), std::move(labels));
}

std::optional<std::array<std::size_t, 3>> find_triangle_violation(const Matrix& d, double slack) {
  const Eigen::Index n = d.rows();
  // d is symmetric, so column j doubles as row j and every k is tested at once.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double bound = d(i, j) - slack;
      const auto detour = (d.col(i) + d.col(j)).array();
      if ((detour < bound).any()) {
        for (Eigen::Index k = 0; k < n; ++k)
          if (detour(k) < bound)
            return std::array<std::size_t, 3>{static_cast<std::size_t>(i),
                                              static_cast<std::size_t>(j),
                                              static_cast<std::size_t>(k)};
      }
    }
  }
  return std::nullopt;
}

FiniteMetricSpace validate_metric(const Matrix& raw, std::vector<std::string> labels,
                                  const MetricTolerance& tol) {
  const Eigen::Index n = raw.rows();
  if (n == 0 || raw.cols() != n)
    throw Error(ErrorCode::NotSquare, "distance matrix must be square and nonempty");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n)
    throw Error(ErrorCode::InvalidInput, "label count does not match matrix size");
  if (!raw.allFinite()) throw Error(ErrorCode::NonFinite, "distance matrix has non-finite entries");

  for (Eigen::Index i = 0; i < n; ++i)
    if (raw(i, i) != 0.0)
      throw MetricAxiomError(ErrorCode::NonzeroDiagonal, idx({i}),
                             "d(" + std::to_string(i) + ", " + std::to_string(i) + ") != 0");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (raw(i, j) < 0.0)
        throw MetricAxiomError(ErrorCode::NegativeEntry, idx({i, j}), "negative entry at " + pair_text(i, j));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (raw(i, j) != raw(j, i))
        throw MetricAxiomError(ErrorCode::NotSymmetric, idx({i, j}), "asymmetric entry at " + pair_text(i, j));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (raw(i, j) == 0.0)
        throw MetricAxiomError(ErrorCode::ZeroDistanceDistinctPoints, idx({i, j}),
                               "distinct points at distance 0 " + pair_text(i, j));

  const double slack = tol.triangle_relative * raw.maxCoeff();
  if (auto w = find_triangle_violation(raw, slack)) {
    const auto [i, j, k] = *w;
    std::ostringstream os;
    os << "d(" << i << ", " << j << ") > d(" << i << ", " << k << ") + d(" << k << ", " << j << ")";
    throw MetricAxiomError(ErrorCode::TriangleViolation, {i, j, k}, os.str());
  }
  return FiniteMetricSpace(raw, std::move(labels));
}

FiniteMetricSpace scale_space(const FiniteMetricSpace& space, double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(ErrorCode::NonpositiveScale, "scale factor must be positive and finite");
  return FiniteMetricSpace(space.distances_ * t, space.labels_);
}

FiniteMetricSpace l1_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Matrix d(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j)
      for (Eigen::Index k = 0; k < na; ++k)
        for (Eigen::Index l = 0; l < nb; ++l)
          d(i * nb + j, k * nb + l) = a.distances_(i, k) + b.distances_(j, l);

  std::vector<std::string> labels;
  if (!a.labels_.empty() || !b.labels_.empty()) {
    for (Eigen::Index i = 0; i < na; ++i)
      for (Eigen::Index j = 0; j < nb; ++j) {
        const std::string la = a.labels_.empty() ? std::to_string(i) : a.labels_[i];
        const std::string lb = b.labels_.empty() ? std::to_string(j) : b.labels_[j];
        labels.push_back("(" + la + "," + lb + ")");
      }
  }
  return FiniteMetricSpace(std::move(d), std::move(labels));
}

FiniteMetricSpace space_from_points(const Matrix& points, Norm norm) {
  const Eigen::Index n = points.rows();
  if (n == 0) throw Error(ErrorCode::EmptySet, "no points");
  if (!points.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite coordinate");
  Matrix d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j, j) = 0.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const auto diff = (points.row(i) - points.row(j)).array();
      const double v = norm == Norm::L1 ? diff.abs().sum() : std::sqrt(diff.square().sum());
      if (v == 0.0)
        throw MetricAxiomError(ErrorCode::ZeroDistanceDistinctPoints, idx({j, i}),
                               "duplicate coordinates " + pair_text(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return FiniteMetricSpace(std::move(d), {});
}

FiniteMetricSpace points_1d(std::span<const double> coords) {
  Matrix pts(static_cast<Eigen::Index>(coords.size()), 1);
  for (std::size_t i = 0; i < coords.size(); ++i) pts(static_cast<Eigen::Index>(i), 0) = coords[i];
  return space_from_points(pts, Norm::L1);
}

}  // namespace magnitude
