#include "magnitude/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <nlohmann/json.hpp>

#include "magnitude/engine.hpp"
#include "magnitude/error.hpp"

namespace magnitude {
namespace {

using Index = Eigen::Index;

Index argmin_first(const Vector& y) {
  Index best = 0;
  for (Index i = 1; i < y.size(); ++i)
    if (y[i] < y[best]) best = i;
  return best;
}

std::vector<std::size_t> support_of(const Vector& mu) {
  std::vector<std::size_t> s;
  for (Index i = 0; i < mu.size(); ++i)
    if (mu[i] > 0.0) s.push_back(static_cast<std::size_t>(i));
  return s;
}

// Stationary point of the restricted problem on `support`, accepted only if
// it is a global certificate (positive and FW gap within tol).
std::optional<Vector> polish(const Matrix& z, const std::vector<std::size_t>& support, double tol) {
  const auto k = static_cast<Index>(support.size());
  Matrix zs(k, k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      zs(a, b) = z(static_cast<Index>(support[a]), static_cast<Index>(support[b]));
  Vector x;
  Eigen::LLT<Matrix> llt(zs);
  if (llt.info() == Eigen::Success) {
    x = llt.solve(Vector::Ones(k));
  } else {
    Eigen::PartialPivLU<Matrix> lu(zs);
    if (!(lu.rcond() > 1e-14 * static_cast<double>(k))) return std::nullopt;
    x = lu.solve(Vector::Ones(k));
  }
  if (!x.allFinite() || x.minCoeff() <= 0.0) return std::nullopt;
  Vector mu = Vector::Zero(z.rows());
  const double total = x.sum();
  for (Index a = 0; a < k; ++a) mu[static_cast<Index>(support[a])] = x[a] / total;
  const Vector y = z * mu;
  const double m = mu.dot(y);
  if (m - y.minCoeff() > tol) return std::nullopt;
  return mu;
}

DiversityResult finish(const Matrix& z, const Vector& mu, std::size_t iterations, bool nonconvex, bool converged) {
  DiversityResult r;
  const Vector y = z * mu;
  r.value = 1.0 / mu.dot(y);
  r.optimizer.weights.assign(mu.data(), mu.data() + mu.size());
  r.optimizer.support = support_of(mu);
  r.kkt_gap = diversity_kkt_gap(z, mu);
  r.iterations = iterations;
  r.nonconvex = nonconvex;
  r.converged = converged;
  return r;
}

DiversityResult frank_wolfe(const Matrix& z, Vector mu, const DiversityOptions& options) {
  const Index n = z.rows();
  if (options.polish) {
    if (auto p = polish(z, support_of(mu), options.tol)) return finish(z, *p, 0, false, true);
  }

  Vector y = z * mu;
  double m = mu.dot(y);
  Index support_size = static_cast<Index>(support_of(mu).size());
  bool nonconvex = false;
  bool converged = false;
  bool support_changed = false;
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    const Index s = argmin_first(y);
    const double fw_gap = m - y[s];
    if (fw_gap <= options.tol) {
      converged = true;
      break;
    }
    Index v = -1;
    for (Index i = 0; i < n; ++i)
      if (mu[i] > 0.0 && (v < 0 || y[i] > y[v])) v = i;
    const double away_gain = y[v] - m;

    const bool forward = fw_gap >= away_gain || support_size == 1;
    double slope, curvature, gamma_max;
    if (forward) {
      slope = y[s] - m;
      curvature = z(s, s) - 2.0 * y[s] + m;
      gamma_max = 1.0;
    } else {
      slope = m - y[v];
      curvature = m - 2.0 * y[v] + z(v, v);
      gamma_max = mu[v] / (1.0 - mu[v]);
    }
    double gamma;
    if (curvature <= 0.0) {
      nonconvex = true;
      gamma = gamma_max;
    } else {
      gamma = std::min(gamma_max, -slope / curvature);
    }

    if (forward) {
      if (mu[s] == 0.0) {
        ++support_size;
        support_changed = true;
      }
      mu *= 1.0 - gamma;
      mu[s] += gamma;
      y = (1.0 - gamma) * y + gamma * z.col(s);
      if (gamma == 1.0) support_size = 1;
    } else {
      mu *= 1.0 + gamma;
      mu[v] -= gamma;
      y = (1.0 + gamma) * y - gamma * z.col(v);
      if (gamma == gamma_max) {
        mu[v] = 0.0;
        --support_size;
        support_changed = true;
      }
    }
    for (Index i = 0; i < n; ++i)
      if (mu[i] < 0.0) mu[i] = 0.0;

    if ((it + 1) % 1024 == 0) {
      mu /= mu.sum();
      y = z * mu;
      support_size = static_cast<Index>(support_of(mu).size());
    }
    m = mu.dot(y);

    if (options.polish && support_changed && (it + 1) % 64 == 0) {
      support_changed = false;
      if (auto p = polish(z, support_of(mu), options.tol)) return finish(z, *p, it + 1, nonconvex, true);
    }
  }

  if (converged && options.polish)
    if (auto p = polish(z, support_of(mu), options.tol)) return finish(z, *p, it, nonconvex, true);
  if (!converged && options.throw_on_nonconvergence) {
    const Vector yy = z * mu;
    throw Error(ErrorCode::NonConvergence, "Frank-Wolfe stopped after " + std::to_string(it) +
                                               " iterations with gap " +
                                               std::to_string(mu.dot(yy) - yy.minCoeff()));
  }
  return finish(z, mu, it, nonconvex, converged);
}

}  // namespace

double diversity_kkt_gap(const Matrix& z, const Vector& mu) {
  const Vector y = z * mu;
  const double m = mu.dot(y);
  double high = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < mu.size(); ++i)
    if (mu[i] > 0.0) high = std::max(high, y[i]);
  return std::max({0.0, m - y.minCoeff(), high - m});
}

DiversityResult max_diversity(const FiniteMetricSpace& space, double t, const DiversityOptions& options) {
  return max_diversity(similarity_matrix(space, t).entries, options);
}

DiversityResult max_diversity(const Matrix& z, const DiversityOptions& options) {
  const Index n = z.rows();
  if (n == 0) throw Error(ErrorCode::EmptySet, "empty space");
  if (z.cols() != n) throw Error(ErrorCode::NotSquare, "similarity matrix must be square");

  const Vector uniform = Vector::Constant(n, 1.0 / static_cast<double>(n));
  if (Eigen::LLT<Matrix>(z).info() == Eigen::Success) return frank_wolfe(z, uniform, options);

  // Without positive definiteness a KKT point can be a saddle or a local
  // minimum, so restart from every vertex as well and keep the best.
  DiversityResult best = frank_wolfe(z, uniform, options);
  std::size_t iterations = best.iterations;
  for (Index i = 0; i < n; ++i) {
    Vector vertex = Vector::Zero(n);
    vertex[i] = 1.0;
    auto r = frank_wolfe(z, vertex, options);
    iterations += r.iterations;
    if (r.value > best.value + 1e-12) best = std::move(r);
  }
  best.iterations = iterations;
  best.nonconvex = true;
  return best;
}

DiversityResult max_diversity_exact(const FiniteMetricSpace& space, double t, std::size_t max_points) {
  const std::size_t n = space.size();
  if (n > max_points)
    throw Error(ErrorCode::TooLarge, "support enumeration is limited to " + std::to_string(max_points) + " points");
  if (n == 0) throw Error(ErrorCode::EmptySet, "empty space");
  const Matrix z = similarity_matrix(space, t).entries;
  constexpr double kFeasible = 1e-10;

  std::optional<Vector> best;
  double best_value = -1.0;
  std::vector<std::size_t> support;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    support.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const auto k = static_cast<Index>(support.size());
    Matrix zs(k, k);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) zs(a, b) = z(static_cast<Index>(support[a]), static_cast<Index>(support[b]));
    Eigen::FullPivLU<Matrix> lu(zs);
    if (!lu.isInvertible()) continue;
    const Vector x = lu.solve(Vector::Ones(k));
    if (x.minCoeff() < -kFeasible) continue;
    const double total = x.sum();
    if (!(total > 0.0)) continue;
    Vector mu = Vector::Zero(static_cast<Index>(n));
    for (Index a = 0; a < k; ++a) mu[static_cast<Index>(support[a])] = std::max(0.0, x[a]) / total;
    const Vector y = z * mu;
    const double m = 1.0 / total;
    if (y.minCoeff() < m - kFeasible) continue;
    if (total > best_value) {
      best_value = total;
      best = std::move(mu);
    }
  }
  if (!best) throw Error(ErrorCode::NonConvergence, "no support admits a KKT point");
  auto r = finish(z, *best, 0, false, true);
  return r;
}

CoveringResult covering_number(const FiniteMetricSpace& space, double eps, std::size_t exact_limit) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
  const std::size_t n = space.size();
  const double reach = 2.0 * eps * (1.0 + 1e-12);
  auto close = [&](std::size_t i, std::size_t j) { return space(i, j) <= reach; };

  CoveringResult r;
  std::vector<std::size_t> packing;
  for (std::size_t i = 0; i < n; ++i)
    if (std::all_of(packing.begin(), packing.end(), [&](std::size_t j) { return !close(i, j); })) packing.push_back(i);
  r.lower_bound = packing.size();

  auto fits = [&](const std::vector<std::size_t>& cluster, std::size_t i) {
    return std::all_of(cluster.begin(), cluster.end(), [&](std::size_t j) { return close(i, j); });
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find_if(r.clusters.begin(), r.clusters.end(), [&](const auto& c) { return fits(c, i); });
    if (it == r.clusters.end())
      r.clusters.push_back({i});
    else
      it->push_back(i);
  }

  if (n <= exact_limit && r.clusters.size() > r.lower_bound) {
    std::vector<std::vector<std::size_t>> current;
    auto search = [&](auto&& self, std::size_t i) -> void {
      if (r.clusters.size() == r.lower_bound) return;
      if (current.size() >= r.clusters.size()) return;
      if (i == n) {
        r.clusters = current;
        return;
      }
      for (auto& c : current) {
        if (!fits(c, i)) continue;
        c.push_back(i);
        self(self, i + 1);
        c.pop_back();
      }
      if (current.size() + 1 < r.clusters.size()) {
        current.push_back({i});
        self(self, i + 1);
        current.pop_back();
      }
    };
    search(search, 0);
  }
  r.exact = n <= exact_limit || r.clusters.size() == r.lower_bound;
  r.number = r.clusters.size();
  return r;
}

nlohmann::json to_json(const DiversityResult& r) {
  return {{"diversity", r.value},
          {"mu", r.optimizer.weights},
          {"support", r.optimizer.support},
          {"kkt_gap", r.kkt_gap},
          {"iterations", r.iterations},
          {"nonconvex", r.nonconvex},
          {"converged", r.converged}};
}

nlohmann::json to_json(const CoveringResult& r) {
  return {{"covering_number", r.number},
          {"lower_bound", r.lower_bound},
          {"exact", r.exact},
          {"clusters", r.clusters}};
}

}  // namespace magnitude
