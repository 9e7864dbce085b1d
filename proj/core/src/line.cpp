#include "magnitude/line.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "magnitude/error.hpp"

namespace magnitude::line {
namespace {

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NonpositiveScale, "t must be positive");
}

// Neumaier summation: the sums add thousands of tiny tanh terms to 1.
class Sum {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

}  // namespace

LineWeighting line_magnitude(std::span<const double> points, double t) {
  check_t(t);
  if (points.empty()) throw Error(ErrorCode::EmptySet, "no points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1]))
      throw Error(ErrorCode::DuplicatePoints, "points must be strictly increasing at index " + std::to_string(i));

  const std::size_t n = points.size();
  LineWeighting out;
  out.weights.assign(n, 0.0);
  if (n == 1) {
    out.weights[0] = 1.0;
    out.magnitude = 1.0;
    return out;
  }
  std::vector<double> th(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) th[i] = std::tanh(t * (points[i + 1] - points[i]) / 2.0);

  out.weights[0] = 0.5 * (1.0 + th[0]);
  out.weights[n - 1] = 0.5 * (1.0 + th[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) out.weights[i] = 0.5 * (th[i - 1] + th[i]);

  Sum sum;
  sum.add(1.0);
  for (double v : th) sum.add(v);
  out.magnitude = sum.value();
  return out;
}

double interval_magnitude(double a, double b, double t) {
  check_t(t);
  if (b < a) throw Error(ErrorCode::ReversedInterval, "interval end precedes start");
  return 1.0 + t * (b - a) / 2.0;
}

IntervalWeightMeasure interval_weight_measure(double a, double b, double t) {
  check_t(t);
  if (b < a) throw Error(ErrorCode::ReversedInterval, "interval end precedes start");
  return {0.5, t * (b - a) / 2.0, 0.5};
}

GapDecomposition::GapDecomposition(std::pair<double, double> hull, std::vector<std::pair<double, double>> gaps)
    : hull_(hull), gaps_(std::move(gaps)) {
  if (!std::isfinite(hull_.first) || !std::isfinite(hull_.second))
    throw Error(ErrorCode::InvalidInput, "hull endpoints must be finite");
  if (hull_.second < hull_.first) throw Error(ErrorCode::ReversedInterval, "hull end precedes start");
  std::sort(gaps_.begin(), gaps_.end());
  double prev_end = hull_.first;
  double removed = 0.0;
  for (const auto& [lo, hi] : gaps_) {
    if (!(hi > lo)) throw Error(ErrorCode::ReversedInterval, "gap must have positive length");
    // Open gaps may share endpoints with each other only if a point survives
    // between them; touching is allowed, overlap is not.
    if (lo < prev_end || hi > hull_.second)
      throw Error(ErrorCode::OverlappingGaps, "gap (" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                  ") overlaps another gap or leaves the hull");
    removed += hi - lo;
    prev_end = hi;
  }
  measure_ = std::max(0.0, (hull_.second - hull_.first) - removed);
}

double compact_R_magnitude(const GapDecomposition& g, double t) {
  check_t(t);
  Sum sum;
  sum.add(1.0);
  sum.add(t * g.measure() / 2.0);
  for (const auto& [lo, hi] : g.gaps()) sum.add(std::tanh(t * (hi - lo) / 2.0));
  return sum.value();
}

GapDecomposition cantor_gaps(unsigned depth, double length) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidInput, "length must be positive");
  if (depth > 24) throw Error(ErrorCode::TooLarge, "cantor depth above 24");
  std::vector<std::pair<double, double>> gaps;
  std::vector<std::pair<double, double>> intervals{{0.0, length}};
  for (unsigned level = 0; level < depth; ++level) {
    std::vector<std::pair<double, double>> next;
    next.reserve(intervals.size() * 2);
    for (const auto& [a, b] : intervals) {
      const double third = (b - a) / 3.0;
      gaps.emplace_back(a + third, b - third);
      next.emplace_back(a, a + third);
      next.emplace_back(b - third, b);
    }
    intervals = std::move(next);
  }
  return GapDecomposition({0.0, length}, std::move(gaps));
}

SeriesValue cantor_magnitude(double length, double t, std::optional<unsigned> depth, double tail_target) {
  check_t(t);
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidInput, "length must be positive");
  SeriesValue out;
  Sum sum;
  double x = t * length / 2.0;  // t ℓ / (2·3^i) before dividing by 3
  double gaps_at_level = 1.0;   // 2^(i−1)
  // tail after k terms: Σ_{i>k} 2^(i−1) tanh(x_i) ≤ (tℓ/2)(2/3)^k
  double tail = t * length / 2.0;
  const unsigned cap = depth.value_or(2000);
  for (unsigned i = 1; i <= cap; ++i) {
    if (!depth && tail < tail_target) break;
    x /= 3.0;
    sum.add(gaps_at_level * std::tanh(x));
    gaps_at_level *= 2.0;
    tail *= 2.0 / 3.0;
    out.terms = i;
  }
  sum.add(1.0);
  out.value = sum.value();
  out.tail_bound = tail;
  return out;
}

double gap_union_magnitude(double mag_a, double mag_b, double gap, double t) {
  check_t(t);
  if (gap < 0.0) throw Error(ErrorCode::NegativeGap, "sets overlap: gap is negative");
  return mag_a + mag_b - 1.0 + std::tanh(t * gap / 2.0);
}

GapDecomposition gaps_from_points(std::vector<double> points) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "no points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<std::pair<double, double>> gaps;
  for (std::size_t i = 1; i < points.size(); ++i) gaps.emplace_back(points[i - 1], points[i]);
  return GapDecomposition({points.front(), points.back()}, std::move(gaps));
}

GapDecomposition gap_decomposition_from_json(const nlohmann::json& j) {
  try {
    const auto hull = j.at("hull").get<std::vector<double>>();
    if (hull.size() != 2) throw Error(ErrorCode::InvalidInput, "hull must be [a, b]");
    std::vector<std::pair<double, double>> gaps;
    for (const auto& g : j.value("gaps", nlohmann::json::array())) {
      const auto v = g.get<std::vector<double>>();
      if (v.size() != 2) throw Error(ErrorCode::InvalidInput, "gaps are [a, b] pairs");
      gaps.emplace_back(v[0], v[1]);
    }
    return GapDecomposition({hull[0], hull[1]}, std::move(gaps));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

nlohmann::json to_json(const GapDecomposition& g) {
  nlohmann::json j;
  j["hull"] = {g.hull().first, g.hull().second};
  j["gaps"] = nlohmann::json::array();
  for (const auto& [a, b] : g.gaps()) j["gaps"].push_back({a, b});
  return j;
}

}  // namespace magnitude::line
