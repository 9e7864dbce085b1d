#include "magnitude/euclid.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "magnitude/error.hpp"

namespace magnitude::euclid {
namespace {

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::NonpositiveScale, "radius must be positive");
}

double binomial(unsigned n, unsigned k) {
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

double unit_ball_volume(unsigned n) {
  const double h = static_cast<double>(n) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

double ball_magnitude(unsigned n, double radius) {
  check_radius(radius);
  const double r = radius;
  if (n == 3) return 1.0 + 2.0 * r + r * r + r * r * r / 6.0;
  if (n == 5) {
    // The linear term 72R is required: without it the value drops below 1
    // for small R and below finite subsets of the ball for R near 1.
    const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r;
    return (24.0 + 72.0 * r + 72.0 * r2 + 35.0 * r3 + 9.0 * r4 + r5) / (8.0 * (r + 3.0)) + r5 / 120.0;
  }
  throw Error(ErrorCode::UnsupportedDimension, "closed forms are available for n = 3 and n = 5 only");
}

double sphere_magnitude_even(unsigned n, double radius) {
  check_radius(radius);
  if (n == 0 || n % 2 != 0) throw Error(ErrorCode::OddDimension, "sphere formula requires an even dimension");
  double product = 2.0 / (1.0 + std::exp(-std::numbers::pi * radius));
  for (unsigned j = 1; j < n; j += 2) {
    const double q = radius / j;
    product *= 1.0 + q * q;
  }
  return product;
}

AsymptoticPrediction asymptotic_prediction(unsigned n, unsigned p, double volume) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "dimension must be positive");
  if (!(volume > 0.0)) throw Error(ErrorCode::InvalidInput, "volume must be positive");
  AsymptoticPrediction a;
  a.n = n;
  a.p = p;
  a.volume = volume;
  if (p == 2)
    a.normalizer = std::tgamma(n + 1.0) * unit_ball_volume(n);
  else if (p == 1)
    a.normalizer = std::ldexp(1.0, static_cast<int>(n));
  else
    throw Error(ErrorCode::InvalidInput, "p must be 1 or 2");
  a.leading_coefficient = volume / a.normalizer;
  return a;
}

ConjectureComparison conjecture_compare(unsigned n, double radius) {
  ConjectureComparison c;
  c.exact = ball_magnitude(n, radius);
  const double wn = unit_ball_volume(n);
  double sum = 0.0;
  for (unsigned i = 0; i <= n; ++i) {
    const double vi = binomial(n, i) * wn / unit_ball_volume(n - i) * std::pow(radius, i);
    sum += vi / (std::tgamma(i + 1.0) * unit_ball_volume(i));
  }
  c.conjectured = sum;
  c.difference = c.exact - c.conjectured;
  return c;
}

nlohmann::json to_json(const AsymptoticPrediction& a) {
  return {{"leading_coefficient", a.leading_coefficient},
          {"n", a.n},
          {"p", a.p},
          {"volume", a.volume},
          {"normalizer", a.normalizer}};
}

nlohmann::json to_json(const ConjectureComparison& c) {
  return {{"exact", c.exact}, {"conjectured", c.conjectured}, {"difference", c.difference}};
}

}  // namespace magnitude::euclid
