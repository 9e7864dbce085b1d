#include "magnitude/dimension.hpp"

#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

#include "magnitude/error.hpp"

namespace magnitude {

std::string_view to_string(DimensionMethod method) {
  return method == DimensionMethod::DiversityGrowth ? "diversity_growth" : "covering_growth";
}

DimensionEstimate dimension_estimate(const FiniteMetricSpace& space, std::pair<double, double> window,
                                     std::size_t samples, const DimensionOptions& options) {
  const auto [lo, hi] = window;
  if (!(lo > 0.0) || !(hi > lo)) throw Error(ErrorCode::WindowTooNarrow, "window must satisfy 0 < t_min < t_max");
  if (samples < 4 + 2 * options.drop_each_end)
    throw Error(ErrorCode::WindowTooNarrow, "need at least four samples after trimming the window ends");

  DimensionEstimate e;
  e.method = options.method;
  e.window = window;
  e.t = log_grid(lo, hi, samples);
  e.quantity.assign(samples, std::nan(""));
  e.within_resolution = space.size() < 2 || hi * space.min_separation() <= 1.0;

  auto work = [&](std::size_t k) {
    const double t = e.t[k];
    if (options.method == DimensionMethod::DiversityGrowth) {
      try {
        const auto r = max_diversity(space, t, options.diversity);
        if (r.converged) e.quantity[k] = r.value;
      } catch (const Error&) {
      }
    } else {
      e.quantity[k] = static_cast<double>(covering_number(space, 1.0 / t).number);
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, samples));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < samples; k += threads) work(k);
      });
  }

  e.used.assign(samples, false);
  std::vector<double> xs, ys;
  for (std::size_t k = options.drop_each_end; k + options.drop_each_end < samples; ++k) {
    if (!(e.quantity[k] > 0.0) || !std::isfinite(e.quantity[k])) continue;
    e.used[k] = true;
    xs.push_back(std::log(e.t[k]));
    ys.push_back(std::log(e.quantity[k]));
  }
  if (xs.size() < 4) throw Error(ErrorCode::WindowTooNarrow, "fewer than four usable samples in the window");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  e.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + e.slope * (xs[i] - mx));
    ss += r * r;
  }
  e.fit_residual = std::sqrt(ss / n);
  return e;
}

DimensionEstimate dimension_estimate(const SpaceFamily& family, std::size_t level, std::pair<double, double> window,
                                     std::size_t samples, const DimensionOptions& options) {
  return dimension_estimate(generate_space(family(level)), window, samples, options);
}

nlohmann::json to_json(const DimensionEstimate& e) {
  return {{"slope", e.slope},
          {"window", {e.window.first, e.window.second}},
          {"fit_residual", e.fit_residual},
          {"method", to_string(e.method)},
          {"t", e.t},
          {"quantity", e.quantity},
          {"within_resolution", e.within_resolution}};
}

}  // namespace magnitude
