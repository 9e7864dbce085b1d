#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oracle {

std::optional<std::array<std::size_t, 3>> triangle_violation(const Matrix& d, double slack) {
  const auto n = static_cast<std::size_t>(d.rows());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d(i, j) > d(i, k) + d(k, j) + slack) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

long double dense_magnitude(const Matrix& d, double t) {
  const auto n = static_cast<std::size_t>(d.rows());
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 1.0L));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = std::exp(-static_cast<long double>(t) * d(i, j));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      if (f == 0.0L) continue;
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<long double> w(n);
  long double total = 0.0L;
  for (std::size_t i = n; i-- > 0;) {
    long double s = a[i][n];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * w[k];
    w[i] = s / a[i][i];
    total += w[i];
  }
  return total;
}

double line_closed_form(std::vector<double> coords, double t) {
  std::sort(coords.begin(), coords.end());
  double m = 1.0;
  for (std::size_t i = 1; i < coords.size(); ++i) m += std::tanh(t * (coords[i] - coords[i - 1]) / 2.0);
  return m;
}

bool l1_convex_dp(const PixelSet& p) {
  const unsigned n = p.dim();
  for (const Cell& u : p.cells()) {
    for (const Cell& v : p.cells()) {
      std::array<std::int64_t, 3> len{0, 0, 0}, sgn{0, 0, 0};
      for (unsigned i = 0; i < n; ++i) {
        len[i] = std::llabs(v[i] - u[i]);
        sgn[i] = v[i] >= u[i] ? 1 : -1;
      }
      const std::int64_t sy = len[1] + 1, sz = len[2] + 1;
      std::vector<char> reach(static_cast<std::size_t>((len[0] + 1) * sy * sz), 0);
      auto at = [&](std::int64_t a, std::int64_t b, std::int64_t c) -> char& {
        return reach[static_cast<std::size_t>((a * sy + b) * sz + c)];
      };
      for (std::int64_t a = 0; a <= len[0]; ++a)
        for (std::int64_t b = 0; b <= len[1]; ++b)
          for (std::int64_t c = 0; c <= len[2]; ++c) {
            const Cell cell{u[0] + sgn[0] * a, u[1] + sgn[1] * b, u[2] + sgn[2] * c};
            if (!p.contains(cell)) continue;
            if (a == 0 && b == 0 && c == 0) {
              at(a, b, c) = 1;
              continue;
            }
            for (int mask = 1; mask < 8 && !at(a, b, c); ++mask) {
              const std::int64_t da = mask & 1, db = (mask >> 1) & 1, dc = (mask >> 2) & 1;
              if (a < da || b < db || c < dc) continue;
              if (at(a - da, b - db, c - dc)) at(a, b, c) = 1;
            }
          }
      if (!at(len[0], len[1], len[2])) return false;
    }
  }
  return true;
}

Rational dilation_volume_ie(const PixelSet& p, const Rational& r) {
  const unsigned n = p.dim();
  const auto& cells = p.cells();
  const Rational half = r / 2;
  using Box = std::vector<std::pair<Rational, Rational>>;
  Rational total = 0;
  auto recurse = [&](auto&& self, std::size_t next, const Box& box, int sign) -> void {
    for (std::size_t k = next; k < cells.size(); ++k) {
      Box b = box;
      Rational vol = 1;
      for (unsigned i = 0; i < n; ++i) {
        const Rational lo = p.scale() * cells[k][i] - half, hi = p.scale() * (cells[k][i] + 1) + half;
        if (box.empty()) {
          b.emplace_back(lo, hi);
        } else {
          b[i].first = std::max(b[i].first, lo);
          b[i].second = std::min(b[i].second, hi);
        }
        vol *= b[i].second > b[i].first ? Rational(b[i].second - b[i].first) : Rational(0);
      }
      if (vol == 0) continue;
      total += sign * vol;
      self(self, k + 1, b, -sign);
    }
  };
  recurse(recurse, 0, Box{}, 1);
  return total;
}

std::vector<PixelSet> fixed_polyominoes(unsigned size) {
  using Shape = std::set<std::pair<int, int>>;
  auto normalise = [](const Shape& s) {
    int mx = s.begin()->first, my = s.begin()->second;
    for (auto [x, y] : s) mx = std::min(mx, x), my = std::min(my, y);
    Shape out;
    for (auto [x, y] : s) out.emplace(x - mx, y - my);
    return out;
  };
  std::set<Shape> level{Shape{{0, 0}}};
  for (unsigned k = 1; k < size; ++k) {
    std::set<Shape> grown;
    for (const Shape& s : level)
      for (auto [x, y] : s)
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          if (s.count({x + dx, y + dy})) continue;
          Shape t = s;
          t.emplace(x + dx, y + dy);
          grown.insert(normalise(t));
        }
    level = std::move(grown);
  }
  std::vector<PixelSet> out;
  for (const Shape& s : level) {
    std::vector<Cell> cells;
    for (auto [x, y] : s) cells.push_back({x, y, 0});
    out.emplace_back(2, Rational(1), std::move(cells));
  }
  return out;
}

Matrix pixel_grid_points(const PixelSet& p, unsigned per_unit) {
  const unsigned n = p.dim();
  std::set<std::array<std::int64_t, 3>> keys;
  for (const Cell& c : p.cells()) {
    const unsigned m = per_unit + 1;
    const unsigned total = n == 1 ? m : n == 2 ? m * m : m * m * m;
    for (unsigned k = 0; k < total; ++k) {
      std::array<std::int64_t, 3> key{0, 0, 0};
      unsigned rest = k;
      for (unsigned i = 0; i < n; ++i) {
        key[i] = c[i] * per_unit + rest % m;
        rest /= m;
      }
      keys.insert(key);
    }
  }
  const double h = p.scale().get_d() / per_unit;
  Matrix pts(static_cast<Eigen::Index>(keys.size()), n);
  Eigen::Index row = 0;
  for (const auto& key : keys) {
    for (unsigned i = 0; i < n; ++i) pts(row, i) = h * static_cast<double>(key[i]);
    ++row;
  }
  return pts;
}

std::vector<double> Gen::line_points(std::size_t n, double min_gap, double max_gap) {
  std::vector<double> x(n);
  double at = uniform(-5.0, 5.0);
  for (auto& v : x) {
    v = at;
    at += uniform(min_gap, max_gap);
  }
  return x;
}

Matrix Gen::cloud(std::size_t n, unsigned dim, double side) {
  Matrix m(static_cast<Eigen::Index>(n), dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = uniform(0.0, side);
  return m;
}

PixelSet Gen::grown_pixels(unsigned dim, std::size_t cells) {
  std::vector<Cell> out{{0, 0, 0}};
  std::set<Cell> seen(out.begin(), out.end());
  while (out.size() < cells) {
    Cell c = out[index(0, out.size() - 1)];
    const auto axis = index(0, dim - 1);
    c[axis] += coin() ? 1 : -1;
    if (seen.insert(c).second) out.push_back(c);
  }
  return PixelSet(dim, Rational(1), std::move(out));
}

PixelSet Gen::staircase(std::size_t columns, std::size_t max_height) {
  std::vector<Cell> out;
  std::size_t h = index(1, max_height);
  for (std::size_t x = 0; x < columns; ++x) {
    for (std::size_t y = 0; y < h; ++y) out.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y), 0});
    h = index(1, h);
  }
  return PixelSet(2, Rational(1), std::move(out));
}

}  // namespace oracle
