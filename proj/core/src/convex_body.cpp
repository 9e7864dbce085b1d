#include "magnitude/convex_body.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "magnitude/error.hpp"

namespace magnitude::pixels {
namespace {

Rational dot(const RationalPoint& a, const RationalPoint& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalPoint minus(const RationalPoint& a, const RationalPoint& b) {
  RationalPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool is_zero(const RationalPoint& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Rank of a set of vectors by exact elimination.
std::size_t rank(std::vector<RationalPoint> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][c] == 0) continue;
      const Rational f = rows[k][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[k][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::size_t affine_rank(const std::vector<RationalPoint>& pts) {
  if (pts.size() < 2) return 0;
  std::vector<RationalPoint> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back(minus(pts[k], pts[0]));
  return rank(std::move(diffs));
}

// Normal of the hyperplane through n points in ℝⁿ; zero when they are dependent.
RationalPoint normal_through(const std::vector<const RationalPoint*>& pts, unsigned n) {
  if (n == 1) return {Rational(1)};
  const auto d1 = minus(*pts[1], *pts[0]);
  if (n == 2) return {-d1[1], d1[0]};
  const auto d2 = minus(*pts[2], *pts[0]);
  return {d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2], d1[0] * d2[1] - d1[1] * d2[0]};
}

// Calls f on every k-subset of {0..m−1} as an index vector.
template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Unique solution of A x = b (n × n), if any.
std::optional<RationalPoint> solve(std::vector<RationalPoint> a, RationalPoint b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  RationalPoint x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::vector<RationalPoint> cell_corners(const Cell& c, unsigned n, const Rational& lambda) {
  std::vector<RationalPoint> out;
  for (unsigned code = 0; code < (1u << n); ++code) {
    RationalPoint v(n);
    for (unsigned i = 0; i < n; ++i) v[i] = lambda * (c[i] + ((code >> i) & 1u));
    out.push_back(std::move(v));
  }
  return out;
}

// Whether the closed cell meets the body in a full-dimensional set.
bool cell_meets_interior(const HRepresentation& h, const Cell& c, unsigned n, const Rational& lambda) {
  const auto corners = cell_corners(c, n, lambda);
  bool all_inside = true;
  for (const auto& f : h.facets) {
    bool all_out = true;
    for (const auto& v : corners) {
      const Rational s = dot(f.a, v);
      if (s > f.b) all_inside = false;
      if (s < f.b) all_out = false;
    }
    if (all_out) return false;
  }
  if (all_inside) return true;

  std::vector<HalfSpace> constraints = h.facets;
  for (unsigned i = 0; i < n; ++i) {
    RationalPoint e(n, Rational(0));
    e[i] = 1;
    constraints.push_back({e, lambda * (c[i] + 1)});
    e[i] = -1;
    constraints.push_back({e, -lambda * c[i]});
  }
  std::vector<RationalPoint> vertices;
  for_each_subset(constraints.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<RationalPoint> a;
    RationalPoint b;
    for (auto k : idx) {
      a.push_back(constraints[k].a);
      b.push_back(constraints[k].b);
    }
    auto x = solve(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& g : constraints)
      if (dot(g.a, *x) > g.b) return;
    vertices.push_back(std::move(*x));
  });
  return affine_rank(vertices) == n;
}

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) return parse_rational(v.dump());
  throw Error(ErrorCode::InvalidInput, "coordinates must be numbers or \"p/q\" strings");
}

}  // namespace

HRepresentation h_representation(const ConvexBodySpec& body) {
  const unsigned n = body.dim;
  if (n < 1 || n > 3) throw Error(ErrorCode::UnsupportedDimension, "convex bodies live in dimension 1, 2 or 3");
  for (const auto& v : body.vertices)
    if (v.size() != n) throw Error(ErrorCode::MixedDimensions, "vertex dimension does not match the body");

  HRepresentation h;
  if (body.kind == ConvexBodySpec::Kind::Box) {
    if (body.vertices.size() != 2) throw Error(ErrorCode::InvalidInput, "a box is given by two corners");
    const auto& lo = body.vertices[0];
    const auto& hi = body.vertices[1];
    for (unsigned i = 0; i < n; ++i) {
      if (!(hi[i] > lo[i])) throw Error(ErrorCode::DegenerateBody, "box has an empty interior");
      RationalPoint e(n, Rational(0));
      e[i] = 1;
      h.facets.push_back({e, hi[i]});
      e[i] = -1;
      h.facets.push_back({e, -lo[i]});
    }
    for (unsigned code = 0; code < (1u << n); ++code) {
      RationalPoint v(n);
      for (unsigned i = 0; i < n; ++i) v[i] = ((code >> i) & 1u) ? hi[i] : lo[i];
      h.vertices.push_back(std::move(v));
    }
    return h;
  }

  const auto& pts = body.vertices;
  if (body.kind == ConvexBodySpec::Kind::SimplexVertices && pts.size() != n + 1)
    throw Error(ErrorCode::InvalidInput, "a simplex in dimension " + std::to_string(n) + " needs " +
                                             std::to_string(n + 1) + " vertices");
  {
    std::set<RationalPoint> distinct(pts.begin(), pts.end());
    if (distinct.size() != pts.size()) throw Error(ErrorCode::NonConvexVertices, "repeated vertex");
  }
  if (affine_rank(pts) < n) throw Error(ErrorCode::DegenerateBody, "vertices do not span the space");

  std::set<std::pair<RationalPoint, Rational>> seen;
  for_each_subset(pts.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<const RationalPoint*> chosen;
    for (auto k : idx) chosen.push_back(&pts[k]);
    auto a = normal_through(chosen, n);
    if (is_zero(a)) return;
    Rational b = dot(a, pts[idx[0]]);
    bool below = true, above = true;
    for (const auto& v : pts) {
      const Rational s = dot(a, v);
      if (s > b) below = false;
      if (s < b) above = false;
    }
    if (!below && !above) return;
    if (!below) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    const auto lead = std::find_if(a.begin(), a.end(), [](const Rational& x) { return x != 0; });
    const Rational scale = abs(*lead);
    for (auto& x : a) x /= scale;
    b /= scale;
    if (seen.emplace(a, b).second) h.facets.push_back({a, b});
  });

  for (const auto& v : pts) {
    std::vector<RationalPoint> normals;
    for (const auto& f : h.facets)
      if (dot(f.a, v) == f.b) normals.push_back(f.a);
    if (rank(normals) < n) throw Error(ErrorCode::NonConvexVertices, "a listed vertex is not an extreme point");
  }
  h.vertices = pts;
  return h;
}

PixelSet outer_pixelation(const ConvexBodySpec& body, const Rational& lambda) {
  if (lambda <= 0) throw Error(ErrorCode::BadScale, "pixel spacing must be positive");
  const auto h = h_representation(body);
  const unsigned n = body.dim;
  Cell lo{0, 0, 0}, hi{0, 0, 0};
  for (unsigned i = 0; i < n; ++i) {
    Rational mn = h.vertices[0][i], mx = h.vertices[0][i];
    for (const auto& v : h.vertices) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    const Rational a = mn / lambda, b = mx / lambda;
    mpz_class f, c;
    mpz_fdiv_q(f.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_cdiv_q(c.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    lo[i] = f.get_si();
    hi[i] = c.get_si() - 1;
  }
  std::vector<Cell> cells;
  Cell c{0, 0, 0};
  for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0])
    for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1])
      for (c[2] = lo[2]; c[2] <= hi[2]; ++c[2])
        if (cell_meets_interior(h, c, n, lambda)) cells.push_back(c);
  return PixelSet(n, lambda, std::move(cells));
}

std::optional<PixelSet> inner_pixelation(const ConvexBodySpec& body, const Rational& lambda) {
  const auto outer = outer_pixelation(body, lambda);
  const auto h = h_representation(body);
  std::vector<Cell> cells;
  for (const auto& c : outer.cells()) {
    const auto corners = cell_corners(c, body.dim, lambda);
    const bool inside = std::all_of(h.facets.begin(), h.facets.end(), [&](const HalfSpace& f) {
      return std::all_of(corners.begin(), corners.end(), [&](const RationalPoint& v) { return dot(f.a, v) <= f.b; });
    });
    if (inside) cells.push_back(c);
  }
  if (cells.empty()) return std::nullopt;
  return PixelSet(body.dim, lambda, std::move(cells));
}

PixelBounds convex_body_pixel_bounds(const ConvexBodySpec& body, const Rational& lambda, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveScale, "t must be positive");
  const auto h = h_representation(body);
  const unsigned n = body.dim;
  auto outer = outer_pixelation(body, lambda);

  RationalPoint p(n, Rational(0));
  for (const auto& v : h.vertices)
    for (unsigned i = 0; i < n; ++i) p[i] += v[i];
  for (auto& x : p) x /= static_cast<long>(h.vertices.size());

  std::set<RationalPoint> corners;
  for (const auto& c : outer.cells())
    for (auto& v : cell_corners(c, n, lambda)) corners.insert(std::move(v));

  Rational alpha = 1;
  for (const auto& f : h.facets) {
    const Rational room = f.b - dot(f.a, p);
    for (const auto& v : corners) {
      const Rational reach = dot(f.a, minus(v, p));
      if (reach > 0) alpha = std::min(alpha, Rational(room / reach));
    }
  }

  auto intrinsic = intrinsic_volumes(outer);
  const double scaled = magnitude_from_intrinsic(intrinsic, alpha.get_d() * t);
  const double upper = magnitude_from_intrinsic(intrinsic, t);
  PixelBounds out{scaled, upper, alpha, std::move(outer), std::move(intrinsic), scaled, std::nullopt};
  if (auto inner = inner_pixelation(body, lambda); inner && check_l1_convex(*inner).convex) {
    out.inner_lower = magnitude_from_intrinsic(intrinsic_volumes(*inner), t);
    out.lower = std::max(out.lower, *out.inner_lower);
  }
  return out;
}

ConvexBodySpec convex_body_from_json(const nlohmann::json& j) {
  try {
    ConvexBodySpec body;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "box")
      body.kind = ConvexBodySpec::Kind::Box;
    else if (kind == "simplex")
      body.kind = ConvexBodySpec::Kind::SimplexVertices;
    else if (kind == "polytope")
      body.kind = ConvexBodySpec::Kind::PolytopeVertices;
    else
      throw Error(ErrorCode::BadSpec, "unknown body kind '" + kind + "'");
    const auto& verts = j.at("vertices");
    body.dim = j.contains("dim") ? j.at("dim").get<unsigned>()
                                 : (verts.empty() ? 0u : static_cast<unsigned>(verts.at(0).size()));
    for (const auto& v : verts) {
      RationalPoint pt;
      for (const auto& x : v) pt.push_back(rational_from_json(x));
      body.vertices.push_back(std::move(pt));
    }
    return body;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadSpec, e.what());
  }
}

nlohmann::json to_json(const PixelBounds& bounds) {
  return {{"lower", bounds.lower},
          {"upper", bounds.upper},
          {"alpha", to_string(bounds.alpha)},
          {"scaled_outer_lower", bounds.scaled_outer_lower},
          {"inner_lower", bounds.inner_lower ? nlohmann::json(*bounds.inner_lower) : nlohmann::json()},
          {"cells", bounds.outer.size()},
          {"V_outer", to_json(bounds.outer_intrinsic)}};
}

}  // namespace magnitude::pixels
