#include "magnitude/pixels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

#include "magnitude/error.hpp"

namespace magnitude::pixels {
namespace {

std::string cell_str(const Cell& c, unsigned dim) {
  std::string s = "(";
  for (unsigned i = 0; i < dim; ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

Rational half_pow(unsigned k) {
  Rational r(1, 1u << k);
  return r;
}

mpz_class floor_q(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class ceil_q(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// ∫_u^v exp(−|p − x|) dx
double segment_integral(double p, double u, double v) {
  if (p <= u) return std::exp(-(u - p)) - std::exp(-(v - p));
  if (p >= v) return std::exp(-(p - v)) - std::exp(-(p - u));
  return 2.0 - std::exp(-(p - u)) - std::exp(-(v - p));
}

// Unit-spacing dilation volume with half-width rho/2.
Rational unit_dilation_volume(const PixelSet& p, const Rational& rho) {
  const unsigned n = p.dim();
  const Rational half = rho / 2;

  struct Fragment {
    Rational length;
    std::int64_t lo = 0, hi = -1;  // candidate cell coordinates
  };
  std::array<std::vector<Fragment>, 3> axes;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Rational> cuts;
    cuts.reserve(2 * p.size());
    for (const auto& c : p.cells()) {
      cuts.emplace_back(Rational(c[i]) - half);
      cuts.emplace_back(Rational(c[i] + 1) + half);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Rational mid = (cuts[k] + cuts[k + 1]) / 2;
      // c − ρ/2 < mid < c + 1 + ρ/2
      Fragment f;
      f.length = cuts[k + 1] - cuts[k];
      f.lo = floor_q(Rational(mid - 1 - half)).get_si() + 1;
      f.hi = ceil_q(Rational(mid + half)).get_si() - 1;
      axes[i].push_back(std::move(f));
    }
  }

  Rational total = 0;
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (;;) {
    bool covered = false;
    Cell c{0, 0, 0};
    const auto& f0 = axes[0][idx[0]];
    for (c[0] = f0.lo; !covered && c[0] <= f0.hi; ++c[0]) {
      if (n == 1) {
        covered = p.contains(c);
        continue;
      }
      const auto& f1 = axes[1][idx[1]];
      for (c[1] = f1.lo; !covered && c[1] <= f1.hi; ++c[1]) {
        if (n == 2) {
          covered = p.contains(c);
          continue;
        }
        const auto& f2 = axes[2][idx[2]];
        for (c[2] = f2.lo; !covered && c[2] <= f2.hi; ++c[2]) covered = p.contains(c);
      }
    }
    if (covered) {
      Rational vol = axes[0][idx[0]].length;
      for (unsigned i = 1; i < n; ++i) vol *= axes[i][idx[i]].length;
      total += vol;
    }
    unsigned i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }
  return total;
}

void add_box_faces(std::map<Face, Rational>& faces, unsigned n, const Cell& lo, const Cell& hi, int sign) {
  unsigned box_dim = 0;
  for (unsigned i = 0; i < n; ++i) box_dim += hi[i] > lo[i] ? 1u : 0u;
  const Rational coefficient = half_pow(box_dim) * sign;
  // Each non-degenerate axis contributes three choices: low vertex, open, high vertex.
  unsigned combos = 1;
  for (unsigned i = 0; i < box_dim; ++i) combos *= 3;
  for (unsigned code = 0; code < combos; ++code) {
    Face f;
    unsigned rest = code;
    for (unsigned i = 0; i < n; ++i) {
      f.anchor[i] = lo[i];
      if (hi[i] == lo[i]) continue;
      const unsigned choice = rest % 3;
      rest /= 3;
      if (choice == 1) f.axes |= static_cast<std::uint8_t>(1u << i);
      if (choice == 2) f.anchor[i] = hi[i];
    }
    faces[f] += coefficient;
  }
}

void drop_zeros(std::map<Face, Rational>& faces) {
  std::erase_if(faces, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

PixelSet::PixelSet(unsigned dim, Rational scale, std::vector<Cell> cells)
    : dim_(dim), scale_(std::move(scale)), cells_(std::move(cells)) {
  if (dim_ < 1 || dim_ > 3) throw Error(ErrorCode::UnsupportedDimension, "pixel sets live in dimension 1, 2 or 3");
  if (scale_ <= 0) throw Error(ErrorCode::BadScale, "scale must be positive");
  if (cells_.empty()) throw Error(ErrorCode::EmptySet, "no cells");
  for (const auto& c : cells_)
    for (unsigned i = dim_; i < 3; ++i)
      if (c[i] != 0) throw Error(ErrorCode::MixedDimensions, "cell " + cell_str(c, 3) + " exceeds dimension");
  std::sort(cells_.begin(), cells_.end());
  if (auto it = std::adjacent_find(cells_.begin(), cells_.end()); it != cells_.end())
    throw Error(ErrorCode::InvalidInput, "repeated cell " + cell_str(*it, dim_));
  lookup_.insert(cells_.begin(), cells_.end());
}

PixelSet pixel_set_from_ascii(std::string_view art, Rational scale) {
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (start <= art.size()) {
    auto end = art.find('\n', start);
    if (end == std::string_view::npos) end = art.size();
    auto row = art.substr(start, end - start);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    rows.push_back(row);
    start = end + 1;
  }
  while (!rows.empty() && rows.back().find_first_not_of(" \t") == std::string_view::npos) rows.pop_back();
  while (!rows.empty() && rows.front().find_first_not_of(" \t") == std::string_view::npos) rows.erase(rows.begin());

  std::vector<Cell> cells;
  const auto height = static_cast<std::int64_t>(rows.size());
  for (std::int64_t r = 0; r < height; ++r) {
    const auto row = rows[static_cast<std::size_t>(r)];
    for (std::size_t x = 0; x < row.size(); ++x) {
      const char ch = row[x];
      if (ch == '#')
        cells.push_back({static_cast<std::int64_t>(x), height - 1 - r, 0});
      else if (ch != '.' && ch != ' ')
        throw Error(ErrorCode::InvalidInput, std::string("unexpected character '") + ch + "' in pixel art");
    }
  }
  return PixelSet(2, std::move(scale), std::move(cells));
}

PixelSet parse_pixel_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<unsigned> dim;
  Rational scale = 1;
  std::vector<Cell> cells;
  while (std::getline(in, line)) {
    if (auto hash = line.find("//"); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!dim) {
      if (first != "dim") return pixel_set_from_ascii(text);
      long n = 0;
      std::string key, scale_text;
      if (!(ls >> n)) throw Error(ErrorCode::InvalidInput, "header must read 'dim <n> scale <p>/<q>'");
      if (ls >> key) {
        if (key != "scale" || !(ls >> scale_text))
          throw Error(ErrorCode::InvalidInput, "header must read 'dim <n> scale <p>/<q>'");
        try {
          scale = parse_rational(scale_text);
        } catch (const Error&) {
          throw Error(ErrorCode::BadScale, "unreadable scale '" + scale_text + "'");
        }
        if (scale <= 0) throw Error(ErrorCode::BadScale, "scale must be positive");
      }
      if (n < 1 || n > 3) throw Error(ErrorCode::UnsupportedDimension, "dim must be 1, 2 or 3");
      dim = static_cast<unsigned>(n);
      continue;
    }
    std::vector<std::int64_t> coords;
    std::istringstream cs(line);
    std::string tok;
    while (cs >> tok) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "non-integer cell coordinate '" + tok + "'");
      }
    }
    if (coords.size() != *dim)
      throw Error(ErrorCode::MixedDimensions,
                  "cell line '" + line + "' has " + std::to_string(coords.size()) + " coordinates, expected " +
                      std::to_string(*dim));
    Cell c{0, 0, 0};
    std::copy(coords.begin(), coords.end(), c.begin());
    cells.push_back(c);
  }
  if (!dim) throw Error(ErrorCode::EmptySet, "empty pixel input");
  return PixelSet(*dim, scale, std::move(cells));
}

std::string to_pixel_file(const PixelSet& p) {
  std::string out = "dim " + std::to_string(p.dim()) + " scale " + to_string(p.scale()) + "\n";
  for (const auto& c : p.cells()) {
    for (unsigned i = 0; i < p.dim(); ++i) out += (i ? " " : "") + std::to_string(c[i]);
    out += "\n";
  }
  return out;
}

ConvexityVerdict check_l1_convex(const PixelSet& p) {
  const unsigned n = p.dim();
  const auto& cells = p.cells();
  // Reachability from a source under moves whose coordinates change by 0 or
  // σᵢ, one set per sign pattern σ.
  const unsigned patterns = 1u << n;
  for (const auto& u : cells) {
    std::vector<std::set<Cell>> reach(patterns);
    for (unsigned s = 0; s < patterns; ++s) {
      auto& seen = reach[s];
      std::deque<Cell> queue{u};
      seen.insert(u);
      while (!queue.empty()) {
        const Cell cur = queue.front();
        queue.pop_front();
        for (unsigned move = 1; move < patterns; ++move) {
          Cell next = cur;
          for (unsigned i = 0; i < n; ++i)
            if (move & (1u << i)) next[i] += (s & (1u << i)) ? -1 : 1;
          if (p.contains(next) && seen.insert(next).second) queue.push_back(next);
        }
      }
    }
    for (const auto& v : cells) {
      unsigned s = 0;
      for (unsigned i = 0; i < n; ++i)
        if (v[i] < u[i]) s |= 1u << i;
      if (!reach[s].count(v)) return {false, std::make_pair(u, v)};
    }
  }
  return {};
}

Rational FaceMeasure::total_mass() const {
  Rational total = 0;
  std::array<Rational, 4> powers{1, scale, scale * scale, scale * scale * scale};
  for (const auto& [f, c] : faces) total += c * powers[f.dim()];
  return total;
}

FaceMeasure weight_measure(const PixelSet& p) {
  const unsigned n = p.dim();
  std::set<Face> all;
  unsigned per_cell = 1;
  for (unsigned i = 0; i < n; ++i) per_cell *= 3;
  for (const auto& c : p.cells()) {
    for (unsigned code = 0; code < per_cell; ++code) {
      Face f;
      unsigned rest = code;
      for (unsigned i = 0; i < n; ++i) {
        const unsigned choice = rest % 3;
        rest /= 3;
        f.anchor[i] = c[i] + (choice == 2 ? 1 : 0);
        if (choice == 1) f.axes |= static_cast<std::uint8_t>(1u << i);
      }
      all.insert(f);
    }
  }

  FaceMeasure mu;
  mu.dim = n;
  mu.scale = p.scale();
  std::vector<Cell> around;
  for (const auto& f : all) {
    // Cells whose closure contains f: cᵢ = aᵢ on open axes, cᵢ ∈ {aᵢ − 1, aᵢ} elsewhere.
    around.clear();
    std::vector<unsigned> free_axes;
    for (unsigned i = 0; i < n; ++i)
      if (!(f.axes & (1u << i))) free_axes.push_back(i);
    for (unsigned code = 0; code < (1u << free_axes.size()); ++code) {
      Cell c = f.anchor;
      for (std::size_t k = 0; k < free_axes.size(); ++k)
        if (code & (1u << k)) c[free_axes[k]] -= 1;
      if (p.contains(c)) around.push_back(c);
    }
    Rational coefficient = 0;
    const unsigned m = static_cast<unsigned>(around.size());
    for (unsigned subset = 1; subset < (1u << m); ++subset) {
      unsigned agree = 0;
      for (unsigned axis : free_axes) {
        std::optional<std::int64_t> value;
        bool same = true;
        for (unsigned k = 0; k < m && same; ++k) {
          if (!(subset & (1u << k))) continue;
          if (value && *value != around[k][axis]) same = false;
          value = around[k][axis];
        }
        agree += same ? 1u : 0u;
      }
      const int sign = (__builtin_popcount(subset) % 2 == 1) ? 1 : -1;
      coefficient += half_pow(f.dim() + agree) * sign;
    }
    if (coefficient != 0) mu.faces.emplace(f, coefficient);
  }
  return mu;
}

FaceMeasure weight_measure_ie(const PixelSet& p, std::size_t max_cells) {
  if (p.size() > max_cells)
    throw Error(ErrorCode::TooManyCells, std::to_string(p.size()) + " cells exceeds the limit of " +
                                             std::to_string(max_cells));
  const unsigned n = p.dim();
  const auto& cells = p.cells();
  FaceMeasure mu;
  mu.dim = n;
  mu.scale = p.scale();

  auto recurse = [&](auto&& self, std::size_t start, const Cell& lo, const Cell& hi, int sign) -> void {
    for (std::size_t j = start; j < cells.size(); ++j) {
      Cell nlo = lo, nhi = hi;
      bool empty = false;
      for (unsigned i = 0; i < n && !empty; ++i) {
        nlo[i] = std::max(lo[i], cells[j][i]);
        nhi[i] = std::min(hi[i], cells[j][i] + 1);
        empty = nlo[i] > nhi[i];
      }
      if (empty) continue;
      add_box_faces(mu.faces, n, nlo, nhi, sign);
      self(self, j + 1, nlo, nhi, -sign);
    }
  };
  for (std::size_t j = 0; j < cells.size(); ++j) {
    Cell lo = cells[j], hi = cells[j];
    for (unsigned i = 0; i < n; ++i) hi[i] += 1;
    add_box_faces(mu.faces, n, lo, hi, 1);
    recurse(recurse, j + 1, lo, hi, -1);
  }
  drop_zeros(mu.faces);
  return mu;
}

double verify_weight_measure(const PixelSet& p, const FaceMeasure& mu,
                             const std::vector<std::vector<double>>& probes) {
  const unsigned n = p.dim();
  const double lambda = p.scale().get_d();
  const double slack = 1e-12 * std::max(1.0, lambda);

  std::vector<std::pair<Face, double>> terms;
  terms.reserve(mu.faces.size());
  for (const auto& [f, c] : mu.faces) terms.emplace_back(f, c.get_d());

  double worst = 0.0;
  for (const auto& a : probes) {
    if (a.size() != n) throw Error(ErrorCode::MixedDimensions, "probe dimension does not match the set");
    bool inside = false;
    for (const auto& c : p.cells()) {
      bool in = true;
      for (unsigned i = 0; i < n && in; ++i)
        in = a[i] >= lambda * static_cast<double>(c[i]) - slack &&
             a[i] <= lambda * static_cast<double>(c[i] + 1) + slack;
      if (in) {
        inside = true;
        break;
      }
    }
    if (!inside) throw Error(ErrorCode::ProbeOutsideSet, "probe lies outside the pixel set");

    double integral = 0.0;
    for (const auto& [f, c] : terms) {
      double term = c;
      for (unsigned i = 0; i < n; ++i) {
        const double lo = lambda * static_cast<double>(f.anchor[i]);
        term *= (f.axes & (1u << i)) ? segment_integral(a[i], lo, lo + lambda) : std::exp(-std::abs(a[i] - lo));
      }
      integral += term;
    }
    worst = std::max(worst, std::abs(integral - 1.0));
  }
  return worst;
}

std::vector<std::vector<double>> probe_grid(const PixelSet& p, unsigned per_axis) {
  const unsigned n = p.dim();
  const double lambda = p.scale().get_d();
  const unsigned steps = std::max(per_axis, 2u);
  unsigned count = 1;
  for (unsigned i = 0; i < n; ++i) count *= steps;
  std::vector<std::vector<double>> out;
  out.reserve(count * p.size());
  for (const auto& c : p.cells()) {
    for (unsigned code = 0; code < count; ++code) {
      std::vector<double> pt(n);
      unsigned rest = code;
      for (unsigned i = 0; i < n; ++i) {
        const double frac = static_cast<double>(rest % steps) / (steps - 1);
        rest /= steps;
        pt[i] = lambda * (static_cast<double>(c[i]) + frac);
      }
      out.push_back(std::move(pt));
    }
  }
  return out;
}

Rational dilation_volume(const PixelSet& p, const Rational& r) {
  if (r < 0) throw Error(ErrorCode::InvalidInput, "dilation radius must be nonnegative");
  const Rational rho = r / p.scale();
  return unit_dilation_volume(p, rho) * pow(p.scale(), p.dim());
}

Rational SteinerPolynomial::dilation_volume(const Rational& r) const {
  const std::size_t n = v.empty() ? 0 : v.size() - 1;
  Rational total = 0;
  for (std::size_t i = 0; i <= n && !v.empty(); ++i) total += v[i] * pow(r, static_cast<unsigned>(n - i));
  return total;
}

SteinerPolynomial intrinsic_volumes(const PixelSet& p) {
  const unsigned n = p.dim();
  std::vector<Rational> nodes, values;
  for (unsigned k = 0; k <= n; ++k) {
    Rational rho(kSteinerNodes[k].first, kSteinerNodes[k].second);
    nodes.push_back(rho);
    values.push_back(unit_dilation_volume(p, rho));
  }
  // values are Σ cₖ ρᵏ with cₖ = V'_{n−k} at unit spacing; V'ᵢ scales as λⁱ.
  const auto c = solve_vandermonde(nodes, values);
  SteinerPolynomial s;
  s.v.resize(n + 1);
  for (unsigned i = 0; i <= n; ++i) s.v[i] = c[n - i] * pow(p.scale(), i);
  return s;
}

Rational magnitude_from_intrinsic(const SteinerPolynomial& s, const Rational& t) {
  Rational total = 0;
  Rational factor = 1;
  const Rational half_t = t / 2;
  for (const auto& vi : s.v) {
    total += vi * factor;
    factor *= half_t;
  }
  return total;
}

double magnitude_from_intrinsic(const SteinerPolynomial& s, double t) {
  double total = 0.0;
  double factor = 1.0;
  for (const auto& vi : s.v) {
    total += vi.get_d() * factor;
    factor *= t / 2.0;
  }
  return total;
}

PixelMagnitude magnitude_via_intrinsic(const PixelSet& p, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NonpositiveScale, "t must be positive");
  PixelMagnitude out;
  out.intrinsic = intrinsic_volumes(p);
  out.value = magnitude_from_intrinsic(out.intrinsic, t);
  out.l1_convex = check_l1_convex(p).convex;
  return out;
}

PixelMagnitude magnitude_via_intrinsic(const PixelSet& p, const Rational& t) {
  if (t <= 0) throw Error(ErrorCode::NonpositiveScale, "t must be positive");
  PixelMagnitude out;
  out.intrinsic = intrinsic_volumes(p);
  out.exact = magnitude_from_intrinsic(out.intrinsic, t);
  out.value = out.exact->get_d();
  out.l1_convex = check_l1_convex(p).convex;
  return out;
}

nlohmann::json to_json(const Cell& c, unsigned dim) {
  auto j = nlohmann::json::array();
  for (unsigned i = 0; i < dim; ++i) j.push_back(c[i]);
  return j;
}

nlohmann::json to_json(const FaceMeasure& mu) {
  nlohmann::json j;
  j["dim"] = mu.dim;
  j["scale"] = to_string(mu.scale);
  j["total_mass"] = to_string(mu.total_mass());
  auto faces = nlohmann::json::array();
  for (const auto& [f, c] : mu.faces) {
    auto axes = nlohmann::json::array();
    for (unsigned i = 0; i < mu.dim; ++i)
      if (f.axes & (1u << i)) axes.push_back(i);
    faces.push_back({{"anchor", to_json(f.anchor, mu.dim)}, {"axes", axes}, {"coefficient", to_string(c)}});
  }
  j["faces"] = std::move(faces);
  return j;
}

nlohmann::json to_json(const SteinerPolynomial& s) {
  auto j = nlohmann::json::array();
  for (const auto& v : s.v) j.push_back(to_string(v));
  return j;
}

nlohmann::json to_json(const PixelMagnitude& m) {
  nlohmann::json j;
  j["V"] = to_json(m.intrinsic);
  if (m.exact)
    j["magnitude"] = to_string(*m.exact);
  else
    j["magnitude"] = m.value;
  j["l1_convex"] = m.l1_convex;
  if (m.upper_bound_only()) j["note"] = "set is not l1-convex; value is an upper-bound candidate";
  return j;
}

}  // namespace magnitude::pixels
