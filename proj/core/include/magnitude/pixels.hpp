#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "magnitude/rational.hpp"

namespace magnitude::pixels {

/// Integer cell coordinates; entries past the set's dimension are zero.
using Cell = std::array<std::int64_t, 3>;

/// Finite union of λ-scaled lattice cubes in ℓ₁ⁿ, n ≤ 3. Cell c occupies
/// ∏ [λ cᵢ, λ (cᵢ + 1)].
class PixelSet {
 public:
  /// Throws EmptySet, BadScale (λ ≤ 0), UnsupportedDimension (n ∉ {1,2,3}),
  /// MixedDimensions (nonzero coordinates past n) and InvalidInput (repeated cells).
  PixelSet(unsigned dim, Rational scale, std::vector<Cell> cells);

  unsigned dim() const noexcept { return dim_; }
  const Rational& scale() const noexcept { return scale_; }
  /// Sorted lexicographically.
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool contains(const Cell& c) const { return lookup_.count(c) != 0; }

  /// Same cells, spacing λ replaced.
  PixelSet with_scale(Rational scale) const { return PixelSet(dim_, std::move(scale), cells_); }

 private:
  unsigned dim_;
  Rational scale_;
  std::vector<Cell> cells_;
  std::set<Cell> lookup_;
};

/// Either a pixel file ("dim <n> scale <p>/<q>" then one cell per line) or a
/// 2D ASCII block of '#' and '.', top row at the highest y.
PixelSet parse_pixel_set(std::string_view text);
PixelSet pixel_set_from_ascii(std::string_view art, Rational scale = 1);
std::string to_pixel_file(const PixelSet& p);

struct ConvexityVerdict {
  bool convex = true;
  /// First ordered pair (in cell order) with no monotone path.
  std::optional<std::pair<Cell, Cell>> witness;
};

/// True iff every ordered pair of cells is joined by a coordinate-monotone
/// cell path inside the set. A step may move several coordinates at once
/// (each by one toward the target), so cells meeting only at a corner are
/// joined through that corner.
ConvexityVerdict check_l1_convex(const PixelSet& p);

/// Relatively open lattice face: coordinate i ranges over (aᵢ, aᵢ + 1) when
/// bit i of `axes` is set and equals aᵢ otherwise.
struct Face {
  Cell anchor{};
  std::uint8_t axes = 0;

  unsigned dim() const noexcept { return static_cast<unsigned>(__builtin_popcount(axes)); }
  auto operator<=>(const Face&) const = default;
};

/// Σ_F c_F · (Lebesgue measure on λF); zero coefficients are never stored.
struct FaceMeasure {
  unsigned dim = 0;
  Rational scale = 1;
  std::map<Face, Rational> faces;

  Rational total_mass() const;
  bool operator==(const FaceMeasure& other) const = default;
};

/// Face-local construction: c_G = Σ over nonempty sets S of cells whose
/// closures contain G of (−1)^{|S|+1} (1/2)^{dim ∩S}.
FaceMeasure weight_measure(const PixelSet& p);

/// Inclusion–exclusion over all cell subsets with nonempty intersection,
/// each intersection box contributing (1/2)^{dim} on every one of its open
/// faces. Throws TooManyCells above `max_cells`.
FaceMeasure weight_measure_ie(const PixelSet& p, std::size_t max_cells = 20);

/// max over probes of |∫ exp(−‖a − x‖₁) dμ(x) − 1|, evaluated face by face in
/// closed form. Probes are points of ℝⁿ (length n); throws ProbeOutsideSet.
double verify_weight_measure(const PixelSet& p, const FaceMeasure& mu, const std::vector<std::vector<double>>& probes);

/// The points λ(c + k/(m−1)) for k ∈ {0..m−1}ⁿ in every cell.
std::vector<std::vector<double>> probe_grid(const PixelSet& p, unsigned per_axis = 5);

/// vol(P + rQⁿ), Qⁿ = [−½, ½]ⁿ, exactly, by cutting space at every box face.
Rational dilation_volume(const PixelSet& p, const Rational& r);

/// vol(A + rQⁿ) = Σ V'ᵢ r^{n−i}; V'ₙ is the volume and V'₀ = 1.
struct SteinerPolynomial {
  std::vector<Rational> v;

  Rational dilation_volume(const Rational& r) const;
};

/// Fit nodes, in units of the grid spacing λ. Below spacing 1 no gap of the
/// set closes, so the dilation volume is a single polynomial there.
inline constexpr std::array<std::pair<long, long>, 4> kSteinerNodes{{{1, 4}, {1, 3}, {1, 2}, {2, 3}}};

SteinerPolynomial intrinsic_volumes(const PixelSet& p);

/// Σ V'ᵢ tⁱ / 2ⁱ.
Rational magnitude_from_intrinsic(const SteinerPolynomial& s, const Rational& t);
double magnitude_from_intrinsic(const SteinerPolynomial& s, double t);

struct PixelMagnitude {
  SteinerPolynomial intrinsic;
  double value = 0.0;
  /// Set when t was given exactly.
  std::optional<Rational> exact;
  bool l1_convex = true;
  /// For sets that are not ℓ1-convex the value is only an upper-bound candidate.
  bool upper_bound_only() const noexcept { return !l1_convex; }
};

PixelMagnitude magnitude_via_intrinsic(const PixelSet& p, double t);
PixelMagnitude magnitude_via_intrinsic(const PixelSet& p, const Rational& t);

nlohmann::json to_json(const FaceMeasure& mu);
nlohmann::json to_json(const SteinerPolynomial& s);
/// {"V": [...], "magnitude": "p/q" or number, "l1_convex": bool}.
nlohmann::json to_json(const PixelMagnitude& m);
nlohmann::json to_json(const Cell& c, unsigned dim);

}  // namespace magnitude::pixels
