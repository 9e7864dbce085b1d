#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "magnitude/pixels.hpp"
#include "magnitude/rational.hpp"

namespace magnitude::pixels {

using RationalPoint = std::vector<Rational>;

/// A convex polytope in ℝⁿ, n ≤ 3. A box is given by its low and high corners;
/// simplices and general polytopes by their vertices.
struct ConvexBodySpec {
  enum class Kind { Box, SimplexVertices, PolytopeVertices };

  unsigned dim = 2;
  Kind kind = Kind::PolytopeVertices;
  std::vector<RationalPoint> vertices;
};

/// a·x ≤ b.
struct HalfSpace {
  RationalPoint a;
  Rational b;
};

struct HRepresentation {
  std::vector<HalfSpace> facets;
  std::vector<RationalPoint> vertices;
};

/// Facets and extreme points. Throws DegenerateBody when the vertices do not
/// span ℝⁿ and NonConvexVertices when a listed vertex is not extreme.
HRepresentation h_representation(const ConvexBodySpec& body);

/// Cells of spacing λ whose interior meets the interior of the body.
PixelSet outer_pixelation(const ConvexBodySpec& body, const Rational& lambda);
/// Cells of spacing λ contained in the body; nullopt when there are none.
std::optional<PixelSet> inner_pixelation(const ConvexBodySpec& body, const Rational& lambda);

struct PixelBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Largest α with p + α(A_λ − p) ⊆ A, p the vertex centroid.
  Rational alpha;
  PixelSet outer;
  SteinerPolynomial outer_intrinsic;
  /// Σ V'ᵢ(αA_λ) tⁱ/2ⁱ.
  double scaled_outer_lower = 0.0;
  /// Same sum for the inner pixelation, when it is nonempty and ℓ1-convex.
  std::optional<double> inner_lower;
};

/// upper = Σ V'ᵢ(A_λ) tⁱ/2ⁱ for the outer pixelation A_λ. lower is the larger
/// of the same sum for the shrunken copy α·A_λ, which fits inside the body,
/// and for the inner pixelation. Both sets are ℓ1-convex subsets of A, so
/// their magnitudes bound |tA| from below.
PixelBounds convex_body_pixel_bounds(const ConvexBodySpec& body, const Rational& lambda, double t);

/// {"kind": "box"|"simplex"|"polytope", "dim": n, "vertices": [["p/q", ...], ...]}.
ConvexBodySpec convex_body_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PixelBounds& bounds);

}  // namespace magnitude::pixels
