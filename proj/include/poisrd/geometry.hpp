#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "poisrd/exact_linalg.hpp"
#include "poisrd/rational.hpp"

namespace poisrd {

/// Inexact coordinates, used only on Monte-Carlo paths.
using RealVector = std::vector<double>;

/// Finite vertex set in R^n with exact coordinates. Vertices are kept
/// deduplicated and in lexicographic order, so equal point sets compare equal
/// and vertex indices are reproducible.
class Polytope {
 public:
  /// Throws std::invalid_argument on an empty set or mixed dimensions.
  explicit Polytope(std::vector<RationalVector> vertices);

  /// Convex hull of `points`: keeps only the extreme points.
  static Polytope hull_of(std::vector<RationalVector> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  const RationalVector& vertex(std::size_t i) const { return vertices_[i]; }

  bool contains_vertex(const RationalVector& v) const;

  friend bool operator==(const Polytope& a, const Polytope& b) { return a.vertices_ == b.vertices_; }

 private:
  std::size_t dim_ = 0;
  std::vector<RationalVector> vertices_;
};

/// Vertices of the closure of {0 < t_1 < ... < t_n < 1}: the n+1 monotone 0/1
/// vectors (0,...,0), (0,...,0,1), ..., (1,...,1).
Polytope order_simplex(std::size_t n);

/// {r e_1, ..., r e_n}, the vertices of the simplex {x >= 0, sum x = r}.
Polytope standard_simplex(std::size_t n, const Rational& r);

/// {0, e_1, ..., e_n}, the closure of {dt > 0, sum dt < 1}.
Polytope corner_simplex(std::size_t n);

/// All 2^n vectors in {0,1}^n.
Polytope hypercube(std::size_t n);

/// The 2n signed unit vectors {+-e_1, ..., +-e_n}.
Polytope octahedron(std::size_t n);

/// True iff `p` is a convex combination of `points`. Exact phase-one simplex
/// with Bland's rule, so it always terminates and never rounds.
bool in_convex_hull(const RationalVector& p, std::span<const RationalVector> points);

/// The points of V that are not convex combinations of the other points of V.
/// Duplicates are merged first. Output is in lexicographic order.
std::vector<RationalVector> extreme_points(std::vector<RationalVector> points);

enum class CanonicalShape { CubeDistortion, OrderSimplex, CornerSimplex };

CanonicalShape parse_canonical_shape(std::string_view tag);
std::string_view to_string(CanonicalShape shape);

/// Exact n-volume of the canonical shape scaled by D: D^n for the cube-type
/// distortion set, D^n / n! for both simplices.
Rational reference_volume(CanonicalShape shape, std::size_t n, const Rational& scale);

}  // namespace poisrd
