#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "poisrd/exact_linalg.hpp"
#include "poisrd/geometry.hpp"
#include "poisrd/groups.hpp"

namespace poisrd {

inline constexpr std::size_t kDefaultGraphCap = 16;

/// Vertex permutation groups reuse FiniteGroup: each element is the canonical
/// (all signs +1) embedding of a permutation of vertex indices.
using VertexPermutationGroup = FiniteGroup;

/// Permutations carried by a vertex permutation group, in its element order.
std::vector<Permutation> vertex_permutations(const VertexPermutationGroup& g);

/// Translates the vertices so that their centroid is the origin.
Polytope center(const Polytope& p);

/// Squared Euclidean distance, exact.
Rational squared_distance(const RationalVector& a, const RationalVector& b);

/// True iff the permutation keeps every pairwise squared distance.
bool preserves_squared_distances(const Polytope& p, const Permutation& g);

/// All vertex permutations preserving pairwise distances, by backtracking on
/// the squared-distance matrix. Throws CapExceededError past `cap` elements.
VertexPermutationGroup vertex_symmetry_group(const Polytope& p, std::size_t cap = kDefaultGroupCap);

struct AffineExtension {
  RationalMatrix matrix;
  bool is_isometry;  ///< M^T M = I exactly
};

/// The unique linear map on the centered polytope with M x_i = x_{g(i)}.
/// Throws std::invalid_argument if the polytope is not full-dimensional or if
/// no linear map realizes g.
AffineExtension affine_extension(const Permutation& g, const Polytope& p);

/// Undirected simple graph on {0, ..., m-1}, with optional vertex labels.
class Graph {
 public:
  Graph(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> edges,
        std::vector<RationalVector> labels = {});

  std::size_t size() const { return m_; }
  /// Sorted pairs (i, j) with i < j.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<RationalVector>& labels() const { return labels_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * m_ + j]; }
  std::size_t degree(std::size_t i) const;

 private:
  std::size_t m_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<RationalVector> labels_;
  std::vector<bool> adjacency_;
};

enum class PolytopeFamily { Cube, Octahedron, Simplex };

PolytopeFamily parse_polytope_family(std::string_view tag);
std::string_view to_string(PolytopeFamily family);

/// hypercube(n), octahedron(n), or standard_simplex(n, 1).
Polytope family_polytope(PolytopeFamily family, std::size_t n);

/// Vertices joined at squared distance 1 (cube), 2 (octahedron), or always (simplex).
Graph polytope_graph(PolytopeFamily family, std::size_t n);

bool is_automorphism(const Graph& g, const Permutation& p);

/// All adjacency-preserving vertex permutations, by backtracking with degree
/// and adjacency pruning. Throws CapExceededError when m > `vertex_cap`.
VertexPermutationGroup graph_automorphisms(const Graph& g, std::size_t vertex_cap = kDefaultGraphCap,
                                           std::size_t group_cap = kDefaultGroupCap);

struct SymAutReport {
  std::size_t sym_order;
  std::size_t aut_order;
  bool isomorphic;  ///< the two groups are equal as sets of vertex permutations
};

SymAutReport verify_sym_equals_aut(PolytopeFamily family, std::size_t n, std::size_t vertex_cap = kDefaultGraphCap);

/// On the n-cube graph, BFS distance = Hamming distance = squared l2 distance
/// for every vertex pair. Requires 1 <= n <= 10.
bool hamming_l2_check(std::size_t n);

}  // namespace poisrd
