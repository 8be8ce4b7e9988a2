#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "helpers.hpp"
#include "poisrd/groups.hpp"
#include "poisrd/polytope_symmetry.hpp"

using namespace poisrd;
using poisrd::testing::points;
using poisrd::testing::rv;

namespace {

// Brute-force oracle: every vertex permutation preserving all squared distances.
std::size_t brute_force_symmetries(const Polytope& p) {
  std::vector<std::size_t> images(p.size());
  std::iota(images.begin(), images.end(), 0);
  std::size_t count = 0;
  do {
    count += preserves_squared_distances(p, Permutation(images)) ? 1 : 0;
  } while (std::next_permutation(images.begin(), images.end()));
  return count;
}

Permutation cycle_shift(std::size_t m) {
  std::vector<std::size_t> images(m);
  for (std::size_t i = 0; i < m; ++i) images[i] = (i + 1) % m;
  return Permutation(images);
}

}  // namespace

TEST_SUITE("polytope symmetry") {
  TEST_CASE("centering") {
    const Rational h(1, 2);
    CHECK(center(hypercube(2)).vertices() == points({rv({-h, -h}), rv({-h, h}), rv({h, -h}), rv({h, h})}));
    CHECK(center(octahedron(3)) == octahedron(3));
    const auto simplex = center(standard_simplex(3, 1));
    for (const auto& v : simplex.vertices()) CHECK(v[0] + v[1] + v[2] == 0);
  }

  TEST_CASE("symmetry group orders") {
    for (std::size_t n = 1; n <= 5; ++n) {
      std::size_t factorial = 1;
      for (std::size_t i = 2; i <= n; ++i) factorial *= i;
      CHECK(vertex_symmetry_group(standard_simplex(n, 1)).order() == factorial);
    }
    CHECK(vertex_symmetry_group(hypercube(3)).order() == 48);
    CHECK(vertex_symmetry_group(octahedron(4)).order() == 384);
  }

  TEST_CASE("backtracking matches brute force for small shapes") {
    for (const auto& p : {hypercube(2), hypercube(3), octahedron(3), order_simplex(2), order_simplex(3),
                          corner_simplex(2), corner_simplex(3), standard_simplex(4, 1)}) {
      CHECK(vertex_symmetry_group(p).order() == brute_force_symmetries(p));
    }
  }

  TEST_CASE("affine extension") {
    CHECK(affine_extension(Permutation::identity(4), hypercube(2)).matrix == RationalMatrix::identity(2));

    // Swap the two coordinates of the centered square.
    const auto square = hypercube(2);
    std::vector<std::size_t> images(square.size());
    for (std::size_t i = 0; i < square.size(); ++i) {
      const auto& v = square.vertex(i);
      images[i] = static_cast<std::size_t>(
          std::find(square.vertices().begin(), square.vertices().end(), rv({v[1], v[0]})) - square.vertices().begin());
    }
    const auto e = affine_extension(Permutation(images), square);
    RationalMatrix swap(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    CHECK(e.matrix == swap);
    CHECK(e.is_isometry);

    for (const auto& g : vertex_permutations(vertex_symmetry_group(octahedron(3)))) {
      const auto m = affine_extension(g, octahedron(3)).matrix;
      CHECK(m.transpose() * m == RationalMatrix::identity(3));
    }
  }

  TEST_CASE("affine extension requires a full-dimensional set and a linear map") {
    CHECK_THROWS_AS(affine_extension(Permutation::identity(3), standard_simplex(3, 1)), std::invalid_argument);
    // Swapping (0,0) and (0,1) alone is not a symmetry of the square.
    CHECK_THROWS_AS(affine_extension(Permutation({1, 0, 2, 3}), hypercube(2)), std::invalid_argument);
  }

  TEST_CASE("graphs") {
    CHECK(polytope_graph(PolytopeFamily::Cube, 3).edges().size() == 12);
    const auto sq = polytope_graph(PolytopeFamily::Octahedron, 2);
    CHECK(sq.edges().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(sq.degree(i) == 2);
    CHECK(polytope_graph(PolytopeFamily::Simplex, 3).edges().size() == 3);
  }

  TEST_CASE("graph automorphisms") {
    std::vector<std::pair<std::size_t, std::size_t>> k4;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) k4.emplace_back(i, j);
    CHECK(graph_automorphisms(Graph(4, k4)).order() == 24);
    CHECK(graph_automorphisms(polytope_graph(PolytopeFamily::Cube, 3)).order() == 48);
    CHECK(graph_automorphisms(polytope_graph(PolytopeFamily::Octahedron, 3)).order() == 48);

    const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(graph_automorphisms(path).order() == 2);
    CHECK(is_automorphism(path, Permutation({3, 2, 1, 0})));
    CHECK_FALSE(is_automorphism(path, cycle_shift(4)));
  }

  TEST_CASE("vertex cap") {
    CHECK_THROWS_AS(graph_automorphisms(polytope_graph(PolytopeFamily::Cube, 5)), CapExceededError);
  }

  TEST_CASE("symmetries equal automorphisms") {
    for (auto [family, n, order] : {std::tuple{PolytopeFamily::Octahedron, 3, 48}, {PolytopeFamily::Cube, 2, 8},
                                    {PolytopeFamily::Cube, 3, 48}}) {
      const auto r = verify_sym_equals_aut(family, n);
      CHECK(r.sym_order == std::size_t(order));
      CHECK(r.aut_order == std::size_t(order));
      CHECK(r.isomorphic);
    }
  }

  TEST_CASE("distance-preserving vertex maps extend to orthogonal maps (exhaustive, n <= 3)") {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& p : {hypercube(n), octahedron(n), corner_simplex(n), order_simplex(n)}) {
        std::vector<std::size_t> images(p.size());
        std::iota(images.begin(), images.end(), 0);
        do {
          const Permutation g(images);
          if (!preserves_squared_distances(p, g)) continue;
          CHECK(affine_extension(g, p).is_isometry);
        } while (std::next_permutation(images.begin(), images.end()));
      }
    }
  }

  TEST_CASE("Hamming distance check") {
    for (std::size_t n : {1u, 3u, 6u}) CHECK(hamming_l2_check(n));
    CHECK_THROWS_AS(hamming_l2_check(0), std::invalid_argument);
  }

  TEST_CASE("family tags") {
    CHECK(parse_polytope_family("cube") == PolytopeFamily::Cube);
    CHECK(parse_polytope_family("octahedron") == PolytopeFamily::Octahedron);
    CHECK_THROWS_AS(parse_polytope_family("dodecahedron"), std::invalid_argument);
  }
}
