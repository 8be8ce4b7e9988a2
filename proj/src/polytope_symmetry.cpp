#include "poisrd/polytope_symmetry.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace poisrd {

std::vector<Permutation> vertex_permutations(const VertexPermutationGroup& g) {
  std::vector<Permutation> out;
  out.reserve(g.order());
  for (const auto& x : g.elements()) out.push_back(x.permutation());
  return out;
}

Polytope center(const Polytope& p) {
  RationalVector centroid(p.dim(), Rational(0));
  for (const auto& v : p.vertices()) {
    for (std::size_t i = 0; i < p.dim(); ++i) centroid[i] += v[i];
  }
  const Rational m(static_cast<unsigned long long>(p.size()));
  for (auto& c : centroid) c /= m;
  std::vector<RationalVector> shifted = p.vertices();
  for (auto& v : shifted) {
    for (std::size_t i = 0; i < p.dim(); ++i) v[i] -= centroid[i];
  }
  return Polytope(std::move(shifted));
}

Rational squared_distance(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("points of different dimensions");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

/// Squared distances replaced by small integer class ids.
std::vector<std::size_t> distance_classes(const Polytope& p) {
  const std::size_t m = p.size();
  std::vector<Rational> values;
  std::vector<Rational> raw(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      raw[i * m + j] = squared_distance(p.vertex(i), p.vertex(j));
      values.push_back(raw[i * m + j]);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::size_t> ids(m * m);
  for (std::size_t k = 0; k < m * m; ++k) {
    ids[k] = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), raw[k]) - values.begin());
  }
  return ids;
}

/// Generic backtracking over vertex permutations. `compatible(k, j, i, gi)`
/// says whether mapping k -> j agrees with the earlier assignment i -> gi;
/// `candidate(k, j)` is a cheap invariant filter.
template <class Candidate, class Compatible>
std::vector<SignedPermutation> enumerate_permutations(std::size_t m, const std::vector<std::size_t>& order,
                                                      Candidate candidate, Compatible compatible,
                                                      std::size_t cap) {
  std::vector<SignedPermutation> found;
  std::vector<std::size_t> image(m, 0);
  std::vector<bool> used(m, false);
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == m) {
      found.emplace_back(Permutation(image));
      if (found.size() > cap) {
        throw CapExceededError("symmetry enumeration exceeds the cap of " + std::to_string(cap) + " elements");
      }
      return;
    }
    const std::size_t k = order[depth];
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j] || !candidate(k, j)) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) ok = compatible(k, j, order[d], image[order[d]]);
      if (!ok) continue;
      image[k] = j;
      used[j] = true;
      extend(depth + 1);
      used[j] = false;
    }
  };
  extend(0);
  return found;
}

}  // namespace

bool preserves_squared_distances(const Polytope& p, const Permutation& g) {
  if (g.size() != p.size()) throw std::invalid_argument("permutation size differs from the vertex count");
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (squared_distance(p.vertex(i), p.vertex(j)) != squared_distance(p.vertex(g[i]), p.vertex(g[j]))) {
        return false;
      }
    }
  }
  return true;
}

VertexPermutationGroup vertex_symmetry_group(const Polytope& p, std::size_t cap) {
  // Distances are translation invariant, so centering does not change the result.
  const std::size_t m = p.size();
  const std::vector<std::size_t> ids = distance_classes(p);
  std::vector<std::vector<std::size_t>> profile(m);
  for (std::size_t i = 0; i < m; ++i) {
    profile[i].assign(ids.begin() + static_cast<std::ptrdiff_t>(i * m),
                      ids.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
    std::sort(profile[i].begin(), profile[i].end());
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  auto elements = enumerate_permutations(
      m, order, [&](std::size_t k, std::size_t j) { return profile[k] == profile[j]; },
      [&](std::size_t k, std::size_t j, std::size_t i, std::size_t gi) { return ids[k * m + i] == ids[j * m + gi]; },
      cap);
  return FiniteGroup::assume_closed(std::move(elements));
}

AffineExtension affine_extension(const Permutation& g, const Polytope& p) {
  if (g.size() != p.size()) throw std::invalid_argument("permutation size differs from the vertex count");
  const Polytope c = center(p);
  const std::vector<std::size_t> basis = independent_subset(c.vertices());
  if (basis.size() != c.dim()) {
    throw std::invalid_argument("polytope is not full-dimensional: its vertices span an affine subspace of dimension " +
                                std::to_string(basis.size()) + " in R^" + std::to_string(c.dim()));
  }
  std::vector<RationalVector> from;
  std::vector<RationalVector> to;
  for (std::size_t i : basis) {
    from.push_back(c.vertex(i));
    to.push_back(c.vertex(g[i]));
  }
  const RationalMatrix b = RationalMatrix::from_columns(from);
  const RationalMatrix m = RationalMatrix::from_columns(to) * *inverse(b);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (m.apply(c.vertex(i)) != c.vertex(g[i])) {
      throw std::invalid_argument("vertex permutation is not realized by a linear map of the centered polytope");
    }
  }
  return {m, m.transpose() * m == RationalMatrix::identity(c.dim())};
}

Graph::Graph(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> edges, std::vector<RationalVector> labels)
    : m_(m), labels_(std::move(labels)), adjacency_(m * m, false) {
  if (!labels_.empty() && labels_.size() != m_) throw std::invalid_argument("one label per vertex expected");
  for (auto [i, j] : edges) {
    if (i >= m_ || j >= m_) throw std::invalid_argument("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
    if (i > j) std::swap(i, j);
    edges_.emplace_back(i, j);
    adjacency_[i * m_ + j] = adjacency_[j * m_ + i] = true;
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::size_t Graph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < m_; ++j) d += adjacent(i, j) ? 1 : 0;
  return d;
}

PolytopeFamily parse_polytope_family(std::string_view tag) {
  if (tag == "cube" || tag == "hypercube") return PolytopeFamily::Cube;
  if (tag == "octahedron" || tag == "cross-polytope") return PolytopeFamily::Octahedron;
  if (tag == "simplex") return PolytopeFamily::Simplex;
  throw std::invalid_argument("unknown polytope family '" + std::string(tag) + "'");
}

std::string_view to_string(PolytopeFamily family) {
  switch (family) {
    case PolytopeFamily::Cube: return "cube";
    case PolytopeFamily::Octahedron: return "octahedron";
    case PolytopeFamily::Simplex: return "simplex";
  }
  return "unknown";
}

Polytope family_polytope(PolytopeFamily family, std::size_t n) {
  switch (family) {
    case PolytopeFamily::Cube: return hypercube(n);
    case PolytopeFamily::Octahedron: return octahedron(n);
    case PolytopeFamily::Simplex: return standard_simplex(n, Rational(1));
  }
  throw std::invalid_argument("unknown polytope family");
}

Graph polytope_graph(PolytopeFamily family, std::size_t n) {
  const Polytope p = family_polytope(family, n);
  const Rational edge = family == PolytopeFamily::Cube ? 1 : 2;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (family == PolytopeFamily::Simplex || squared_distance(p.vertex(i), p.vertex(j)) == edge) {
        edges.emplace_back(i, j);
      }
    }
  }
  return Graph(p.size(), std::move(edges), p.vertices());
}

bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.size() != g.size()) throw std::invalid_argument("permutation size differs from the vertex count");
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g.adjacent(i, j) != g.adjacent(p[i], p[j])) return false;
    }
  }
  return true;
}

VertexPermutationGroup graph_automorphisms(const Graph& g, std::size_t vertex_cap, std::size_t group_cap) {
  const std::size_t m = g.size();
  if (m == 0) throw std::invalid_argument("graph has no vertices");
  if (m > vertex_cap) {
    throw CapExceededError("automorphism search is capped at " + std::to_string(vertex_cap) + " vertices");
  }
  std::vector<std::size_t> degree(m);
  for (std::size_t i = 0; i < m; ++i) degree[i] = g.degree(i);
  // Breadth-first order, so each new vertex is usually adjacent to mapped ones.
  std::vector<std::size_t> order;
  std::vector<bool> seen(m, false);
  for (std::size_t root = 0; root < m; ++root) {
    if (seen[root]) continue;
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (std::size_t w = 0; w < m; ++w) {
        if (!seen[w] && g.adjacent(v, w)) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  auto elements = enumerate_permutations(
      m, order, [&](std::size_t k, std::size_t j) { return degree[k] == degree[j]; },
      [&](std::size_t k, std::size_t j, std::size_t i, std::size_t gi) { return g.adjacent(k, i) == g.adjacent(j, gi); },
      group_cap);
  return FiniteGroup::assume_closed(std::move(elements));
}

SymAutReport verify_sym_equals_aut(PolytopeFamily family, std::size_t n, std::size_t vertex_cap) {
  const Polytope p = family_polytope(family, n);
  const VertexPermutationGroup sym = vertex_symmetry_group(p);
  const VertexPermutationGroup aut = graph_automorphisms(polytope_graph(family, n), vertex_cap);
  return {sym.order(), aut.order(), sym == aut};
}

bool hamming_l2_check(std::size_t n) {
  if (n == 0 || n > 10) throw std::invalid_argument("hamming_l2_check supports 1 <= n <= 10");
  const Graph g = polytope_graph(PolytopeFamily::Cube, n);
  const std::size_t m = g.size();
  const auto& v = g.labels();
  std::vector<std::vector<std::size_t>> neighbours(m);
  for (auto [i, j] : g.edges()) {
    neighbours[i].push_back(j);
    neighbours[j].push_back(i);
  }
  constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> dist(m, kUnreached);
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : neighbours[x]) {
        if (dist[y] == kUnreached) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t t = s + 1; t < m; ++t) {
      std::size_t hamming = 0;
      for (std::size_t i = 0; i < n; ++i) hamming += v[s][i] != v[t][i] ? 1 : 0;
      if (dist[t] != hamming) return false;
      if (squared_distance(v[s], v[t]) != Rational(static_cast<unsigned long long>(hamming))) return false;
    }
  }
  return true;
}

}  // namespace poisrd
