#include "poisrd/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace poisrd {

namespace {

void require_dimension(std::size_t n) {
  if (n == 0) throw std::invalid_argument("dimension must be at least 1");
}

void sort_unique(std::vector<RationalVector>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

std::size_t common_dimension(const std::vector<RationalVector>& pts) {
  if (pts.empty()) throw std::invalid_argument("point set must be nonempty");
  const std::size_t n = pts.front().size();
  if (n == 0) throw std::invalid_argument("points must have dimension at least 1");
  for (const auto& p : pts) {
    if (p.size() != n) throw std::invalid_argument("points have mixed dimensions");
  }
  return n;
}

}  // namespace

Polytope::Polytope(std::vector<RationalVector> vertices) : dim_(common_dimension(vertices)) {
  sort_unique(vertices);
  vertices_ = std::move(vertices);
}

Polytope Polytope::hull_of(std::vector<RationalVector> points) {
  return Polytope(extreme_points(std::move(points)));
}

bool Polytope::contains_vertex(const RationalVector& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Polytope order_simplex(std::size_t n) {
  require_dimension(n);
  std::vector<RationalVector> vs;
  for (std::size_t ones = 0; ones <= n; ++ones) {
    RationalVector v(n, Rational(0));
    for (std::size_t i = n - ones; i < n; ++i) v[i] = 1;
    vs.push_back(std::move(v));
  }
  return Polytope(std::move(vs));
}

Polytope standard_simplex(std::size_t n, const Rational& r) {
  require_dimension(n);
  if (r <= 0) throw std::invalid_argument("simplex radius must be positive");
  std::vector<RationalVector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector v(n, Rational(0));
    v[i] = r;
    vs.push_back(std::move(v));
  }
  return Polytope(std::move(vs));
}

Polytope corner_simplex(std::size_t n) {
  require_dimension(n);
  std::vector<RationalVector> vs{RationalVector(n, Rational(0))};
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector v(n, Rational(0));
    v[i] = 1;
    vs.push_back(std::move(v));
  }
  return Polytope(std::move(vs));
}

Polytope hypercube(std::size_t n) {
  require_dimension(n);
  if (n > 20) throw std::invalid_argument("hypercube dimension too large");
  std::vector<RationalVector> vs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1U ? 1 : 0;
    vs.push_back(std::move(v));
  }
  return Polytope(std::move(vs));
}

Polytope octahedron(std::size_t n) {
  require_dimension(n);
  std::vector<RationalVector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      RationalVector v(n, Rational(0));
      v[i] = s;
      vs.push_back(std::move(v));
    }
  }
  return Polytope(std::move(vs));
}

bool in_convex_hull(const RationalVector& p, std::span<const RationalVector> points) {
  if (points.empty()) return false;
  const std::size_t n = p.size();
  const std::size_t m = points.size();
  for (const auto& q : points) {
    if (q.size() != n) throw std::invalid_argument("in_convex_hull: mixed dimensions");
  }

  // Rows: sum_j lambda_j q_j[r] = p[r] for r < n, and sum_j lambda_j = 1.
  // Columns: m convex weights, then one artificial per row, then the rhs.
  const std::size_t rows = n + 1;
  const std::size_t cols = m + rows + 1;
  const std::size_t rhs = cols - 1;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols, Rational(0)));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < m; ++j) t[r][j] = r < n ? points[j][r] : Rational(1);
    t[r][rhs] = r < n ? p[r] : Rational(1);
    if (t[r][rhs] < 0) {
      for (std::size_t j = 0; j < m; ++j) t[r][j] = -t[r][j];
      t[r][rhs] = -t[r][rhs];
    }
    t[r][m + r] = 1;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = m + r;

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> cost(cols, Rational(0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < m; ++j) cost[j] -= t[r][j];
    cost[rhs] -= t[r][rhs];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    Rational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][rhs] / t[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction; cannot happen for phase one

    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational f = t[r][enter];
      for (std::size_t c = 0; c < cols; ++c) {
        if (t[leave][c] != 0) t[r][c] -= f * t[leave][c];
      }
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t c = 0; c < cols; ++c) {
        if (t[leave][c] != 0) cost[c] -= f * t[leave][c];
      }
    }
    basis[leave] = enter;
  }
  return cost[rhs] == 0;
}

std::vector<RationalVector> extreme_points(std::vector<RationalVector> points) {
  common_dimension(points);
  sort_unique(points);
  std::vector<RationalVector> extremes;
  std::vector<RationalVector> others;
  others.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i) others.push_back(points[j]);
    }
    if (!in_convex_hull(points[i], others)) extremes.push_back(points[i]);
  }
  return extremes;
}

CanonicalShape parse_canonical_shape(std::string_view tag) {
  if (tag == "cube-distortion" || tag == "cube") return CanonicalShape::CubeDistortion;
  if (tag == "order-simplex") return CanonicalShape::OrderSimplex;
  if (tag == "corner-simplex") return CanonicalShape::CornerSimplex;
  throw std::invalid_argument("unknown shape tag '" + std::string(tag) + "'");
}

std::string_view to_string(CanonicalShape shape) {
  switch (shape) {
    case CanonicalShape::CubeDistortion: return "cube-distortion";
    case CanonicalShape::OrderSimplex: return "order-simplex";
    case CanonicalShape::CornerSimplex: return "corner-simplex";
  }
  return "unknown";
}

Rational reference_volume(CanonicalShape shape, std::size_t n, const Rational& scale) {
  require_dimension(n);
  if (scale <= 0 || scale > 1) throw std::invalid_argument("scale D must lie in (0, 1]");
  Rational v = 1;
  for (std::size_t i = 0; i < n; ++i) v *= scale;
  if (shape == CanonicalShape::CubeDistortion) return v;
  BigInt fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  return v / Rational(fact);
}

}  // namespace poisrd
