#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "poisrd/rational.hpp"

namespace poisrd {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all the same length).
  static RationalMatrix from_columns(std::span<const RationalVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalVector apply(const RationalVector& x) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by fraction-exact Gaussian elimination.
std::size_t rank(const RationalMatrix& m);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Indices of a maximal linearly independent subset of `vectors`, chosen
/// greedily in index order.
std::vector<std::size_t> independent_subset(std::span<const RationalVector> vectors);

}  // namespace poisrd
