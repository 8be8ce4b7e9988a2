#pragma once

#include <initializer_list>
#include <vector>

#include "poisrd/exact_linalg.hpp"
#include "poisrd/geometry.hpp"

namespace poisrd::testing {

inline RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

inline std::vector<RationalVector> points(std::initializer_list<RationalVector> xs) {
  std::vector<RationalVector> out(xs);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace poisrd::testing
