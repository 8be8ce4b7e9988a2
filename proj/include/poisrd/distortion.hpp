#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "poisrd/geometry.hpp"
#include "poisrd/poisson.hpp"
#include "poisrd/rational.hpp"

namespace poisrd {

/// Nonnegative distortion, possibly +infinity. Infinity is its own state and
/// never a sentinel float.
class Distortion {
 public:
  static Distortion finite(double v);
  static Distortion infinite() { return Distortion(); }

  bool is_finite() const { return value_.has_value(); }
  /// Throws std::logic_error when infinite.
  double value() const;

  /// Non-strict comparison: an infinite distortion is never within D.
  bool within(double bound) const { return value_ && *value_ <= bound; }

  friend bool operator==(const Distortion&, const Distortion&) = default;

 private:
  Distortion() = default;
  explicit Distortion(double v) : value_(v) {}
  std::optional<double> value_;
};

struct ClosedInterval {
  double lo;
  double hi;
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// A {0,1}-valued codeword on [0, T], given by its 1-set A as a finite union of
/// closed intervals. Input cells are merged into sorted disjoint cells.
class WindowCodeword {
 public:
  WindowCodeword(double duration, std::vector<ClosedInterval> cells);

  double duration() const { return duration_; }
  const std::vector<ClosedInterval>& cells() const { return cells_; }
  /// Lebesgue measure of A.
  double measure() const;
  bool covers(double t) const;

 private:
  double duration_;
  std::vector<ClosedInterval> cells_;
};

/// A point-process codeword x_1 <= x_2 <= ... in [0, T]. Ties and the origin are
/// admitted because codewords on the boundary of the open codeword space (such
/// as x = 0) appear as limits in distortion-set definitions.
class CausalCodeword {
 public:
  CausalCodeword(double duration, std::vector<double> timings);
  explicit CausalCodeword(const PointPattern& pattern);

  double duration() const { return duration_; }
  const std::vector<double>& timings() const { return timings_; }
  std::size_t count() const { return timings_.size(); }

 private:
  double duration_;
  std::vector<double> timings_;
};

// --- Generic queueing arithmetic, usable with double or Rational. ----------

/// N_xhat(s) >= N_t(s) for every s, evaluated at the merged event times where
/// the two counting functions jump.
template <class Scalar>
bool counting_dominates(std::span<const Scalar> t, std::span<const Scalar> xhat) {
  std::vector<Scalar> grid(t.begin(), t.end());
  grid.insert(grid.end(), xhat.begin(), xhat.end());
  std::sort(grid.begin(), grid.end());
  for (const Scalar& s : grid) {
    const auto n_t = std::upper_bound(t.begin(), t.end(), s) - t.begin();
    const auto n_x = std::upper_bound(xhat.begin(), xhat.end(), s) - xhat.begin();
    if (n_x < n_t) return false;
  }
  return true;
}

/// t_i >= xhat_i for every i (sequences of equal length).
template <class Scalar>
bool coordinate_dominates(std::span<const Scalar> t, std::span<const Scalar> xhat) {
  if (t.size() != xhat.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < xhat[i]) return false;
  }
  return true;
}

/// sum_i (t_i - max(t_{i-1}, xhat_i)) with t_0 = 0, or nullopt when the counts
/// differ or the counting condition fails. Not divided by T.
template <class Scalar>
std::optional<Scalar> queueing_sum(std::span<const Scalar> t, std::span<const Scalar> xhat) {
  if (t.size() != xhat.size()) return std::nullopt;
  if (!counting_dominates(t, xhat)) return std::nullopt;
  Scalar total = 0;
  Scalar prev = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Scalar& start = prev < xhat[i] ? xhat[i] : prev;
    total += t[i] - start;
    prev = t[i];
  }
  return total;
}

// --- The four measures. ------------------------------------------------------

/// Point-covering distortion: |A| if A covers every point, +inf otherwise.
Distortion d_pc(const PointPattern& t, const WindowCodeword& a);

/// Canonical queueing distortion (1/T) sum_i (t_i - max(t_{i-1}, xhat_i)).
Distortion d_q(const PointPattern& t, const CausalCodeword& xhat);

struct QueueingFiniteness {
  bool counting;    ///< N_xhat(s) >= N_t(s) for all s
  bool coordinate;  ///< t_i >= xhat_i for all i
};

/// Evaluates both finiteness criteria independently; requires equal counts
/// (std::invalid_argument otherwise).
QueueingFiniteness queueing_criteria(const PointPattern& t, const CausalCodeword& xhat);

/// The counting criterion; throws std::logic_error if it ever disagrees with
/// the coordinate criterion.
bool queueing_finite(const PointPattern& t, const CausalCodeword& xhat);

/// (rate / n) sum |x_i - xhat_i| for a Laplacian source.
Distortion d_norm_l1(const SignedIntervalVector& x, const RealVector& xhat);

/// As d_norm_l1, but +inf if any x_i < xhat_i.
Distortion d_onesided_l1(const IntervalVector& x, const RealVector& xhat);

// --- Distortion sets. --------------------------------------------------------

enum class MeasureKind { PointCovering, Queueing, NormalizedL1, OneSidedL1 };

MeasureKind parse_measure_kind(std::string_view tag);
std::string_view to_string(MeasureKind kind);

using Codeword = std::variant<WindowCodeword, CausalCodeword, RealVector>;

/// Whether `candidate` lies in the closed distortion set {t : d(t, codeword) <= D}.
/// Timing measures read `candidate` as normalized coordinates in R^n; point
/// covering takes the cube (any order), queueing takes the closed order
/// simplex (nondecreasing coordinates in [0, 1]). The l1 measures use `rate`.
bool distortion_set_contains(MeasureKind kind, const Codeword& codeword, double max_distortion,
                             std::span<const double> candidate, double rate = 1.0);

struct VolumeEstimate {
  double estimate;
  double std_error;
  std::uint64_t hits;
  std::uint64_t samples;
  double ambient_volume;
};

/// Hit-or-miss estimate of vol_n of the distortion set. The ambient region is
/// the unit cube for timing measures (codeword duration must be 1) and the box
/// of half-width n D / rate around the codeword for the l1 measures. Samples
/// are split across `workers` threads, each seeded with stream_seed(seed, w).
VolumeEstimate distortion_set_volume_mc(MeasureKind kind, const Codeword& codeword, double max_distortion,
                                        std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                        std::size_t workers = 1, double rate = 1.0);

// --- The n = 2 queueing case study. -----------------------------------------

enum class QueueingRegion {
  R1,        ///< xhat_1 <= t_1 < xhat_2 <= t_2
  R2,        ///< xhat_2 <= t_1 < t_2
  Infinite,  ///< inside the source set but with infinite distortion
  Outside,   ///< not in the closed source set {0 <= t_1 < t_2 <= 1}
};

std::string_view to_string(QueueingRegion region);

/// Two-point queueing distortion sets around 0 < xhat_1 < xhat_2 < 1, in exact
/// arithmetic. Doubles passed in are converted to their exact binary values.
class QueueingCaseStudy {
 public:
  QueueingCaseStudy(Rational xhat1, Rational xhat2, Rational max_distortion);

  QueueingRegion classify(const Rational& t1, const Rational& t2) const;

  /// (t_1 - xhat_1) + (t_2 - xhat_2) on R1, t_2 - xhat_1 on R2, nullopt elsewhere.
  std::optional<Rational> piecewise_distortion(const Rational& t1, const Rational& t2) const;

  /// Area of E(D) = {t in R1 u R2 : piecewise <= D}, by clipping each region
  /// to a convex polygon and summing fan triangles.
  Rational area() const;

  /// D <= xhat_2 - xhat_1: the set is xhat + cl(D delta) minus the diagonal point.
  bool small_distortion_regime() const { return max_distortion_ <= xhat2_ - xhat1_; }

  const Rational& xhat1() const { return xhat1_; }
  const Rational& xhat2() const { return xhat2_; }
  const Rational& max_distortion() const { return max_distortion_; }

 private:
  Rational xhat1_;
  Rational xhat2_;
  Rational max_distortion_;
};

}  // namespace poisrd
