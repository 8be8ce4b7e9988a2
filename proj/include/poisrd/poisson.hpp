#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace poisrd {

/// Event timings of one realization on [0, T]: 0 < t_1 < ... < t_n < T.
class PointPattern {
 public:
  /// Throws std::invalid_argument unless T > 0 and the timings are strictly
  /// increasing inside (0, T).
  PointPattern(double duration, std::vector<double> timings);

  double duration() const { return duration_; }
  const std::vector<double>& timings() const { return timings_; }
  std::size_t count() const { return timings_.size(); }

  /// Counting function N(s) = #{i : t_i <= s}.
  std::size_t count_up_to(double s) const;

  /// Timings divided by T, so the pattern lives on (0, 1).
  PointPattern normalized() const;

  friend bool operator==(const PointPattern&, const PointPattern&) = default;

 private:
  double duration_;
  std::vector<double> timings_;
};

/// Inter-event intervals of an exponential source with the given rate.
class IntervalVector {
 public:
  IntervalVector(std::vector<double> intervals, double rate);

  const std::vector<double>& intervals() const { return intervals_; }
  double rate() const { return rate_; }
  std::size_t size() const { return intervals_.size(); }

  friend bool operator==(const IntervalVector&, const IntervalVector&) = default;

 private:
  std::vector<double> intervals_;
  double rate_;
};

/// Intervals carrying an independent fair sign: a Laplacian source.
class SignedIntervalVector {
 public:
  SignedIntervalVector(std::vector<double> values, double rate);

  const std::vector<double>& values() const { return values_; }
  double rate() const { return rate_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  double rate_;
};

/// Homogeneous Poisson process on [0, T] built from cumulative exponential
/// gaps; the count is Poisson(rate * T).
PointPattern sample_homogeneous(double rate, double duration, std::uint64_t seed);

/// Exactly `count` points on (0, T): the conditional law of a homogeneous
/// process given its count (sorted i.i.d. uniforms).
PointPattern sample_fixed_count(std::size_t count, double duration, std::uint64_t seed);

/// `count` i.i.d. Exp(rate) intervals.
IntervalVector sample_exponential(std::size_t count, double rate, std::uint64_t seed);

/// `count` i.i.d. Laplacian(rate) values: exponential magnitude times a fair sign.
SignedIntervalVector sample_laplacian(std::size_t count, double rate, std::uint64_t seed);

/// tau_i = t_i - t_{i-1} with t_0 = 0. The rate of the result is n / T
/// (the empirical rate); callers that know the true rate can rebuild.
IntervalVector timings_to_intervals(const PointPattern& pattern);

/// Inverse of timings_to_intervals. Throws if the intervals sum to T or more.
PointPattern intervals_to_timings(const IntervalVector& intervals, double duration);

struct ConcentrationReport {
  double deviation;  ///< |(rate / n) * sum |tau_i| - 1|
  bool pass;
};

/// Distance of a sample from the l1 shell of radius n / rate, relative to it.
ConcentrationReport concentration_check(std::span<const double> values, double rate, double tolerance);
ConcentrationReport concentration_check(const IntervalVector& iv, double tolerance);
ConcentrationReport concentration_check(const SignedIntervalVector& iv, double tolerance);

}  // namespace poisrd
