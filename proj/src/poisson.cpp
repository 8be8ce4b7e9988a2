#include "poisrd/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "poisrd/rng.hpp"

namespace poisrd {

PointPattern::PointPattern(double duration, std::vector<double> timings)
    : duration_(duration), timings_(std::move(timings)) {
  if (!(duration_ > 0) || !std::isfinite(duration_)) {
    throw std::invalid_argument("pattern duration must be positive and finite");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < timings_.size(); ++i) {
    const double t = timings_[i];
    if (!(t > prev) || !(t < duration_)) {
      throw std::invalid_argument("timings must be strictly increasing inside (0, T)");
    }
    prev = t;
  }
}

std::size_t PointPattern::count_up_to(double s) const {
  return static_cast<std::size_t>(std::upper_bound(timings_.begin(), timings_.end(), s) - timings_.begin());
}

PointPattern PointPattern::normalized() const {
  std::vector<double> scaled(timings_);
  for (auto& t : scaled) t /= duration_;
  return PointPattern(1.0, std::move(scaled));
}

IntervalVector::IntervalVector(std::vector<double> intervals, double rate)
    : intervals_(std::move(intervals)), rate_(rate) {
  if (!(rate_ > 0) || !std::isfinite(rate_)) throw std::invalid_argument("rate must be positive");
  for (double x : intervals_) {
    if (!(x > 0) || !std::isfinite(x)) throw std::invalid_argument("intervals must be positive and finite");
  }
}

SignedIntervalVector::SignedIntervalVector(std::vector<double> values, double rate)
    : values_(std::move(values)), rate_(rate) {
  if (!(rate_ > 0) || !std::isfinite(rate_)) throw std::invalid_argument("rate must be positive");
  for (double x : values_) {
    if (x == 0 || !std::isfinite(x)) throw std::invalid_argument("signed intervals must be nonzero and finite");
  }
}

PointPattern sample_homogeneous(double rate, double duration, std::uint64_t seed) {
  if (!(rate >= 0) || !std::isfinite(rate)) throw std::invalid_argument("rate must be nonnegative");
  if (!(duration > 0) || !std::isfinite(duration)) throw std::invalid_argument("duration must be positive");
  std::vector<double> ts;
  if (rate == 0) return PointPattern(duration, std::move(ts));
  Rng rng(seed);
  double t = rng.exponential(rate);
  while (t < duration) {
    ts.push_back(t);
    const double next = t + rng.exponential(rate);
    // A gap below half an ulp would produce a tie; the continuous model has none.
    t = next > t ? next : std::nextafter(t, duration);
  }
  return PointPattern(duration, std::move(ts));
}

PointPattern sample_fixed_count(std::size_t count, double duration, std::uint64_t seed) {
  if (!(duration > 0) || !std::isfinite(duration)) throw std::invalid_argument("duration must be positive");
  Rng rng(seed);
  std::vector<double> ts(count);
  for (;;) {
    for (auto& t : ts) t = rng.uniform_open() * duration;
    std::sort(ts.begin(), ts.end());
    const bool strict = std::adjacent_find(ts.begin(), ts.end()) == ts.end();
    const bool inside = ts.empty() || (ts.front() > 0 && ts.back() < duration);
    if (strict && inside) break;
  }
  return PointPattern(duration, std::move(ts));
}

IntervalVector sample_exponential(std::size_t count, double rate, std::uint64_t seed) {
  if (!(rate > 0)) throw std::invalid_argument("rate must be positive");
  Rng rng(seed);
  std::vector<double> xs(count);
  for (auto& x : xs) x = rng.exponential(rate);
  return IntervalVector(std::move(xs), rate);
}

SignedIntervalVector sample_laplacian(std::size_t count, double rate, std::uint64_t seed) {
  if (!(rate > 0)) throw std::invalid_argument("rate must be positive");
  Rng rng(seed);
  std::vector<double> xs(count);
  for (auto& x : xs) {
    const double magnitude = rng.exponential(rate);
    x = rng.fair_coin() ? magnitude : -magnitude;
  }
  return SignedIntervalVector(std::move(xs), rate);
}

IntervalVector timings_to_intervals(const PointPattern& pattern) {
  std::vector<double> taus;
  taus.reserve(pattern.count());
  double prev = 0.0;
  for (double t : pattern.timings()) {
    taus.push_back(t - prev);
    prev = t;
  }
  const double rate = pattern.count() == 0 ? 1.0 / pattern.duration()
                                           : static_cast<double>(pattern.count()) / pattern.duration();
  return IntervalVector(std::move(taus), rate);
}

PointPattern intervals_to_timings(const IntervalVector& intervals, double duration) {
  std::vector<double> ts;
  ts.reserve(intervals.size());
  double t = 0.0;
  for (double tau : intervals.intervals()) {
    t += tau;
    ts.push_back(t);
  }
  if (!ts.empty() && !(ts.back() < duration)) {
    throw std::invalid_argument("intervals sum to at least the duration");
  }
  return PointPattern(duration, std::move(ts));
}

ConcentrationReport concentration_check(std::span<const double> values, double rate, double tolerance) {
  if (values.empty()) throw std::invalid_argument("concentration check needs at least one value");
  double sum = 0.0;
  for (double v : values) sum += std::abs(v);
  const double deviation = std::abs(rate / static_cast<double>(values.size()) * sum - 1.0);
  return {deviation, deviation <= tolerance};
}

ConcentrationReport concentration_check(const IntervalVector& iv, double tolerance) {
  return concentration_check(iv.intervals(), iv.rate(), tolerance);
}

ConcentrationReport concentration_check(const SignedIntervalVector& iv, double tolerance) {
  return concentration_check(iv.values(), iv.rate(), tolerance);
}

}  // namespace poisrd
