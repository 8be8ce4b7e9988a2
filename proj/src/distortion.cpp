#include "poisrd/distortion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "poisrd/rng.hpp"

namespace poisrd {

Distortion Distortion::finite(double v) {
  if (!(v >= 0) || !std::isfinite(v)) throw std::invalid_argument("finite distortion must be a nonnegative number");
  return Distortion(v);
}

double Distortion::value() const {
  if (!value_) throw std::logic_error("distortion is infinite");
  return *value_;
}

WindowCodeword::WindowCodeword(double duration, std::vector<ClosedInterval> cells) : duration_(duration) {
  if (!(duration_ > 0) || !std::isfinite(duration_)) throw std::invalid_argument("codeword duration must be positive");
  for (const auto& c : cells) {
    if (!(c.lo <= c.hi) || c.lo < 0 || c.hi > duration_) {
      throw std::invalid_argument("window cells must be intervals inside [0, T]");
    }
  }
  std::sort(cells.begin(), cells.end(), [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  for (const auto& c : cells) {
    if (!cells_.empty() && c.lo <= cells_.back().hi) {
      cells_.back().hi = std::max(cells_.back().hi, c.hi);
    } else {
      cells_.push_back(c);
    }
  }
}

double WindowCodeword::measure() const {
  double m = 0.0;
  for (const auto& c : cells_) m += c.hi - c.lo;
  return m;
}

bool WindowCodeword::covers(double t) const {
  auto it = std::upper_bound(cells_.begin(), cells_.end(), t,
                             [](double v, const ClosedInterval& c) { return v < c.lo; });
  if (it == cells_.begin()) return false;
  --it;
  return t <= it->hi;
}

CausalCodeword::CausalCodeword(double duration, std::vector<double> timings)
    : duration_(duration), timings_(std::move(timings)) {
  if (!(duration_ > 0) || !std::isfinite(duration_)) throw std::invalid_argument("codeword duration must be positive");
  double prev = 0.0;
  for (double x : timings_) {
    if (!(x >= prev) || x > duration_) {
      throw std::invalid_argument("causal codeword timings must be nondecreasing inside [0, T]");
    }
    prev = x;
  }
}

CausalCodeword::CausalCodeword(const PointPattern& pattern)
    : CausalCodeword(pattern.duration(), pattern.timings()) {}

Distortion d_pc(const PointPattern& t, const WindowCodeword& a) {
  if (t.duration() != a.duration()) throw std::invalid_argument("pattern and codeword durations differ");
  for (double ti : t.timings()) {
    if (!a.covers(ti)) return Distortion::infinite();
  }
  return Distortion::finite(a.measure());
}

Distortion d_q(const PointPattern& t, const CausalCodeword& xhat) {
  if (t.duration() != xhat.duration()) throw std::invalid_argument("pattern and codeword durations differ");
  const auto sum = queueing_sum<double>(t.timings(), xhat.timings());
  if (!sum) return Distortion::infinite();
  return Distortion::finite(*sum / t.duration());
}

QueueingFiniteness queueing_criteria(const PointPattern& t, const CausalCodeword& xhat) {
  if (t.duration() != xhat.duration()) throw std::invalid_argument("pattern and codeword durations differ");
  if (t.count() != xhat.count()) throw std::invalid_argument("finiteness equivalence presumes equal counts");
  return {counting_dominates<double>(t.timings(), xhat.timings()),
          coordinate_dominates<double>(t.timings(), xhat.timings())};
}

bool queueing_finite(const PointPattern& t, const CausalCodeword& xhat) {
  const auto c = queueing_criteria(t, xhat);
  if (c.counting != c.coordinate) throw std::logic_error("counting and coordinate finiteness criteria disagree");
  return c.counting;
}

namespace {

double scaled_l1(std::span<const double> x, std::span<const double> xhat, double rate) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - xhat[i]);
  return rate / static_cast<double>(x.size()) * sum;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("source and reconstruction lengths differ");
  if (a == 0) throw std::invalid_argument("l1 distortion needs n >= 1");
}

}  // namespace

Distortion d_norm_l1(const SignedIntervalVector& x, const RealVector& xhat) {
  require_same_length(x.size(), xhat.size());
  return Distortion::finite(scaled_l1(x.values(), xhat, x.rate()));
}

Distortion d_onesided_l1(const IntervalVector& x, const RealVector& xhat) {
  require_same_length(x.size(), xhat.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.intervals()[i] < xhat[i]) return Distortion::infinite();
  }
  return Distortion::finite(scaled_l1(x.intervals(), xhat, x.rate()));
}

MeasureKind parse_measure_kind(std::string_view tag) {
  if (tag == "point-covering" || tag == "pc") return MeasureKind::PointCovering;
  if (tag == "queueing" || tag == "q") return MeasureKind::Queueing;
  if (tag == "laplacian-l1" || tag == "norm-l1" || tag == "l1") return MeasureKind::NormalizedL1;
  if (tag == "onesided-l1" || tag == "one-sided-l1") return MeasureKind::OneSidedL1;
  throw std::invalid_argument("unknown measure kind '" + std::string(tag) + "'");
}

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::PointCovering: return "point-covering";
    case MeasureKind::Queueing: return "queueing";
    case MeasureKind::NormalizedL1: return "laplacian-l1";
    case MeasureKind::OneSidedL1: return "onesided-l1";
  }
  return "unknown";
}

namespace {

template <class T>
const T& expect_codeword(const Codeword& c, MeasureKind kind) {
  if (const T* p = std::get_if<T>(&c)) return *p;
  throw std::invalid_argument("codeword type does not match measure '" + std::string(to_string(kind)) + "'");
}

bool contains_point_covering(const WindowCodeword& a, double d, std::span<const double> t) {
  if (a.measure() / a.duration() > d) return false;
  for (double ti : t) {
    if (ti < 0 || ti > a.duration() || !a.covers(ti)) return false;
  }
  return true;
}

bool contains_queueing(const CausalCodeword& x, double d, std::span<const double> t) {
  double prev = 0.0;
  for (double ti : t) {
    if (ti < prev || ti > x.duration()) return false;
    prev = ti;
  }
  const auto sum = queueing_sum<double>(t, x.timings());
  return sum && *sum / x.duration() <= d;
}

bool contains_l1(const RealVector& xhat, double d, std::span<const double> x, double rate, bool one_sided) {
  if (x.size() != xhat.size() || x.empty()) throw std::invalid_argument("candidate and codeword lengths differ");
  if (one_sided) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < xhat[i]) return false;
    }
  }
  return scaled_l1(x, xhat, rate) <= d;
}

}  // namespace

bool distortion_set_contains(MeasureKind kind, const Codeword& codeword, double max_distortion,
                             std::span<const double> candidate, double rate) {
  switch (kind) {
    case MeasureKind::PointCovering:
      return contains_point_covering(expect_codeword<WindowCodeword>(codeword, kind), max_distortion, candidate);
    case MeasureKind::Queueing:
      return contains_queueing(expect_codeword<CausalCodeword>(codeword, kind), max_distortion, candidate);
    case MeasureKind::NormalizedL1:
      return contains_l1(expect_codeword<RealVector>(codeword, kind), max_distortion, candidate, rate, false);
    case MeasureKind::OneSidedL1:
      return contains_l1(expect_codeword<RealVector>(codeword, kind), max_distortion, candidate, rate, true);
  }
  throw std::invalid_argument("unknown measure kind");
}

VolumeEstimate distortion_set_volume_mc(MeasureKind kind, const Codeword& codeword, double max_distortion,
                                        std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                        std::size_t workers, double rate) {
  if (n == 0) throw std::invalid_argument("dimension must be at least 1");
  if (samples < 10000) throw std::invalid_argument("Monte-Carlo volume needs at least 10^4 samples");
  if (workers == 0) workers = 1;

  std::vector<double> lo(n, 0.0);
  std::vector<double> width(n, 1.0);
  if (kind == MeasureKind::PointCovering || kind == MeasureKind::Queueing) {
    const double duration = kind == MeasureKind::PointCovering
                                ? expect_codeword<WindowCodeword>(codeword, kind).duration()
                                : expect_codeword<CausalCodeword>(codeword, kind).duration();
    if (duration != 1.0) throw std::invalid_argument("volume estimation uses normalized timings (T = 1)");
  } else {
    const auto& xhat = expect_codeword<RealVector>(codeword, kind);
    if (xhat.size() != n) throw std::invalid_argument("codeword length differs from n");
    const double half = static_cast<double>(n) * max_distortion / rate;
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = xhat[i] - half;
      width[i] = 2 * half;
    }
  }
  double ambient = 1.0;
  for (double w : width) ambient *= w;

  std::vector<std::uint64_t> hits(workers, 0);
  auto work = [&](std::size_t w) {
    const std::uint64_t share = samples / workers + (w < samples % workers ? 1 : 0);
    Rng rng(stream_seed(seed, w));
    std::vector<double> point(n);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < share; ++s) {
      for (std::size_t i = 0; i < n; ++i) point[i] = lo[i] + width[i] * rng.uniform();
      if (distortion_set_contains(kind, codeword, max_distortion, point, rate)) ++h;
    }
    hits[w] = h;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return {p * ambient, se * ambient, total, samples, ambient};
}

std::string_view to_string(QueueingRegion region) {
  switch (region) {
    case QueueingRegion::R1: return "R1";
    case QueueingRegion::R2: return "R2";
    case QueueingRegion::Infinite: return "infinite";
    case QueueingRegion::Outside: return "outside";
  }
  return "unknown";
}

QueueingCaseStudy::QueueingCaseStudy(Rational xhat1, Rational xhat2, Rational max_distortion)
    : xhat1_(std::move(xhat1)), xhat2_(std::move(xhat2)), max_distortion_(std::move(max_distortion)) {
  if (!(0 < xhat1_ && xhat1_ < xhat2_ && xhat2_ < 1)) {
    throw std::invalid_argument("case study needs 0 < xhat_1 < xhat_2 < 1");
  }
  if (!(0 < max_distortion_ && max_distortion_ <= 1)) throw std::invalid_argument("D must lie in (0, 1]");
}

QueueingRegion QueueingCaseStudy::classify(const Rational& t1, const Rational& t2) const {
  if (!(0 <= t1 && t1 < t2 && t2 <= 1)) return QueueingRegion::Outside;
  if (xhat1_ <= t1 && t1 < xhat2_ && xhat2_ <= t2) return QueueingRegion::R1;
  if (xhat2_ <= t1) return QueueingRegion::R2;
  return QueueingRegion::Infinite;
}

std::optional<Rational> QueueingCaseStudy::piecewise_distortion(const Rational& t1, const Rational& t2) const {
  switch (classify(t1, t2)) {
    case QueueingRegion::R1: return (t1 - xhat1_) + (t2 - xhat2_);
    case QueueingRegion::R2: return t2 - xhat1_;
    default: return std::nullopt;
  }
}

namespace {

using Point2 = std::array<Rational, 2>;
using Polygon = std::vector<Point2>;

// Keeps the part of a convex polygon with a*x + b*y <= c.
Polygon clip(const Polygon& poly, const Rational& a, const Rational& b, const Rational& c) {
  Polygon out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % m];
    const Rational fp = a * p[0] + b * p[1] - c;
    const Rational fq = a * q[0] + b * q[1] - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const Rational s = fp / (fp - fq);
      out.push_back({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
    }
  }
  return out;
}

// Sum of fan triangles from the first vertex.
Rational polygon_area(const Polygon& poly) {
  Rational twice = 0;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    const Rational ux = poly[i][0] - poly[0][0];
    const Rational uy = poly[i][1] - poly[0][1];
    const Rational vx = poly[i + 1][0] - poly[0][0];
    const Rational vy = poly[i + 1][1] - poly[0][1];
    twice += ux * vy - uy * vx;
  }
  if (twice < 0) twice = -twice;
  return twice / 2;
}

}  // namespace

Rational QueueingCaseStudy::area() const {
  const Rational& a = xhat1_;
  const Rational& b = xhat2_;
  const Rational& d = max_distortion_;
  // R1 within E(D): a <= t1 <= b, b <= t2 <= 1, t1 + t2 <= a + b + D.
  Polygon r1{{a, b}, {b, b}, {b, Rational(1)}, {a, Rational(1)}};
  r1 = clip(r1, 1, 1, a + b + d);
  // R2 within E(D): b <= t1 <= t2 <= 1, t2 <= a + D.
  Polygon r2{{b, b}, {Rational(1), Rational(1)}, {b, Rational(1)}};
  r2 = clip(r2, 0, 1, a + d);
  return polygon_area(r1) + polygon_area(r2);
}

}  // namespace poisrd
