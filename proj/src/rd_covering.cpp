#include "poisrd/rd_covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "poisrd/poisson.hpp"
#include "poisrd/rng.hpp"

namespace poisrd {

namespace {

void require_unit_distortion(const Rational& d) {
  if (!(d > 0 && d <= 1)) throw std::invalid_argument("D must lie in (0, 1]");
}

}  // namespace

CoverBound covering_lower_bound(CanonicalShape shape, std::size_t n, const Rational& max_distortion) {
  (void)shape;  // every canonical shape scales by D^n, so the ratio is shape-free
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  require_unit_distortion(max_distortion);
  const Rational inv = 1 / max_distortion;
  Rational count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= inv;
  return {count, -std::log2(to_double(max_distortion))};
}

CellCodebook::CellCodebook(std::size_t n, const Rational& max_distortion) : n_(n), d_(max_distortion) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  require_unit_distortion(max_distortion);
  const Rational k = Rational(static_cast<unsigned long long>(n)) / max_distortion;
  if (denominator(k) != 1) throw std::invalid_argument("n / D must be an integer number of cells");
  k_ = numerator(k).convert_to<std::size_t>();
  size_ = 1;
  double log_size = 0.0;
  for (std::size_t i = 1; i <= n_; ++i) {
    size_ = size_ * (k_ - n_ + i) / i;  // exact at every step
    log_size += std::log2(static_cast<double>(k_ - n_ + i) / static_cast<double>(i));
  }
  rate_ = log_size / static_cast<double>(n_);
}

WindowCodeword CellCodebook::encode(const PointPattern& pattern) const {
  if (pattern.duration() != 1.0) throw std::invalid_argument("cell codebook encodes normalized patterns (T = 1)");
  if (pattern.count() > n_) throw std::invalid_argument("pattern has more points than the codebook serves");
  const double k = static_cast<double>(k_);
  auto lo = [&](std::size_t j) { return static_cast<double>(j) / k; };
  auto hi = [&](std::size_t j) { return static_cast<double>(j + 1) / k; };
  std::vector<bool> used(k_, false);
  std::size_t count = 0;
  for (double t : pattern.timings()) {
    auto j = std::min(k_ - 1, static_cast<std::size_t>(t * k));
    while (j > 0 && t < lo(j)) --j;
    while (j + 1 < k_ && t > hi(j)) ++j;
    if (!used[j]) {
      used[j] = true;
      ++count;
    }
  }
  for (std::size_t j = 0; j < k_ && count < n_; ++j) {
    if (!used[j]) {
      used[j] = true;
      ++count;
    }
  }
  std::vector<ClosedInterval> cells;
  for (std::size_t j = 0; j < k_; ++j) {
    if (used[j]) cells.push_back({lo(j), hi(j)});
  }
  return WindowCodeword(1.0, std::move(cells));
}

CellCodebookReport cell_codebook(std::size_t n, const Rational& max_distortion, std::size_t patterns,
                                 std::uint64_t seed) {
  const CellCodebook book(n, max_distortion);
  const double bound = to_double(max_distortion) * (1 + 1e-12);
  bool ok = true;
  for (std::size_t p = 0; p < patterns && ok; ++p) {
    const PointPattern t = sample_fixed_count(n, 1.0, stream_seed(seed, p));
    ok = d_pc(t, book.encode(t)).within(bound);
  }
  return {book.size(), book.rate_per_point(), ok, patterns};
}

std::string_view to_string(LetterDistortion kind) {
  switch (kind) {
    case LetterDistortion::Hamming: return "hamming";
    case LetterDistortion::AbsoluteError: return "absolute-error";
    case LetterDistortion::OneSided: return "one-sided";
  }
  return "unknown";
}

void DiscretizedSource::validate() const {
  if (support.empty() || support.size() != pmf.size()) throw std::invalid_argument("support and pmf sizes differ");
  if (!(rate > 0)) throw std::invalid_argument("source rate must be positive");
  double sum = 0.0;
  for (double p : pmf) {
    if (!(p >= 0)) throw std::invalid_argument("pmf entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("pmf must sum to 1");
}

namespace {

DiscretizedSource discretize(double rate, double extent, double step, bool symmetric, LetterDistortion kind) {
  if (!(rate > 0) || !(extent > 0) || !(step > 0) || step > extent) {
    throw std::invalid_argument("discretization needs rate, extent, step > 0 and step <= extent");
  }
  const auto half = static_cast<long>(std::floor(extent / step + 1e-9));
  const long first = symmetric ? -half : 0;
  const double h = step / rate;
  DiscretizedSource src{{}, {}, kind, rate};
  for (long i = first; i <= half; ++i) {
    const double x = static_cast<double>(i) * h;
    src.support.push_back(x);
    src.pmf.push_back(std::exp(-rate * std::abs(x)));
  }
  const double total = std::accumulate(src.pmf.begin(), src.pmf.end(), 0.0);
  for (double& p : src.pmf) p /= total;
  return src;
}

double letter_distortion(const DiscretizedSource& src, double x, double y) {
  switch (src.kind) {
    case LetterDistortion::Hamming: return x == y ? 0.0 : 1.0;
    case LetterDistortion::AbsoluteError: return src.rate * std::abs(x - y);
    case LetterDistortion::OneSided:
      return y <= x ? src.rate * (x - y) : std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

void check_problem(const DiscretizedSource& src, const std::vector<double>& recon, double slope) {
  src.validate();
  if (recon.empty()) throw std::invalid_argument("reconstruction alphabet is empty");
  if (!(slope >= 0) || !std::isfinite(slope)) throw std::invalid_argument("slope must be finite and nonnegative");
  if (src.kind == LetterDistortion::OneSided) {
    const double lowest = *std::min_element(recon.begin(), recon.end());
    for (double x : src.support) {
      if (lowest > x) throw std::invalid_argument("a source letter has no finite-distortion reconstruction");
    }
  }
}

/// Grid spacing when the reconstruction alphabet equals a uniform source grid.
std::optional<double> uniform_grid_step(const DiscretizedSource& src, const std::vector<double>& recon) {
  if (src.kind == LetterDistortion::Hamming || recon != src.support || src.support.size() < 2) return std::nullopt;
  const auto& x = src.support;
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  if (!(h > 0)) return std::nullopt;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (std::abs(x[i + 1] - x[i] - h) > 1e-9 * h) return std::nullopt;
  }
  return h;
}

/// One fixed-slope problem: kernel products and the distortion-weighted sums.
class Kernel {
 public:
  virtual ~Kernel() = default;
  /// z_i = sum_j q_j K(i, j) and e_i = sum_j q_j K(i, j) d(i, j).
  virtual void forward(const std::vector<double>& q, std::vector<double>& z, std::vector<double>& e) const = 0;
  /// c_j = sum_i v_i K(i, j).
  virtual void backward(const std::vector<double>& v, std::vector<double>& c) const = 0;
};

class GeometricKernel final : public Kernel {
 public:
  GeometricKernel(std::size_t size, double unit_distortion, double slope, bool one_sided)
      : n_(size), unit_(unit_distortion), r_(std::exp(-slope * unit_distortion)), one_sided_(one_sided) {}

  void forward(const std::vector<double>& q, std::vector<double>& z, std::vector<double>& e) const override {
    // f_i = sum_{j<=i} q_j r^(i-j), t_i = sum_{j<=i} q_j (i-j) r^(i-j).
    double f = 0.0;
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      t = r_ * (t + f);
      f = r_ * f + q[i];
      z[i] = f;
      e[i] = unit_ * t;
    }
    if (one_sided_) return;
    // b_i = sum_{j>i} q_j r^(j-i), u_i = sum_{j>i} q_j (j-i) r^(j-i).
    double b = 0.0;
    double u = 0.0;
    for (std::size_t i = n_; i-- > 0;) {
      z[i] += b;
      e[i] += unit_ * u;
      u = r_ * (u + b + q[i]);
      b = r_ * (b + q[i]);
    }
  }

  void backward(const std::vector<double>& v, std::vector<double>& c) const override {
    if (one_sided_) {
      // c_j = sum_{i>=j} v_i r^(i-j).
      double g = 0.0;
      for (std::size_t j = n_; j-- > 0;) {
        g = r_ * g + v[j];
        c[j] = g;
      }
      return;
    }
    std::vector<double> unused(n_);
    forward(v, c, unused);
  }

 private:
  std::size_t n_;
  double unit_;
  double r_;
  bool one_sided_;
};

class DenseKernel final : public Kernel {
 public:
  DenseKernel(const DiscretizedSource& src, const std::vector<double>& recon, double slope)
      : rows_(src.support.size()), cols_(recon.size()), k_(rows_ * cols_), kd_(rows_ * cols_) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const double d = letter_distortion(src, src.support[i], recon[j]);
        const double k = std::isfinite(d) ? std::exp(-slope * d) : 0.0;
        k_[i * cols_ + j] = k;
        kd_[i * cols_ + j] = k > 0 ? k * d : 0.0;
      }
    }
  }

  void forward(const std::vector<double>& q, std::vector<double>& z, std::vector<double>& e) const override {
    for (std::size_t i = 0; i < rows_; ++i) {
      double zs = 0.0;
      double es = 0.0;
      const double* kr = &k_[i * cols_];
      const double* kdr = &kd_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) {
        zs += q[j] * kr[j];
        es += q[j] * kdr[j];
      }
      z[i] = zs;
      e[i] = es;
    }
  }

  void backward(const std::vector<double>& v, std::vector<double>& c) const override {
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* kr = &k_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) c[j] += v[i] * kr[j];
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> k_;
  std::vector<double> kd_;
};

BAResult iterate(const Kernel& kernel, const DiscretizedSource& src, std::size_t m, double slope,
                 const BAOptions& options, const std::vector<double>* warm_start, std::string method) {
  const std::size_t n = src.support.size();
  std::vector<double> q(m, 1.0 / static_cast<double>(m));
  if (warm_start) {
    if (warm_start->size() != m) throw std::invalid_argument("warm start has the wrong size");
    // A small uniform floor keeps every allowed transition in the support.
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) total += q[j] = (*warm_start)[j] + 1e-12;
    for (double& x : q) x /= total;
  }
  std::vector<double> z(n), e(n), v(n), c(m);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    kernel.forward(q, z, e);
    double distortion = 0.0;
    double log_z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (src.pmf[i] == 0) {
        v[i] = 0.0;
        continue;
      }
      if (!(z[i] > 0)) throw BAConvergenceError("kernel row vanished; slope too large for double precision");
      v[i] = src.pmf[i] / z[i];
      distortion += v[i] * e[i];
      log_z += src.pmf[i] * std::log(z[i]);
    }
    kernel.backward(v, c);
    double total = 0.0;
    double cross = 0.0;  // sum_j q'_j log(q_j / q'_j) = -KL(q' || q)
    for (std::size_t j = 0; j < m; ++j) {
      const double next = q[j] * c[j];
      if (next > 0) cross -= next * std::log(c[j]);
      q[j] = next;
      total += next;
    }
    for (double& x : q) x /= total;
    const double rate = std::max(0.0, (cross - slope * distortion - log_z) / std::log(2.0));
    if (std::abs(rate - previous) < options.tol) {
      return {{rate, distortion, 1, std::move(method)}, slope, it, options.tol, std::move(q)};
    }
    previous = rate;
  }
  throw BAConvergenceError("Blahut-Arimoto did not converge within " + std::to_string(options.max_iters) +
                           " iterations");
}

}  // namespace

DiscretizedSource discretize_laplacian(double rate, double extent, double step) {
  return discretize(rate, extent, step, true, LetterDistortion::AbsoluteError);
}

DiscretizedSource discretize_exponential(double rate, double extent, double step) {
  return discretize(rate, extent, step, false, LetterDistortion::OneSided);
}

BAResult blahut_arimoto(const DiscretizedSource& src, const std::vector<double>& recon, double slope,
                        const BAOptions& options, const std::vector<double>* warm_start) {
  check_problem(src, recon, slope);
  if (const auto h = uniform_grid_step(src, recon)) {
    const GeometricKernel kernel(recon.size(), src.rate * *h, slope, src.kind == LetterDistortion::OneSided);
    return iterate(kernel, src, recon.size(), slope, options, warm_start, "blahut-arimoto");
  }
  const DenseKernel kernel(src, recon, slope);
  return iterate(kernel, src, recon.size(), slope, options, warm_start, "blahut-arimoto");
}

BAResult blahut_arimoto_dense(const DiscretizedSource& src, const std::vector<double>& recon, double slope,
                              const BAOptions& options, const std::vector<double>* warm_start) {
  check_problem(src, recon, slope);
  const DenseKernel kernel(src, recon, slope);
  return iterate(kernel, src, recon.size(), slope, options, warm_start, "blahut-arimoto");
}

double max_useful_distortion(const DiscretizedSource& src, const std::vector<double>& recon) {
  check_problem(src, recon, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (double y : recon) {
    double expected = 0.0;
    for (std::size_t i = 0; i < src.support.size() && expected < best; ++i) {
      if (src.pmf[i] > 0) expected += src.pmf[i] * letter_distortion(src, src.support[i], y);
    }
    best = std::min(best, expected);
  }
  return best;
}

BAResult rd_at_distortion(const DiscretizedSource& src, const std::vector<double>& recon, double target,
                          const BAOptions& options, double d_tol) {
  if (!(target > 0) || !std::isfinite(target)) throw std::invalid_argument("target distortion must be positive");
  const double d_max = max_useful_distortion(src, recon);
  if (target >= d_max) {
    std::vector<double> q(recon.size(), 0.0);
    return {{0.0, d_max, 1, "zero-rate"}, 0.0, 0, options.tol, std::move(q)};
  }
  std::vector<double> warm;
  auto solve = [&](double slope) {
    BAResult r = blahut_arimoto(src, recon, slope, options, warm.empty() ? nullptr : &warm);
    warm = r.output_pmf;
    return r;
  };
  auto gap = [&](const BAResult& r) { return std::log(r.point.distortion / target); };

  // D(slope) is decreasing and close to 1/slope for these sources, so a secant
  // on log-log axes converges in a few solves. Steps are clamped, and once the
  // target is bracketed any step leaving the bracket is replaced by bisection.
  double lo = -INFINITY;  // log-slopes known to give D above the target
  double hi = INFINITY;   // ... and below it
  double x0 = -std::log(target);
  BAResult r0 = solve(std::exp(x0));
  double f0 = gap(r0);
  if (std::abs(f0) <= d_tol) return r0;
  (f0 > 0 ? lo : hi) = x0;
  double x1 = x0 + std::clamp(f0, -1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    BAResult r1 = solve(std::exp(x1));
    const double f1 = gap(r1);
    if (std::abs(f1) <= d_tol) return r1;
    (f1 > 0 ? lo : hi) = x1;
    double step = f1 == f0 ? f1 : -f1 * (x1 - x0) / (f1 - f0);
    if (!(step > 0 || step < 0) || step * f1 < 0) step = f1;  // secant slope must be negative
    double next = x1 + std::clamp(step, -1.0, 1.0);
    if (std::isfinite(lo) && std::isfinite(hi) && !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x0 = x1;
    f0 = f1;
    x1 = next;
  }
  throw BAConvergenceError("slope search did not reach the target distortion");
}

double bits_per_unit_time(double rate_per_point, double intensity) {
  if (!(rate_per_point >= 0) || !(intensity >= 0)) throw std::invalid_argument("rate and intensity must be >= 0");
  return intensity * rate_per_point;
}

double floor_quantizer_step(double max_distortion) {
  if (!(max_distortion > 0 && max_distortion < 1)) throw std::invalid_argument("floor quantizer needs 0 < D < 1");
  // u / (e^u - 1) falls from 1 to 0; find where it equals 1 - D.
  const double goal = 1 - max_distortion;
  auto h = [](double u) { return u / std::expm1(u); };
  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) > goal) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > goal ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double entropy_bits(const std::map<long long, std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (const auto& [symbol, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

ExperimentRow run_cells(std::size_t n, const Rational& d, std::size_t samples, std::uint64_t seed) {
  const CellCodebook book(n, d);
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const PointPattern t = sample_fixed_count(n, 1.0, stream_seed(seed, s));
    const Distortion dist = d_pc(t, book.encode(t));
    if (!dist.is_finite()) throw std::logic_error("cell codebook failed to cover a pattern");
    sum += dist.value();
  }
  return {to_double(d), 0.0, book.rate_per_point(), sum / static_cast<double>(samples), "cell-codebook", n, 0.0,
          seed};
}

ExperimentRow run_floor(MeasureKind kind, double intensity, std::size_t n, double d, std::size_t samples,
                        std::uint64_t seed) {
  const bool zero = d >= 1;
  const double step = zero ? 0.0 : floor_quantizer_step(d) / intensity;
  std::map<long long, std::size_t> counts;
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t block_seed = stream_seed(seed, s);
    RealVector xhat(n, 0.0);
    if (kind == MeasureKind::OneSidedL1) {
      const IntervalVector x = sample_exponential(n, intensity, block_seed);
      for (std::size_t i = 0; i < n; ++i) {
        const auto k = zero ? 0LL : static_cast<long long>(std::floor(x.intervals()[i] / step));
        xhat[i] = static_cast<double>(k) * step;
        ++counts[k];
      }
      sum += d_onesided_l1(x, xhat).value();
    } else {
      const SignedIntervalVector x = sample_laplacian(n, intensity, block_seed);
      for (std::size_t i = 0; i < n; ++i) {
        const double v = x.values()[i];
        const auto k = zero ? 0LL : static_cast<long long>(std::floor(std::abs(v) / step));
        const long long symbol = v < 0 ? -k : k;  // the sign is only coded when k >= 1
        xhat[i] = static_cast<double>(symbol) * step;
        ++counts[symbol];
      }
      sum += d_norm_l1(x, xhat).value();
    }
  }
  const double rate = zero ? 0.0 : entropy_bits(counts, samples * n);
  return {d, 0.0, rate, sum / static_cast<double>(samples), zero ? "zero-codeword" : "floor-quantizer", n,
          intensity, seed};
}

}  // namespace

std::vector<ExperimentRow> empirical_rd_experiment(MeasureKind kind, double intensity, std::size_t n,
                                                   const std::vector<Rational>& d_grid, std::size_t samples,
                                                   std::uint64_t seed) {
  if (kind == MeasureKind::Queueing) {
    throw std::invalid_argument("no constructive scheme is implemented for the queueing measure");
  }
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (!(intensity > 0)) throw std::invalid_argument("lambda must be positive");
  for (const auto& d : d_grid) require_unit_distortion(d);
  std::vector<ExperimentRow> rows;
  for (std::size_t g = 0; g < d_grid.size(); ++g) {
    const std::uint64_t row_seed = stream_seed(seed, g);
    ExperimentRow row = kind == MeasureKind::PointCovering
                            ? run_cells(n, d_grid[g], samples, row_seed)
                            : run_floor(kind, intensity, n, to_double(d_grid[g]), samples, row_seed);
    row.rate_theory = std::log2(1.0 / to_double(d_grid[g]));
    row.intensity = intensity;
    row.seed = seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace poisrd
