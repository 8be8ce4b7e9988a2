#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poisrd/distortion.hpp"
#include "poisrd/geometry.hpp"
#include "poisrd/rational.hpp"

namespace poisrd {

// --- Covering converse. -------------------------------------------------------

struct CoverBound {
  Rational count;        ///< vol(source set) / vol(largest distortion set) = (1/D)^n
  double rate_per_point;  ///< log2(1/D)
};

/// Minimal number of distortion sets needed to cover the source set, by the
/// volume ratio. Throws std::invalid_argument unless 0 < D <= 1 and n >= 1.
CoverBound covering_lower_bound(CanonicalShape shape, std::size_t n, const Rational& max_distortion);

// --- Constructive cell codebook. ------------------------------------------------

/// Windows made of exactly n of the k = n/D cells [j/k, (j+1)/k] of [0, 1].
class CellCodebook {
 public:
  /// Throws std::invalid_argument unless n >= 1, 0 < D <= 1 and n/D is an integer.
  CellCodebook(std::size_t n, const Rational& max_distortion);

  std::size_t points() const { return n_; }
  std::size_t cells() const { return k_; }
  const Rational& max_distortion() const { return d_; }
  /// C(k, n), exact.
  const BigInt& size() const { return size_; }
  /// log2 C(k, n) / n.
  double rate_per_point() const { return rate_; }

  /// Window built from the cells hit by the (normalized, T = 1) pattern, padded
  /// with the lowest free cells to exactly n cells. Throws if the pattern has
  /// more than n points.
  WindowCodeword encode(const PointPattern& pattern) const;

 private:
  std::size_t n_;
  std::size_t k_;
  Rational d_;
  BigInt size_;
  double rate_;
};

struct CellCodebookReport {
  BigInt codebook_size;
  double rate_per_point;
  bool verified_cover;
  std::size_t patterns;
};

/// Builds the codebook, encodes `patterns` random n-point patterns on [0, 1]
/// and checks each one through d_pc (finite and at most D).
CellCodebookReport cell_codebook(std::size_t n, const Rational& max_distortion, std::size_t patterns,
                                 std::uint64_t seed);

// --- Blahut-Arimoto. ------------------------------------------------------------

/// Per-letter distortion used by a discretized source, scaled by `rate`:
/// Hamming is I{x != y}; AbsoluteError is rate |x - y|; OneSided is rate (x - y)
/// for y <= x and +inf otherwise.
enum class LetterDistortion { Hamming, AbsoluteError, OneSided };

std::string_view to_string(LetterDistortion kind);

struct DiscretizedSource {
  std::vector<double> support;
  std::vector<double> pmf;
  LetterDistortion kind;
  double rate = 1.0;

  /// Throws unless the sizes agree, pmf >= 0 and sum(pmf) = 1 within 1e-12.
  void validate() const;
};

/// Laplacian(rate) on the grid {i h : |i h| <= extent / rate}, h = step / rate,
/// pmf proportional to the density, with AbsoluteError distortion.
DiscretizedSource discretize_laplacian(double rate, double extent = 8.0, double step = 0.01);

/// Exp(rate) on {i h : 0 <= i h <= extent / rate}, with OneSided distortion.
DiscretizedSource discretize_exponential(double rate, double extent = 12.0, double step = 0.01);

struct RDPoint {
  double rate;        ///< bits per symbol
  double distortion;  ///< normalized
  std::size_t n;
  std::string method;
};

struct BAOptions {
  std::size_t max_iters = 500000;
  double tol = 1e-10;  ///< on successive rate iterates, bits
};

struct BAResult {
  RDPoint point;
  double slope;  ///< beta in Q(y|x) proportional to q(y) exp(-beta d(x, y))
  std::size_t iterations;
  double tol;
  std::vector<double> output_pmf;
};

class BAConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alternating minimization at fixed slope. Uses an O(N) recursion when the
/// reconstruction alphabet equals a uniform source grid under AbsoluteError or
/// OneSided distortion, a dense kernel otherwise. `warm_start` seeds the output
/// distribution; its support must include every allowed transition.
BAResult blahut_arimoto(const DiscretizedSource& src, const std::vector<double>& recon, double slope,
                        const BAOptions& options = {}, const std::vector<double>* warm_start = nullptr);

/// Same as above but forcing the dense kernel; serves as a cross-check.
BAResult blahut_arimoto_dense(const DiscretizedSource& src, const std::vector<double>& recon, double slope,
                              const BAOptions& options = {}, const std::vector<double>* warm_start = nullptr);

/// min over y of E[d(X, y)]: the smallest distortion reachable at zero rate.
double max_useful_distortion(const DiscretizedSource& src, const std::vector<double>& recon);

/// R at a target distortion. Targets at or above max_useful_distortion give
/// R = 0. Otherwise the slope is searched (starting at 1/D) until the achieved
/// distortion is within `d_tol` (relative) of the target.
BAResult rd_at_distortion(const DiscretizedSource& src, const std::vector<double>& recon, double target,
                          const BAOptions& options = {}, double d_tol = 1e-4);

/// lambda * rate: bits per unit time for a process of the given intensity.
double bits_per_unit_time(double rate_per_point, double intensity);

// --- Empirical rate-distortion experiment. -------------------------------------

struct ExperimentRow {
  double target;  ///< D on the requested grid
  double rate_theory;
  double rate_measured;
  double distortion_measured;
  std::string method;
  std::size_t n;
  double intensity;
  std::uint64_t seed;
};

/// Step u = lambda * Delta of the floor quantizer whose expected normalized
/// one-sided error 1 - u / (e^u - 1) equals D, for 0 < D < 1.
double floor_quantizer_step(double max_distortion);

/// For each D on the grid, runs the constructive scheme on `samples` sampled
/// blocks of n symbols. Point covering uses the cell codebook (fixed rate);
/// the l1 measures use floor quantizers with empirical index entropy as rate.
/// D >= 1 uses the single zero codeword. Queueing is not supported.
std::vector<ExperimentRow> empirical_rd_experiment(MeasureKind kind, double intensity, std::size_t n,
                                                   const std::vector<Rational>& d_grid, std::size_t samples,
                                                   std::uint64_t seed);

}  // namespace poisrd
