#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "poisrd/poisson.hpp"
#include "poisrd/rng.hpp"

using namespace poisrd;

namespace {

// Pearson statistic of observed counts against Poisson(mean), pooling tail bins
// until every expected count is at least 5.
struct ChiSquare {
  double statistic;
  std::size_t dof;
};

ChiSquare poisson_fit(const std::vector<std::size_t>& counts, double mean) {
  const double trials = static_cast<double>(counts.size());
  const std::size_t top = *std::max_element(counts.begin(), counts.end()) + 1;
  std::vector<double> observed(top, 0.0);
  for (auto c : counts) observed[c] += 1;
  std::vector<double> expected(top);
  double pk = std::exp(-mean);
  for (std::size_t k = 0; k < top; ++k) {
    expected[k] = trials * pk;
    pk *= mean / static_cast<double>(k + 1);
  }
  expected.back() += trials - std::accumulate(expected.begin(), expected.end(), 0.0);

  std::vector<std::pair<double, double>> bins;
  double o = 0;
  double e = 0;
  for (std::size_t k = 0; k < top; ++k) {
    o += observed[k];
    e += expected[k];
    if (e >= 5.0) {
      bins.emplace_back(o, e);
      o = e = 0;
    }
  }
  if (e > 0) {
    if (bins.empty()) bins.emplace_back(o, e);
    else {
      bins.back().first += o;
      bins.back().second += e;
    }
  }
  double stat = 0;
  for (auto [ob, ex] : bins) stat += (ob - ex) * (ob - ex) / ex;
  return {stat, bins.size() - 1};
}

}  // namespace

TEST_SUITE("poisson_source") {
  TEST_CASE("zero intensity gives an empty pattern") {
    for (std::uint64_t seed : {0u, 1u, 99u}) CHECK(sample_homogeneous(0.0, 1.0, seed).count() == 0);
  }

  TEST_CASE("patterns are strictly increasing inside the window") {
    const auto p = sample_homogeneous(5.0, 2.0, 1);
    for (std::size_t i = 0; i < p.count(); ++i) {
      CHECK(p.timings()[i] > 0.0);
      CHECK(p.timings()[i] < 2.0);
      if (i > 0) CHECK(p.timings()[i] > p.timings()[i - 1]);
    }
  }

  TEST_CASE("same seed, same pattern") {
    CHECK(sample_homogeneous(20.0, 1.0, 7) == sample_homogeneous(20.0, 1.0, 7));
    CHECK_FALSE(sample_homogeneous(20.0, 1.0, 7) == sample_homogeneous(20.0, 1.0, 8));
  }

  TEST_CASE("mean count at intensity 100") {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) total += static_cast<double>(sample_homogeneous(100.0, 1.0, seed).count());
    CHECK(std::abs(total / 10000 - 100.0) <= 1.0);
  }

  TEST_CASE("counts fit the Poisson law (chi-square, alpha = 1e-3)") {
    for (const auto [rate, duration] : {std::pair{1.0, 1.0}, {5.0, 2.0}, {100.0, 1.0}}) {
      std::vector<std::size_t> counts;
      for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        counts.push_back(sample_homogeneous(rate, duration, stream_seed(17, seed)).count());
      }
      const auto fit = poisson_fit(counts, rate * duration);
      REQUIRE(fit.dof >= 1);
      const boost::math::chi_squared law(static_cast<double>(fit.dof));
      CAPTURE(rate * duration);
      CHECK(fit.statistic < boost::math::quantile(boost::math::complement(law, 1e-3)));
    }
  }

  TEST_CASE("fixed-count patterns") {
    const auto p = sample_fixed_count(50, 3.0, 2);
    CHECK(p.count() == 50);
    CHECK(std::is_sorted(p.timings().begin(), p.timings().end()));
    CHECK(sample_fixed_count(0, 1.0, 2).count() == 0);
  }

  TEST_CASE("timings to intervals") {
    const auto iv = timings_to_intervals(PointPattern(1.0, {0.2, 0.5, 0.9}));
    REQUIRE(iv.size() == 3);
    CHECK(iv.intervals()[0] == doctest::Approx(0.2));
    CHECK(iv.intervals()[1] == doctest::Approx(0.3));
    CHECK(iv.intervals()[2] == doctest::Approx(0.4));
    CHECK(timings_to_intervals(PointPattern(1.0, {})).size() == 0);
  }

  TEST_CASE("interval round trip on sampled patterns") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto p = sample_homogeneous(30.0, 1.0, seed);
      const auto back = intervals_to_timings(timings_to_intervals(p), 1.0);
      REQUIRE(back.count() == p.count());
      for (std::size_t i = 0; i < p.count(); ++i) CHECK(back.timings()[i] == doctest::Approx(p.timings()[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("intervals summing past the window are rejected") {
    CHECK_THROWS_AS(intervals_to_timings(IntervalVector({0.6, 0.6}, 1.0), 1.0), std::invalid_argument);
  }

  TEST_CASE("exponential and Laplacian samples") {
    CHECK(sample_exponential(0, 1.0, 1).size() == 0);
    const auto e = sample_exponential(100000, 1.0, 5);
    const double mean = std::accumulate(e.intervals().begin(), e.intervals().end(), 0.0) / 1e5;
    CHECK(std::abs(mean - 1.0) <= 0.02);

    const auto l = sample_laplacian(100000, 2.0, 6);
    double positive = 0;
    double magnitude = 0;
    for (double v : l.values()) {
      positive += v > 0 ? 1 : 0;
      magnitude += std::abs(v);
    }
    CHECK(std::abs(positive / 1e5 - 0.5) <= 0.01);
    CHECK(std::abs(magnitude / 1e5 - 0.5) <= 0.01);
  }

  TEST_CASE("l1-shell concentration") {
    CHECK(concentration_check(sample_exponential(10000, 1.0, 8), 0.05).pass);
    const std::vector<double> on_shell(10, 0.5);
    CHECK(concentration_check(on_shell, 2.0, 0.05).deviation == doctest::Approx(0.0));
    const std::vector<double> doubled(10, 1.0);
    const auto r = concentration_check(doubled, 2.0, 0.05);
    CHECK(r.deviation == doctest::Approx(1.0));
    CHECK_FALSE(r.pass);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(sample_homogeneous(-1.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_homogeneous(1.0, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(PointPattern(1.0, {0.5, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(PointPattern(1.0, {0.5, 1.5}), std::invalid_argument);
  }
}
