#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "poisrd/poisson.hpp"
#include "poisrd/rd_covering.hpp"
#include "poisrd/rng.hpp"

using namespace poisrd;

namespace {

// Mean of x - Delta floor(x / Delta) for x ~ Exp(lambda).
double floor_error_oracle(double lambda, double delta) {
  const double e = std::exp(-lambda * delta);
  return 1.0 / lambda - delta * e / (1.0 - e);
}

DiscretizedSource fair_bit() { return {{0.0, 1.0}, {0.5, 0.5}, LetterDistortion::Hamming, 1.0}; }

}  // namespace

TEST_SUITE("covering bound") {
  TEST_CASE("count and rate") {
    const auto cube = covering_lower_bound(CanonicalShape::CubeDistortion, 3, Rational(1, 2));
    CHECK(cube.count == 8);
    CHECK(cube.rate_per_point == 1.0);
    const auto simplex = covering_lower_bound(CanonicalShape::OrderSimplex, 2, Rational(1, 4));
    CHECK(simplex.count == 16);
    CHECK(simplex.rate_per_point == 2.0);
    for (auto shape : {CanonicalShape::CubeDistortion, CanonicalShape::OrderSimplex, CanonicalShape::CornerSimplex}) {
      const auto whole = covering_lower_bound(shape, 5, 1);
      CHECK(whole.count == 1);
      CHECK(whole.rate_per_point == 0.0);
    }
  }

  TEST_CASE("non-dyadic distortion stays exact") {
    const auto b = covering_lower_bound(CanonicalShape::CubeDistortion, 4, Rational(2, 3));
    CHECK(b.count == Rational(81, 16));
  }

  TEST_CASE("rejects bad arguments") {
    CHECK_THROWS_AS(covering_lower_bound(CanonicalShape::CubeDistortion, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(covering_lower_bound(CanonicalShape::CubeDistortion, 3, Rational(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(covering_lower_bound(CanonicalShape::CubeDistortion, 0, Rational(1, 2)), std::invalid_argument);
  }
}

TEST_SUITE("cell codebook") {
  TEST_CASE("binomial sizes") {
    const CellCodebook two(2, Rational(1, 2));
    CHECK(two.cells() == 4);
    CHECK(two.size() == 6);
    CHECK(two.rate_per_point() == doctest::Approx(std::log2(6.0) / 2));
    const CellCodebook one(1, Rational(1, 2));
    CHECK(one.size() == 2);
    CHECK(one.rate_per_point() == doctest::Approx(1.0));
  }

  TEST_CASE("overhead stays below log2(e) + 0.2") {
    const auto r = cell_codebook(32, Rational(1, 8), 2000, 3);
    CHECK(r.rate_per_point <= 3 + std::log2(std::exp(1.0)) + 0.2);
    CHECK(r.verified_cover);
    const auto s = cell_codebook(16, Rational(1, 4), 2000, 4);
    CHECK(s.rate_per_point >= 2.0);
    CHECK(s.rate_per_point <= 3.7);
  }

  TEST_CASE("encoded windows cover with measure exactly D") {
    const CellCodebook book(8, Rational(1, 4));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto p = sample_fixed_count(8, 1.0, seed);
      const auto w = book.encode(p);
      const auto d = d_pc(p, w);
      REQUIRE(d.is_finite());
      CHECK(d.value() == doctest::Approx(0.25).epsilon(1e-12));
    }
  }

  TEST_CASE("points on cell boundaries") {
    const CellCodebook book(2, Rational(1, 2));
    const PointPattern p(1.0, {0.25, 0.5});
    CHECK(d_pc(p, book.encode(p)).within(0.5 + 1e-12));
  }

  TEST_CASE("n / D must be an integer") {
    CHECK_THROWS_AS(CellCodebook(3, Rational(2, 5)), std::invalid_argument);
  }
}

TEST_SUITE("blahut-arimoto") {
  TEST_CASE("fair bit at zero distortion needs one bit") {
    const auto r = blahut_arimoto(fair_bit(), {0.0, 1.0}, 40.0);
    CHECK(r.point.rate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.point.distortion < 1e-12);
  }

  TEST_CASE("fair bit matches 1 - h(D)") {
    const auto r = rd_at_distortion(fair_bit(), {0.0, 1.0}, 0.1);
    const double h = -0.1 * std::log2(0.1) - 0.9 * std::log2(0.9);
    CHECK(r.point.rate == doctest::Approx(1.0 - h).epsilon(1e-3));
  }

  TEST_CASE("Laplacian and exponential at D = 1/2") {
    const auto lap = discretize_laplacian(1.0);
    CHECK(std::abs(rd_at_distortion(lap, lap.support, 0.5).point.rate - 1.0) <= 0.05);
    const auto ex = discretize_exponential(1.0);
    CHECK(std::abs(rd_at_distortion(ex, ex.support, 0.5).point.rate - 1.0) <= 0.05);
  }

  TEST_CASE("rate decreases with distortion") {
    const auto src = discretize_laplacian(1.0, 8.0, 0.02);
    double previous = INFINITY;
    for (double d : {0.2, 0.3, 0.5, 0.7, 0.9}) {
      const double r = rd_at_distortion(src, src.support, d).point.rate;
      CHECK(r < previous);
      previous = r;
    }
  }

  TEST_CASE("grid refinement changes little") {
    const auto coarse = discretize_laplacian(1.0, 8.0, 0.02);
    const auto fine = discretize_laplacian(1.0, 8.0, 0.01);
    const double a = rd_at_distortion(coarse, coarse.support, 0.5).point.rate;
    const double b = rd_at_distortion(fine, fine.support, 0.5).point.rate;
    CHECK(std::abs(a - b) <= 0.02);
  }

  TEST_CASE("intensity scaling leaves normalized curves unchanged") {
    const auto one = discretize_exponential(1.0, 12.0, 0.02);
    const auto three = discretize_exponential(3.0, 12.0, 0.02);
    const auto a = blahut_arimoto(one, one.support, 2.0);
    const auto b = blahut_arimoto(three, three.support, 2.0);
    CHECK(a.point.rate == doctest::Approx(b.point.rate).epsilon(1e-9));
    CHECK(a.point.distortion == doctest::Approx(b.point.distortion).epsilon(1e-9));
  }

  TEST_CASE("fast kernels agree with the dense kernel") {
    const auto lap = discretize_laplacian(1.0, 4.0, 0.1);
    const auto ex = discretize_exponential(1.0, 6.0, 0.1);
    for (const auto* src : {&lap, &ex}) {
      const auto fast = blahut_arimoto(*src, src->support, 1.5);
      const auto dense = blahut_arimoto_dense(*src, src->support, 1.5);
      CHECK(fast.point.rate == doctest::Approx(dense.point.rate).epsilon(1e-8));
      CHECK(fast.point.distortion == doctest::Approx(dense.point.distortion).epsilon(1e-8));
    }
  }

  TEST_CASE("zero rate at and beyond the maximum useful distortion") {
    const auto src = discretize_exponential(1.0);
    CHECK(max_useful_distortion(src, src.support) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(rd_at_distortion(src, src.support, 1.0).point.rate <= 1e-3);
    CHECK(rd_at_distortion(src, src.support, 2.0).point.rate == 0.0);
  }

  TEST_CASE("iteration cap raises") {
    const auto src = discretize_laplacian(1.0, 8.0, 0.02);
    CHECK_THROWS_AS(blahut_arimoto(src, src.support, 1.2, BAOptions{3, 1e-14}), BAConvergenceError);
  }

  TEST_CASE("invalid sources") {
    DiscretizedSource bad{{0.0, 1.0}, {0.7, 0.7}, LetterDistortion::Hamming, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(blahut_arimoto(fair_bit(), {0.0, 1.0}, -1.0), std::invalid_argument);
  }
}

TEST_SUITE("rates per unit time") {
  TEST_CASE("scaling by intensity") {
    CHECK(bits_per_unit_time(1.0, 2.0) == 2.0);
    CHECK(bits_per_unit_time(0.0, 7.0) == 0.0);
  }

  TEST_CASE("law of large numbers over sampled intervals") {
    const double rate = 1.0;
    const auto iv = sample_exponential(10000, 3.0, 12);
    const double total = std::accumulate(iv.intervals().begin(), iv.intervals().end(), 0.0);
    const double empirical = 10000 * rate / total;
    CHECK(std::abs(empirical - bits_per_unit_time(rate, 3.0)) <= 0.02 * bits_per_unit_time(rate, 3.0));
  }
}

TEST_SUITE("empirical experiments") {
  TEST_CASE("floor-quantizer error oracle is close to half a step") {
    for (double delta : {0.2, 0.1, 0.05, 0.01}) {
      CHECK(std::abs(floor_error_oracle(1.0, delta) - delta / 2) <= 0.05 * delta / 2);
    }
  }

  TEST_CASE("floor-quantizer error oracle against sampling") {
    const double delta = 0.2;
    const auto iv = sample_exponential(200000, 1.0, 21);
    double error = 0;
    for (double x : iv.intervals()) error += x - delta * std::floor(x / delta);
    CHECK(std::abs(error / 200000 - floor_error_oracle(1.0, delta)) <= 0.003);
  }

  TEST_CASE("floor-quantizer step inverts the normalized error") {
    for (double d : {0.1, 0.3, 0.5, 0.9}) {
      const double u = floor_quantizer_step(d);
      CHECK(floor_error_oracle(1.0, u) == doctest::Approx(d).epsilon(1e-9));
    }
  }

  TEST_CASE("point-covering experiment") {
    const auto rows = empirical_rd_experiment(MeasureKind::PointCovering, 1.0, 16, {Rational(1, 4), 1}, 200, 5);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].distortion_measured <= 0.25 + 1e-12);
    CHECK(rows[0].rate_measured >= 2.0);
    CHECK(rows[0].rate_measured <= 3.7);
    CHECK(rows[1].rate_measured == 0.0);
  }

  TEST_CASE("one-sided experiment lands near the target") {
    const auto rows = empirical_rd_experiment(MeasureKind::OneSidedL1, 1.0, 64, {Rational(1, 2)}, 400, 6);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].distortion_measured - 0.5) <= 0.02);
    CHECK(rows[0].rate_measured >= rows[0].rate_theory - 0.05);
  }

  TEST_CASE("queueing experiments are rejected") {
    CHECK_THROWS_AS(empirical_rd_experiment(MeasureKind::Queueing, 1.0, 4, {Rational(1, 2)}, 10, 1),
                    std::invalid_argument);
  }
}
