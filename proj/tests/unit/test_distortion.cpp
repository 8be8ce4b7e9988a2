#include <doctest.h>

#include <span>
#include <stdexcept>

#include "poisrd/distortion.hpp"

using namespace poisrd;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

}  // namespace

TEST_SUITE("distortion") {
  TEST_CASE("point covering") {
    const WindowCodeword a(1.0, {{0.0, 0.6}});
    CHECK(d_pc(PointPattern(1.0, {0.1, 0.5}), a).value() == doctest::Approx(0.6));
    CHECK_FALSE(d_pc(PointPattern(1.0, {0.1, 0.7}), a).is_finite());
    CHECK(d_pc(PointPattern(1.0, {}), WindowCodeword(1.0, {})).value() == 0.0);
  }

  TEST_CASE("window cells merge") {
    const WindowCodeword a(1.0, {{0.5, 0.7}, {0.1, 0.2}, {0.6, 0.8}});
    CHECK(a.cells().size() == 2);
    CHECK(a.measure() == doctest::Approx(0.4));
    CHECK(a.covers(0.75));
    CHECK_FALSE(a.covers(0.3));
  }

  TEST_CASE("queueing distortion") {
    CHECK(d_q(PointPattern(1.0, {0.3, 0.6}), CausalCodeword(1.0, {0.2, 0.5})).value() == doctest::Approx(0.2));
    CHECK_FALSE(d_q(PointPattern(1.0, {0.3}), CausalCodeword(1.0, {0.2, 0.5})).is_finite());
    CHECK_FALSE(d_q(PointPattern(1.0, {0.3, 0.6}), CausalCodeword(1.0, {0.4, 0.5})).is_finite());
  }

  TEST_CASE("queueing distortion is normalized by T") {
    CHECK(d_q(PointPattern(2.0, {0.6, 1.2}), CausalCodeword(2.0, {0.4, 1.0})).value() == doctest::Approx(0.2));
  }

  TEST_CASE("queueing waits for the previous departure") {
    // Second point departs at max(t_1, xhat_2) = 0.5, so it contributes 0.6 - 0.5.
    CHECK(d_q(PointPattern(1.0, {0.5, 0.6}), CausalCodeword(1.0, {0.1, 0.2})).value() == doctest::Approx(0.5));
  }

  TEST_CASE("finiteness criteria") {
    const auto both = queueing_criteria(PointPattern(1.0, {0.3, 0.6}), CausalCodeword(1.0, {0.2, 0.5}));
    CHECK(both.counting);
    CHECK(both.coordinate);
    const auto neither = queueing_criteria(PointPattern(1.0, {0.3, 0.6}), CausalCodeword(1.0, {0.35, 0.5}));
    CHECK_FALSE(neither.counting);
    CHECK_FALSE(neither.coordinate);
    CHECK(queueing_finite(PointPattern(1.0, {0.3, 0.6}), CausalCodeword(1.0, {0.3, 0.6})));
  }

  TEST_CASE("counting and coordinate criteria agree exactly on a rational lattice") {
    const std::vector<Rational> grid{q(0), q(1, 5), q(2, 5), q(3, 5), q(4, 5)};
    std::size_t checked = 0;
    for (const auto& t1 : grid)
      for (const auto& t2 : grid)
        for (const auto& x1 : grid)
          for (const auto& x2 : grid) {
            if (!(t1 < t2) || x2 < x1) continue;
            const std::vector<Rational> t{t1, t2};
            const std::vector<Rational> x{x1, x2};
            CHECK(counting_dominates<Rational>(t, x) == coordinate_dominates<Rational>(t, x));
            ++checked;
          }
    CHECK(checked > 0);
  }

  TEST_CASE("l1 measures") {
    CHECK(d_norm_l1(SignedIntervalVector({1.0, -1.0}, 1.0), {0.0, 0.0}).value() == doctest::Approx(1.0));
    CHECK(d_norm_l1(SignedIntervalVector({0.5, 2.0}, 1.0), {1.0, 1.0}).value() == doctest::Approx(0.75));
    CHECK_FALSE(d_onesided_l1(IntervalVector({0.5, 2.0}, 1.0), {1.0, 1.0}).is_finite());
    CHECK(d_onesided_l1(IntervalVector({0.5, 2.0}, 1.0), {0.5, 2.0}).value() == 0.0);
    CHECK(d_norm_l1(SignedIntervalVector({0.5, 2.0}, 1.0), {0.5, 2.0}).value() == 0.0);
    CHECK_THROWS_AS(d_norm_l1(SignedIntervalVector({0.5}, 1.0), {0.5, 2.0}), std::invalid_argument);
  }

  TEST_CASE("distortion-set membership") {
    const WindowCodeword a(1.0, {{0.2, 0.7}});
    const std::vector<double> inside{0.6, 0.3};
    CHECK(distortion_set_contains(MeasureKind::PointCovering, a, 0.5, inside));

    const CausalCodeword zero(1.0, {0.0, 0.0});
    const std::vector<double> in_simplex{0.1, 0.3};
    CHECK(distortion_set_contains(MeasureKind::Queueing, zero, 0.5, in_simplex));
    const std::vector<double> outside{0.51, 0.52};
    CHECK_FALSE(distortion_set_contains(MeasureKind::Queueing, zero, 0.5, outside));
  }

  TEST_CASE("Monte Carlo volumes") {
    const WindowCodeword window(1.0, {{0.2, 0.7}});
    const auto pc = distortion_set_volume_mc(MeasureKind::PointCovering, window, 0.5, 2, 200000, 1);
    CHECK(std::abs(pc.estimate - 0.25) <= 3 * pc.std_error);

    const CausalCodeword zero(1.0, {0.0, 0.0});
    const auto qz = distortion_set_volume_mc(MeasureKind::Queueing, zero, 0.5, 2, 200000, 2);
    CHECK(std::abs(qz.estimate - 0.125) <= 3 * qz.std_error);

    const CausalCodeword two_point(1.0, {0.1, 0.3});
    const auto qt = distortion_set_volume_mc(MeasureKind::Queueing, two_point, 0.5, 2, 200000, 3);
    CHECK(std::abs(qt.estimate - 0.125) <= 3 * qt.std_error);
  }

  TEST_CASE("Monte Carlo results do not depend on thread timing") {
    const CausalCodeword zero(1.0, {0.0, 0.0, 0.0});
    const auto a = distortion_set_volume_mc(MeasureKind::Queueing, zero, 0.7, 3, 50000, 9, 4);
    const auto b = distortion_set_volume_mc(MeasureKind::Queueing, zero, 0.7, 3, 50000, 9, 4);
    CHECK(a.hits == b.hits);
  }

  TEST_CASE("l1 distortion-set volume is the cross-polytope") {
    // {x : sum |x_i| <= n D / rate} with n = 2, D = 1/2: volume 2^2 (n D)^2 / 2! = 2.
    const RealVector zero{0.0, 0.0};
    const auto e = distortion_set_volume_mc(MeasureKind::NormalizedL1, zero, 0.5, 2, 200000, 4);
    CHECK(std::abs(e.estimate - 2.0) <= 3 * e.std_error);
  }

  TEST_CASE("measure tags") {
    CHECK(parse_measure_kind("pc") == MeasureKind::PointCovering);
    CHECK(parse_measure_kind("queueing") == MeasureKind::Queueing);
    CHECK(parse_measure_kind("laplacian-l1") == MeasureKind::NormalizedL1);
    CHECK(parse_measure_kind("onesided-l1") == MeasureKind::OneSidedL1);
    CHECK_THROWS_AS(parse_measure_kind("mse"), std::invalid_argument);
  }
}

TEST_SUITE("queueing case study") {
  TEST_CASE("region classification and distortion") {
    const QueueingCaseStudy s(q(1, 10), q(3, 10), q(1, 2));
    CHECK(s.classify(q(1, 5), q(1, 2)) == QueueingRegion::R1);
    CHECK(*s.piecewise_distortion(q(1, 5), q(1, 2)) == q(3, 10));
    CHECK(s.classify(q(2, 5), q(1, 2)) == QueueingRegion::R2);
    CHECK(*s.piecewise_distortion(q(2, 5), q(1, 2)) == q(2, 5));
    CHECK(s.classify(q(1, 20), q(1, 2)) == QueueingRegion::Infinite);
    CHECK_FALSE(s.piecewise_distortion(q(1, 20), q(1, 2)).has_value());
  }

  TEST_CASE("piecewise formula matches the general evaluation") {
    const QueueingCaseStudy s(q(1, 10), q(3, 10), q(1, 2));
    for (int i = 1; i < 40; ++i) {
      for (int j = i + 1; j < 40; ++j) {
        const std::vector<Rational> t{q(i, 40), q(j, 40)};
        const std::vector<Rational> x{q(1, 10), q(3, 10)};
        CHECK(queueing_sum<Rational>(t, x) == s.piecewise_distortion(t[0], t[1]));
      }
    }
  }

  TEST_CASE("small-distortion area is D^2/2") {
    for (const Rational d : {q(1, 20), q(1, 10), q(1, 5)}) {
      const QueueingCaseStudy s(q(1, 10), q(3, 10), d);
      CHECK(s.small_distortion_regime());
      CHECK(s.area() == d * d / 2);
    }
    CHECK_FALSE(QueueingCaseStudy(q(1, 10), q(3, 10), q(1, 2)).small_distortion_regime());
  }

  TEST_CASE("invalid codewords") {
    CHECK_THROWS_AS(QueueingCaseStudy(q(3, 10), q(1, 10), q(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(QueueingCaseStudy(q(1, 10), q(3, 10), q(0)), std::invalid_argument);
  }
}
