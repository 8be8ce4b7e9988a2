#include <doctest.h>

#include <stdexcept>

#include "poisrd/serialization.hpp"

using namespace poisrd;

TEST_SUITE("serialization") {
  TEST_CASE("rationals") {
    CHECK(rational_to_json(Rational(3, 4)) == "3/4");
    CHECK(rational_from_json(Json("3/4")) == Rational(3, 4));
    CHECK(rational_from_json(Json(5)) == 5);
    CHECK(rational_from_json(Json(0.5)) == Rational(1, 2));
    CHECK_THROWS_AS(rational_from_json(Json::array()), std::invalid_argument);
  }

  TEST_CASE("polytope round trip") {
    for (const auto& p : {hypercube(3), octahedron(2), order_simplex(4), standard_simplex(3, Rational(2, 3))}) {
      CHECK(polytope_from_json(Json::parse(polytope_to_json(p).dump())) == p);
    }
    CHECK_THROWS_AS(polytope_from_json(Json{{"dim", 3}, {"vertices", {{"0", "1"}}}}), std::invalid_argument);
  }

  TEST_CASE("pattern and interval round trips") {
    const PointPattern p(2.0, {0.125, 0.7, 1.9});
    CHECK(pattern_from_json(Json::parse(pattern_to_json(p).dump())) == p);
    const IntervalVector iv({0.5, 0.25}, 2.0);
    CHECK(intervals_from_json(intervals_to_json(iv)) == iv);
    const SignedIntervalVector sv({-0.5, 0.25}, 2.0);
    const auto back = signed_intervals_from_json(signed_intervals_to_json(sv));
    CHECK(back.values() == sv.values());
    CHECK(signed_intervals_from_json(Json{{"lambda", 1.0}, {"intervals", {1.0, -2.0}}}).values() ==
          std::vector<double>{1.0, -2.0});
  }

  TEST_CASE("codewords") {
    const auto w = window_from_json(Json::parse(R"({"T": 1, "cells": [[0.1, 0.3], [0.5, 0.6]]})"));
    CHECK(window_to_json(w)["cells"].size() == 2);
    const auto c = codeword_from_json(MeasureKind::Queueing, Json::parse(R"({"T": 1, "timings": [0.1, 0.3]})"));
    CHECK(std::get<CausalCodeword>(c).timings() == std::vector<double>{0.1, 0.3});
    const auto x = codeword_from_json(MeasureKind::OneSidedL1, Json::parse(R"({"xhat": [1, 2]})"));
    CHECK(std::get<RealVector>(x) == RealVector{1.0, 2.0});
    CHECK_THROWS_AS(window_from_json(Json::parse(R"({"T": 1, "cells": [[0.1]]})")), std::invalid_argument);
    CHECK_THROWS_AS(causal_from_json(Json::parse(R"({"timings": [0.1]})")), std::invalid_argument);
  }

  TEST_CASE("distortion values") {
    CHECK(distortion_to_json(Distortion::finite(0.25)).dump() == R"({"value":0.25})");
    CHECK(distortion_to_json(Distortion::infinite()).dump() == R"({"value":"inf"})");
  }

  TEST_CASE("group elements") {
    const auto o3 = standard_group(GroupFamily::Hyperoctahedral, 3);
    for (const auto& g : o3.elements()) {
      CHECK(element_from_json(element_to_json(g)) == g);
    }
    const SignedPermutation o(Permutation({1, 0}), SignVector({-1, 1}));
    CHECK(element_to_json(o).dump() == R"({"perm":[1,0],"signs":[-1,1]})");
  }

  TEST_CASE("graphs") {
    const auto g = polytope_graph(PolytopeFamily::Cube, 3);
    const auto back = graph_from_json(Json::parse(graph_to_json(g).dump()));
    CHECK(back.size() == 8);
    CHECK(back.edges() == g.edges());
    CHECK_THROWS_AS(graph_from_json(Json{{"m", 2}, {"edges", {{0, 5}}}}), std::invalid_argument);
  }

  TEST_CASE("trace document") {
    const auto j = trace_to_json(run_standard(2, 8));
    CHECK(j["step_count"] == 2);
    CHECK(j["final_orders"] == Json::array({8, 8}));
    CHECK(j["terminated"] == true);
    CHECK(j["steps"].size() == 2);
  }

  TEST_CASE("experiment CSV") {
    const std::vector<ExperimentRow> rows{{0.5, 1.0, 1.25, 0.5, "cell-codebook", 4, 1.0, 7}};
    CHECK(experiment_csv(rows) ==
          "D,R_theory,R_measured,D_measured,method,n,lambda,seed\n0.5,1,1.25,0.5,cell-codebook,4,1,7\n");
  }
}
