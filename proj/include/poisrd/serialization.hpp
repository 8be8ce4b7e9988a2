#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "poisrd/distortion.hpp"
#include "poisrd/geometry.hpp"
#include "poisrd/groups.hpp"
#include "poisrd/poisson.hpp"
#include "poisrd/polytope_symmetry.hpp"
#include "poisrd/rd_covering.hpp"
#include "poisrd/symmetrize.hpp"

namespace poisrd {

/// Insertion-ordered JSON, so emitted documents are stable and readable.
using Json = nlohmann::ordered_json;

// Rationals are written as "p/q" strings. Readers accept strings or numbers;
// numbers are taken at their exact binary value.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"dim": n, "vertices": [["p/q", ...], ...]}
Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

/// {"T": float, "timings": [floats]}
Json pattern_to_json(const PointPattern& p);
PointPattern pattern_from_json(const Json& j);

/// {"lambda": float, "intervals": [floats]}
Json intervals_to_json(const IntervalVector& v);
IntervalVector intervals_from_json(const Json& j);

/// {"lambda": float, "values": [floats]}; "intervals" is accepted on input.
Json signed_intervals_to_json(const SignedIntervalVector& v);
SignedIntervalVector signed_intervals_from_json(const Json& j);

/// {"T": float, "cells": [[lo, hi], ...]}
Json window_to_json(const WindowCodeword& w);
WindowCodeword window_from_json(const Json& j);

/// {"T": float, "timings": [floats]}, ties allowed.
Json causal_to_json(const CausalCodeword& c);
CausalCodeword causal_from_json(const Json& j);

/// Codeword for the given measure: window, causal, or {"xhat": [floats]}.
Codeword codeword_from_json(MeasureKind kind, const Json& j);

/// {"value": float} or {"value": "inf"}
Json distortion_to_json(const Distortion& d);

/// {"perm": [ints], "signs": [+-1]}, 0-based permutation images.
Json element_to_json(const SignedPermutation& g);
SignedPermutation element_from_json(const Json& j);

/// {"m": int, "edges": [[i, j], ...]}, 0-based.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json trace_to_json(const AlgorithmTrace& trace);

/// Header D,R_theory,R_measured,D_measured,method,n,lambda,seed and one row per point.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace poisrd
