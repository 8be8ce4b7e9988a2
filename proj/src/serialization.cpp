#include "poisrd/serialization.hpp"

#include <cstdio>
#include <stdexcept>

namespace poisrd {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

std::vector<double> doubles(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(x.get<double>());
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return exact_from_double(j.get<double>());
  throw std::invalid_argument("expected a rational as a string or number");
}

Json polytope_to_json(const Polytope& p) {
  Json vertices = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(rational_to_json(x));
    vertices.push_back(std::move(row));
  }
  return Json{{"dim", p.dim()}, {"vertices", std::move(vertices)}};
}

Polytope polytope_from_json(const Json& j) {
  std::vector<RationalVector> vertices;
  for (const auto& row : field(j, "vertices")) {
    RationalVector v;
    for (const auto& x : row) v.push_back(rational_from_json(x));
    vertices.push_back(std::move(v));
  }
  Polytope p(std::move(vertices));
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != p.dim()) {
    throw std::invalid_argument("declared dim does not match the vertices");
  }
  return p;
}

Json pattern_to_json(const PointPattern& p) { return Json{{"T", p.duration()}, {"timings", p.timings()}}; }

PointPattern pattern_from_json(const Json& j) {
  return PointPattern(field(j, "T").get<double>(), doubles(field(j, "timings")));
}

Json intervals_to_json(const IntervalVector& v) { return Json{{"lambda", v.rate()}, {"intervals", v.intervals()}}; }

IntervalVector intervals_from_json(const Json& j) {
  return IntervalVector(doubles(field(j, "intervals")), field(j, "lambda").get<double>());
}

Json signed_intervals_to_json(const SignedIntervalVector& v) {
  return Json{{"lambda", v.rate()}, {"values", v.values()}};
}

SignedIntervalVector signed_intervals_from_json(const Json& j) {
  const Json& values = j.contains("values") ? j.at("values") : field(j, "intervals");
  return SignedIntervalVector(doubles(values), field(j, "lambda").get<double>());
}

Json window_to_json(const WindowCodeword& w) {
  Json cells = Json::array();
  for (const auto& c : w.cells()) cells.push_back(Json::array({c.lo, c.hi}));
  return Json{{"T", w.duration()}, {"cells", std::move(cells)}};
}

WindowCodeword window_from_json(const Json& j) {
  std::vector<ClosedInterval> cells;
  for (const auto& c : field(j, "cells")) {
    if (!c.is_array() || c.size() != 2) throw std::invalid_argument("cells are [lo, hi] pairs");
    cells.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  return WindowCodeword(field(j, "T").get<double>(), std::move(cells));
}

Json causal_to_json(const CausalCodeword& c) { return Json{{"T", c.duration()}, {"timings", c.timings()}}; }

CausalCodeword causal_from_json(const Json& j) {
  return CausalCodeword(field(j, "T").get<double>(), doubles(field(j, "timings")));
}

Codeword codeword_from_json(MeasureKind kind, const Json& j) {
  switch (kind) {
    case MeasureKind::PointCovering: return window_from_json(j);
    case MeasureKind::Queueing: return causal_from_json(j);
    case MeasureKind::NormalizedL1:
    case MeasureKind::OneSidedL1: return j.is_array() ? doubles(j) : doubles(field(j, "xhat"));
  }
  throw std::invalid_argument("unknown measure kind");
}

Json distortion_to_json(const Distortion& d) {
  return d.is_finite() ? Json{{"value", d.value()}} : Json{{"value", "inf"}};
}

Json element_to_json(const SignedPermutation& g) {
  return Json{{"perm", g.permutation().images()}, {"signs", g.signs().signs()}};
}

SignedPermutation element_from_json(const Json& j) {
  return SignedPermutation(Permutation(field(j, "perm").get<std::vector<std::size_t>>()),
                           SignVector(field(j, "signs").get<std::vector<int>>()));
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [i, j] : g.edges()) edges.push_back(Json::array({i, j}));
  return Json{{"m", g.size()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edges are [i, j] pairs");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return Graph(field(j, "m").get<std::size_t>(), std::move(edges));
}

namespace {

Json state_to_json(const SourceSetState& s) {
  return Json{{"label", s.label}, {"order", s.symmetry.order()}, {"polytope", polytope_to_json(s.polytope)}};
}

}  // namespace

Json trace_to_json(const AlgorithmTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(Json{{"target", std::string(1, s.target)},
                         {"acting", s.acting_label},
                         {"acting_order", s.acting_order},
                         {"input", polytope_to_json(s.input)},
                         {"output", polytope_to_json(s.output)},
                         {"old_order", s.old_order},
                         {"new_order", s.new_order},
                         {"embeds", s.embeds ? Json(*s.embeds) : Json(nullptr)},
                         {"orders", Json::array({s.order_a, s.order_b})},
                         {"isomorphic", s.isomorphic}});
  }
  return Json{{"n", trace.final_a.polytope.dim()},
              {"terminated", trace.terminated},
              {"step_count", trace.step_count()},
              {"final_orders", Json::array({trace.final_a.symmetry.order(), trace.final_b.symmetry.order()})},
              {"steps", std::move(steps)},
              {"final", Json{{"a", state_to_json(trace.final_a)}, {"b", state_to_json(trace.final_b)}}}};
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "D,R_theory,R_measured,D_measured,method,n,lambda,seed\n";
  for (const auto& r : rows) {
    out += format_double(r.target) + "," + format_double(r.rate_theory) + "," + format_double(r.rate_measured) + "," +
           format_double(r.distortion_measured) + "," + r.method + "," + std::to_string(r.n) + "," +
           format_double(r.intensity) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

}  // namespace poisrd
