#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "poisrd/serialization.hpp"

namespace {

using poisrd::Json;

struct Globals {
  std::string output;
  std::uint64_t seed = poisrd::acceptance::Options{}.seed;
  std::size_t workers = 1;
};

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::size_t used = 0;
  const unsigned long long value = std::stoull(raw, &used);
  if (used != std::string(raw).size() || value == 0) {
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

std::size_t group_cap() { return env_cap("POISRD_GROUP_CAP", poisrd::kDefaultGroupCap); }
std::size_t iso_cap() { return env_cap("POISRD_ISO_CAP", poisrd::kDefaultIsoCap); }
std::size_t graph_cap() { return env_cap("POISRD_GRAPH_CAP", poisrd::kDefaultGraphCap); }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void emit(const Globals& g, std::string text) {
  if (text.empty() || text.back() != '\n') text += '\n';
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + g.output);
  out << text;
}

void emit(const Globals& g, const Json& j) { emit(g, j.dump(2)); }

std::vector<poisrd::Rational> parse_grid(const std::string& csv) {
  std::vector<poisrd::Rational> grid;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) grid.push_back(poisrd::parse_rational(item));
  if (grid.empty()) throw std::invalid_argument("empty D grid");
  return grid;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string kind = "homogeneous";
  double lambda = 1.0;
  double duration = 1.0;
  std::size_t n = 10;
};

void add_simulate(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<SimulateArgs>();
  auto* cmd = app.add_subcommand("simulate", "Sample a Poisson pattern or an interval vector");
  cmd->add_option("--kind", args->kind, "homogeneous | fixed-count | exponential | laplacian")
      ->check(CLI::IsMember({"homogeneous", "fixed-count", "exponential", "laplacian"}));
  cmd->add_option("--lambda", args->lambda, "Intensity")->check(CLI::PositiveNumber);
  cmd->add_option("--T", args->duration, "Window length")->check(CLI::PositiveNumber);
  cmd->add_option("--n", args->n, "Point count (all kinds but homogeneous)");
  cmd->callback([args, &g] {
    const auto& a = *args;
    if (a.kind == "homogeneous") return emit(g, poisrd::pattern_to_json(poisrd::sample_homogeneous(a.lambda, a.duration, g.seed)));
    if (a.kind == "fixed-count") return emit(g, poisrd::pattern_to_json(poisrd::sample_fixed_count(a.n, a.duration, g.seed)));
    if (a.kind == "exponential") return emit(g, poisrd::intervals_to_json(poisrd::sample_exponential(a.n, a.lambda, g.seed)));
    emit(g, poisrd::signed_intervals_to_json(poisrd::sample_laplacian(a.n, a.lambda, g.seed)));
  });
}

// --- distort ----------------------------------------------------------------

struct DistortArgs {
  std::string measure;
  std::string source;
  std::string codeword;
  bool volume = false;
  double max_distortion = 0.5;
  std::size_t n = 2;
  std::uint64_t samples = 1000000;
  double lambda = 1.0;
};

poisrd::Distortion evaluate(poisrd::MeasureKind kind, const Json& source, const poisrd::Codeword& codeword) {
  using poisrd::MeasureKind;
  switch (kind) {
    case MeasureKind::PointCovering:
      return poisrd::d_pc(poisrd::pattern_from_json(source), std::get<poisrd::WindowCodeword>(codeword));
    case MeasureKind::Queueing:
      return poisrd::d_q(poisrd::pattern_from_json(source), std::get<poisrd::CausalCodeword>(codeword));
    case MeasureKind::NormalizedL1:
      return poisrd::d_norm_l1(poisrd::signed_intervals_from_json(source), std::get<poisrd::RealVector>(codeword));
    case MeasureKind::OneSidedL1:
      return poisrd::d_onesided_l1(poisrd::intervals_from_json(source), std::get<poisrd::RealVector>(codeword));
  }
  throw std::invalid_argument("unknown measure");
}

void add_distort(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<DistortArgs>();
  auto* cmd = app.add_subcommand("distort", "Evaluate a distortion measure, optionally the distortion-set volume");
  cmd->add_option("--measure", args->measure, "point-covering | queueing | laplacian-l1 | onesided-l1")->required();
  cmd->add_option("--source", args->source, "Pattern or interval JSON file");
  cmd->add_option("--codeword", args->codeword, "Codeword JSON file")->required();
  cmd->add_flag("--volume", args->volume, "Monte Carlo volume of {x : d(x, codeword) <= D}");
  cmd->add_option("--D", args->max_distortion, "Distortion level for --volume")->check(CLI::PositiveNumber);
  cmd->add_option("--n", args->n, "Dimension for --volume")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", args->samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", args->lambda, "Rate for the l1 measures")->check(CLI::PositiveNumber);
  cmd->callback([args, &g] {
    const auto& a = *args;
    if (a.source.empty() && !a.volume) throw CLI::ValidationError("--source", "required unless --volume is given");
    const auto kind = poisrd::parse_measure_kind(a.measure);
    const auto codeword = poisrd::codeword_from_json(kind, read_json(a.codeword));
    Json out = Json::object();
    if (!a.source.empty()) out = poisrd::distortion_to_json(evaluate(kind, read_json(a.source), codeword));
    if (a.volume) {
      const auto v = poisrd::distortion_set_volume_mc(kind, codeword, a.max_distortion, a.n, a.samples, g.seed,
                                                      g.workers, a.lambda);
      out["volume"] = Json{{"estimate", v.estimate}, {"std_error", v.std_error}, {"hits", v.hits},
                           {"samples", v.samples}, {"ambient_volume", v.ambient_volume}};
    }
    emit(g, out);
  });
}

// --- rd-curve, ba, cover-bound -----------------------------------------------

struct CurveArgs {
  std::string measure = "point-covering";
  double lambda = 1.0;
  std::size_t n = 32;
  std::string grid = "1/8,1/4,1/2,1";
  std::size_t samples = 1000;
};

void add_rd_curve(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<CurveArgs>();
  auto* cmd = app.add_subcommand("rd-curve", "Empirical rate against log2(1/D) as CSV");
  cmd->add_option("--measure", args->measure, "point-covering | laplacian-l1 | onesided-l1");
  cmd->add_option("--lambda", args->lambda, "Intensity")->check(CLI::PositiveNumber);
  cmd->add_option("--n", args->n, "Block length")->check(CLI::PositiveNumber);
  cmd->add_option("--D-grid", args->grid, "Comma-separated distortions, rationals allowed");
  cmd->add_option("--samples", args->samples, "Blocks per grid point")->check(CLI::PositiveNumber);
  cmd->callback([args, &g] {
    const auto& a = *args;
    emit(g, poisrd::experiment_csv(poisrd::empirical_rd_experiment(poisrd::parse_measure_kind(a.measure), a.lambda,
                                                                   a.n, parse_grid(a.grid), a.samples, g.seed)));
  });
}

struct BaArgs {
  std::string source = "laplacian";
  double lambda = 1.0;
  std::optional<double> target;
  std::optional<double> slope;
  std::optional<double> extent;
  double step = 0.01;
  double tol = poisrd::BAOptions{}.tol;
  std::size_t max_iters = poisrd::BAOptions{}.max_iters;
};

void add_ba(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<BaArgs>();
  auto* cmd = app.add_subcommand("ba", "Blahut-Arimoto on a discretized Laplacian or exponential source");
  cmd->add_option("--source", args->source, "laplacian | exponential")
      ->check(CLI::IsMember({"laplacian", "exponential"}));
  cmd->add_option("--lambda", args->lambda, "Intensity")->check(CLI::PositiveNumber);
  auto* d = cmd->add_option("--D", args->target, "Target normalized distortion")->check(CLI::PositiveNumber);
  auto* s = cmd->add_option("--slope", args->slope, "Fixed slope beta")->check(CLI::PositiveNumber);
  d->excludes(s);
  cmd->add_option("--extent", args->extent, "Truncation in units of 1/lambda (default 8 or 12)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step", args->step, "Grid step in units of 1/lambda")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", args->tol, "Stop when successive rates differ by less (bits)")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", args->max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  cmd->callback([args, &g] {
    const auto& a = *args;
    if (!a.target && !a.slope) throw CLI::ValidationError("ba", "one of --D or --slope is required");
    const bool laplacian = a.source == "laplacian";
    const auto src = laplacian ? poisrd::discretize_laplacian(a.lambda, a.extent.value_or(8.0), a.step)
                               : poisrd::discretize_exponential(a.lambda, a.extent.value_or(12.0), a.step);
    const poisrd::BAOptions options{a.max_iters, a.tol};
    const auto r = a.target ? poisrd::rd_at_distortion(src, src.support, *a.target, options)
                            : poisrd::blahut_arimoto(src, src.support, *a.slope, options);
    emit(g, Json{{"R", r.point.rate},
                 {"D", r.point.distortion},
                 {"iters", r.iterations},
                 {"tol", r.tol},
                 {"slope", r.slope}});
  });
}

struct CoverArgs {
  std::string shape = "cube";
  std::size_t n = 1;
  std::string max_distortion = "1/2";
  bool codebook = false;
  std::size_t patterns = 10000;
};

void add_cover_bound(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<CoverArgs>();
  auto* cmd = app.add_subcommand("cover-bound", "Covering-count lower bound (1/D)^n");
  cmd->add_option("--shape", args->shape, "cube | order-simplex | corner-simplex");
  cmd->add_option("--n", args->n, "Dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--D", args->max_distortion, "Distortion in (0, 1], rationals allowed");
  cmd->add_flag("--codebook", args->codebook, "Also build and verify the cell codebook (n / D integral)");
  cmd->add_option("--patterns", args->patterns, "Random patterns for --codebook")->check(CLI::PositiveNumber);
  cmd->callback([args, &g] {
    const auto& a = *args;
    const auto d = poisrd::parse_rational(a.max_distortion);
    const auto bound = poisrd::covering_lower_bound(poisrd::parse_canonical_shape(a.shape), a.n, d);
    Json out{{"count", poisrd::rational_to_json(bound.count)}, {"rate_per_point", bound.rate_per_point}};
    if (a.codebook) {
      const auto r = poisrd::cell_codebook(a.n, d, a.patterns, g.seed);
      out["codebook"] = Json{{"size", r.codebook_size.str()},
                             {"rate_per_point", r.rate_per_point},
                             {"verified_cover", r.verified_cover},
                             {"patterns", r.patterns}};
    }
    emit(g, out);
  });
}

// --- group, polytope, symmetrize -----------------------------------------------

struct GroupArgs {
  std::string family = "O";
  std::size_t n = 2;
  bool order = false;
  bool semidirect = false;
  bool isomorphic = false;
  bool elements = false;
  std::string other = "O";
  std::optional<std::size_t> other_n;
};

void add_group(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<GroupArgs>();
  auto* cmd = app.add_subcommand("group", "Standard signed-permutation groups");
  cmd->add_option("--family", args->family, "trivial | S | H | O | C | D");
  cmd->add_option("--n", args->n, "Dimension")->check(CLI::PositiveNumber);
  auto* order = cmd->add_flag("--order", args->order, "Print the group order");
  auto* semi = cmd->add_flag("--verify-semidirect", args->semidirect, "Check O_n = H_n semidirect S_n");
  auto* iso = cmd->add_flag("--isomorphic", args->isomorphic, "Decide isomorphism with --other/--other-n");
  auto* elems = cmd->add_flag("--elements", args->elements, "List the elements");
  cmd->add_option("--other", args->other, "Family of the second group");
  cmd->add_option("--other-n", args->other_n, "Dimension of the second group (default --n)");
  for (auto* a : {order, semi, iso, elems}) {
    for (auto* b : {order, semi, iso, elems}) {
      if (a != b) a->excludes(b);
    }
  }
  cmd->callback([args, &g] {
    const auto& a = *args;
    const auto family = poisrd::parse_group_family(a.family);
    if (a.semidirect) {
      const auto r = poisrd::semidirect_verify(poisrd::standard_group(poisrd::GroupFamily::Hyperoctahedral, a.n, group_cap()),
                                               poisrd::standard_group(poisrd::GroupFamily::Reflection, a.n, group_cap()),
                                               poisrd::standard_group(poisrd::GroupFamily::Symmetric, a.n, group_cap()));
      return emit(g, Json{{"n", a.n},
                          {"normal", r.normal},
                          {"trivial_intersection", r.trivial_intersection},
                          {"product", r.product},
                          {"all", r.all}});
    }
    const auto group = poisrd::standard_group(family, a.n, group_cap());
    if (a.isomorphic) {
      const auto other = poisrd::standard_group(poisrd::parse_group_family(a.other), a.other_n.value_or(a.n), group_cap());
      return emit(g, Json(poisrd::isomorphic(group, other, iso_cap())));
    }
    if (a.elements) {
      Json list = Json::array();
      for (const auto& x : group.elements()) list.push_back(poisrd::element_to_json(x));
      return emit(g, list);
    }
    if (!a.order) throw CLI::ValidationError("group", "choose --order, --verify-semidirect, --isomorphic or --elements");
    emit(g, Json(group.order()));
  });
}

struct PolytopeArgs {
  std::string family = "cube";
  std::size_t n = 2;
  bool sym_order = false;
  bool aut_order = false;
  bool verify = false;
  bool graph = false;
  bool hamming = false;
};

void add_polytope(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<PolytopeArgs>();
  auto* cmd = app.add_subcommand("polytope", "Symmetry and automorphism groups of standard polytopes");
  cmd->add_option("--family", args->family, "cube | octahedron | simplex");
  cmd->add_option("--n", args->n, "Dimension")->check(CLI::PositiveNumber);
  std::vector<CLI::Option*> modes{cmd->add_flag("--sym-order", args->sym_order, "Order of the symmetry group"),
                                  cmd->add_flag("--aut-order", args->aut_order, "Order of the graph automorphism group"),
                                  cmd->add_flag("--verify", args->verify, "Report whether Sym = Aut"),
                                  cmd->add_flag("--graph", args->graph, "Emit the polytope graph"),
                                  cmd->add_flag("--hamming", args->hamming, "Cube path/Hamming/l2 distance check")};
  for (auto* a : modes) {
    for (auto* b : modes) {
      if (a != b) a->excludes(b);
    }
  }
  cmd->callback([args, &g] {
    const auto& a = *args;
    const auto family = poisrd::parse_polytope_family(a.family);
    if (a.sym_order) return emit(g, Json(poisrd::vertex_symmetry_group(poisrd::family_polytope(family, a.n), group_cap()).order()));
    if (a.aut_order) return emit(g, Json(poisrd::graph_automorphisms(poisrd::polytope_graph(family, a.n), graph_cap(), group_cap()).order()));
    if (a.graph) return emit(g, poisrd::graph_to_json(poisrd::polytope_graph(family, a.n)));
    if (a.hamming) return emit(g, Json{{"n", a.n}, {"pass", poisrd::hamming_l2_check(a.n)}});
    if (!a.verify) throw CLI::ValidationError("polytope", "choose --sym-order, --aut-order, --verify, --graph or --hamming");
    const auto r = poisrd::verify_sym_equals_aut(family, a.n, graph_cap());
    emit(g, Json{{"family", poisrd::to_string(family)},
                 {"n", a.n},
                 {"sym_order", r.sym_order},
                 {"aut_order", r.aut_order},
                 {"equal", r.isomorphic}});
  });
}

struct SymmetrizeArgs {
  std::size_t n = 2;
  std::size_t max_steps = 8;
  bool order_heuristic = false;
};

void add_symmetrize(CLI::App& app, const Globals& g) {
  auto args = std::make_shared<SymmetrizeArgs>();
  auto* cmd = app.add_subcommand("symmetrize", "Alternating symmetrization of the order simplex and the simplex");
  cmd->add_option("--n", args->n, "Dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--max-steps", args->max_steps, "Expansion cap")->check(CLI::PositiveNumber);
  cmd->add_flag("--order-heuristic", args->order_heuristic, "Match groups by order past the isomorphism cap");
  cmd->callback([args, &g] {
    const poisrd::SymmetrizeOptions options{iso_cap(), args->order_heuristic};
    emit(g, poisrd::trace_to_json(poisrd::run_standard(args->n, args->max_steps, options)));
  });
}

void add_verify_all(CLI::App& app, const Globals& g, int& status) {
  auto* cmd = app.add_subcommand("verify-all", "Run every acceptance criterion");
  cmd->callback([&g, &status] {
    std::string report;
    int failed = 0;
    for (const auto& o : poisrd::acceptance::run_all({g.seed, g.workers})) {
      report += poisrd::acceptance::format_line(o) + "\n";
      failed += o.passed ? 0 : 1;
    }
    report += std::to_string(failed) + " criteria failed";
    emit(g, report);
    status = failed == 0 ? 0 : 1;
  });
}

void report_error(const char* kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson rate-distortion geometry and symmetry toolkit", "poisrd"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  int status = 0;
  app.add_option("-o,--output", globals.output, "Write the result here instead of standard output");
  app.add_option("--seed", globals.seed, "Base seed for every random stream");
  app.add_option("--workers", globals.workers, "Monte Carlo threads")->check(CLI::PositiveNumber);

  add_simulate(app, globals);
  add_distort(app, globals);
  add_rd_curve(app, globals);
  add_ba(app, globals);
  add_cover_bound(app, globals);
  add_group(app, globals);
  add_polytope(app, globals);
  add_symmetrize(app, globals);
  add_verify_all(app, globals, status);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    report_error("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return status;
}
