#include "poisrd/symmetrize.hpp"

#include <algorithm>
#include <string>

namespace poisrd {

namespace {

bool groups_match(const FiniteGroup& x, const FiniteGroup& y, const SymmetrizeOptions& options) {
  if (x.order() != y.order()) return false;
  if (x.order() > options.iso_cap && options.order_heuristic) return true;
  return isomorphic(x, y, options.iso_cap);
}

bool invariant_under(const Polytope& p, const FiniteGroup& g) {
  const Polytope c = center(p);
  if (c.dim() != g.dim()) return false;
  for (const auto& x : g.elements()) {
    if (act_on_set(x, c.vertices()) != c.vertices()) return false;
  }
  return true;
}

std::string family_label(GroupFamily family, std::size_t n) {
  return family == GroupFamily::Trivial ? "trivial" : std::string(to_string(family)) + "_" + std::to_string(n);
}

}  // namespace

Realization classify_and_realize(const VertexPermutationGroup& g, std::size_t n, const SymmetrizeOptions& options) {
  for (GroupFamily family :
       {GroupFamily::Trivial, GroupFamily::Symmetric, GroupFamily::Reflection, GroupFamily::Hyperoctahedral}) {
    FiniteGroup candidate = standard_group(family, n);
    if (groups_match(g, candidate, options)) return {family, std::move(candidate)};
  }
  throw ClassificationError("symmetry group of order " + std::to_string(g.order()) +
                            " is not isomorphic to the trivial group, S_n, H_n or O_n for n = " + std::to_string(n));
}

SourceSetState make_state(Polytope polytope, std::string label) {
  VertexPermutationGroup sym = vertex_symmetry_group(polytope);
  return {std::move(polytope), std::move(sym), std::move(label)};
}

SourceSetState expand(const SourceSetState& state, const Realization& acting) {
  if (state.polytope.dim() != acting.group.dim()) throw std::invalid_argument("group and set dimensions differ");
  std::vector<RationalVector> orbit;
  for (const auto& g : acting.group.elements()) {
    auto image = act_on_set(g, state.polytope.vertices());
    orbit.insert(orbit.end(), image.begin(), image.end());
  }
  return make_state(Polytope::hull_of(std::move(orbit)),
                    family_label(acting.family, acting.group.dim()) + "(" + state.label + ")");
}

AlgorithmTrace run(const SourceSetState& a, const SourceSetState& b, std::size_t max_steps,
                   const SymmetrizeOptions& options) {
  if (max_steps == 0) throw std::invalid_argument("max-steps must be at least 1");
  if (a.polytope.dim() != b.polytope.dim()) throw std::invalid_argument("source sets of different dimensions");
  const std::size_t n = a.polytope.dim();
  AlgorithmTrace trace{{}, false, a, b};

  if (groups_match(a.symmetry, b.symmetry, options)) {
    const Realization ra = classify_and_realize(a.symmetry, n, options);
    const Realization rb = classify_and_realize(b.symmetry, n, options);
    if (invariant_under(a.polytope, rb.group) && invariant_under(b.polytope, ra.group)) {
      trace.terminated = true;
      return trace;
    }
  }

  for (std::size_t step = 0; step < max_steps; ++step) {
    const bool grow_a = step % 2 == 0;
    SourceSetState& target = grow_a ? trace.final_a : trace.final_b;
    const SourceSetState& other = grow_a ? trace.final_b : trace.final_a;
    const Realization acting = classify_and_realize(other.symmetry, n, options);
    SourceSetState next = expand(target, acting);

    TraceStep record{grow_a ? 'a' : 'b',
                     family_label(acting.family, n),
                     acting.group.order(),
                     target.polytope,
                     next.polytope,
                     target.symmetry.order(),
                     next.symmetry.order(),
                     std::nullopt,
                     0,
                     0,
                     false};
    if (next.symmetry.order() <= options.iso_cap) {
      record.embeds = find_monomorphism(target.symmetry, next.symmetry, options.iso_cap).has_value();
    }
    target = std::move(next);
    record.order_a = trace.final_a.symmetry.order();
    record.order_b = trace.final_b.symmetry.order();
    record.isomorphic = groups_match(trace.final_a.symmetry, trace.final_b.symmetry, options);
    trace.steps.push_back(std::move(record));
    if (trace.steps.back().isomorphic) {
      trace.terminated = true;
      break;
    }
  }
  return trace;
}

AlgorithmTrace run_standard(std::size_t n, std::size_t max_steps, const SymmetrizeOptions& options) {
  return run(make_state(order_simplex(n), "order-simplex"), make_state(standard_simplex(n, Rational(1)), "simplex"),
             max_steps, options);
}

}  // namespace poisrd
