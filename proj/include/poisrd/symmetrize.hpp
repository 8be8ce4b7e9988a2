#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poisrd/geometry.hpp"
#include "poisrd/groups.hpp"
#include "poisrd/polytope_symmetry.hpp"

namespace poisrd {

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SymmetrizeOptions {
  std::size_t iso_cap = kDefaultIsoCap;
  /// Past the isomorphism cap, accept equal orders as a match instead of failing.
  bool order_heuristic = false;
};

/// Standard signed-permutation realization of a recognized symmetry group.
struct Realization {
  GroupFamily family;
  FiniteGroup group;
};

/// Matches `g` against the trivial group, S_n, H_n and O_n (in that order)
/// and returns the first isomorphic one. Throws ClassificationError otherwise.
Realization classify_and_realize(const VertexPermutationGroup& g, std::size_t n, const SymmetrizeOptions& options = {});

/// A source set, represented by the vertex set of its closure, with its vertex
/// symmetry group. The matrix realization is computed only when the group acts.
struct SourceSetState {
  Polytope polytope;
  VertexPermutationGroup symmetry;
  std::string label;
};

SourceSetState make_state(Polytope polytope, std::string label);

/// Extreme points of the union of g V over g in `acting`.
SourceSetState expand(const SourceSetState& state, const Realization& acting);

struct TraceStep {
  char target;  ///< 'a' or 'b': the set that was enlarged
  std::string acting_label;
  std::size_t acting_order;
  Polytope input;
  Polytope output;
  std::size_t old_order;
  std::size_t new_order;
  std::optional<bool> embeds;  ///< old group maps injectively into the new one (when within the cap)
  std::size_t order_a;
  std::size_t order_b;
  bool isomorphic;
};

struct AlgorithmTrace {
  std::vector<TraceStep> steps;
  bool terminated = false;
  SourceSetState final_a;
  SourceSetState final_b;

  std::size_t step_count() const { return steps.size(); }
};

/// Alternately enlarges a by the realized group of b and b by that of a,
/// stopping once the two symmetry groups are isomorphic. Before any
/// expansion, it stops only if the groups are isomorphic and each centered set
/// is already invariant under the other's realized group.
AlgorithmTrace run(const SourceSetState& a, const SourceSetState& b, std::size_t max_steps,
                   const SymmetrizeOptions& options = {});

/// The standard pair: the order simplex against the unit simplex.
AlgorithmTrace run_standard(std::size_t n, std::size_t max_steps, const SymmetrizeOptions& options = {});

}  // namespace poisrd
