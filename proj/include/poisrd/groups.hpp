#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "poisrd/exact_linalg.hpp"
#include "poisrd/geometry.hpp"

namespace poisrd {

inline constexpr std::size_t kDefaultGroupCap = 100000;
inline constexpr std::size_t kDefaultIsoCap = 400;

/// Raised when an enumeration would exceed its configured size cap.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bijection on {0, ..., n-1}; images()[i] is sigma(i).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// Function composition (g o h)(i) = g(h(i)).
Permutation function_compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);

/// Element of H_n = {+1, -1}^n.
class SignVector {
 public:
  explicit SignVector(std::vector<int> signs);
  static SignVector identity(std::size_t n);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& signs() const { return signs_; }

  friend auto operator<=>(const SignVector&, const SignVector&) = default;

 private:
  std::vector<int> signs_;
};

/// Element o of O_n, stored in the signed form o(i) = s_i (pi(i) + 1). It acts by
/// (o x)_i = s_i x_{pi(i)}, i.e. [A_o]_{ij} = s_i I{j = pi(i)}.
class SignedPermutation {
 public:
  SignedPermutation(const Permutation& perm, const SignVector& signs);
  /// Canonical embeddings S_n -> O_n (all signs +1) and H_n -> O_n (identity permutation).
  explicit SignedPermutation(const Permutation& perm);
  explicit SignedPermutation(const SignVector& signs);
  static SignedPermutation identity(std::size_t n);

  std::size_t dim() const { return signed_images_.size(); }
  std::size_t perm(std::size_t i) const;
  int sign(std::size_t i) const { return signed_images_[i] > 0 ? 1 : -1; }
  Permutation permutation() const;
  SignVector signs() const;
  bool is_identity() const;

  RationalVector apply(const RationalVector& x) const;

  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  SignedPermutation() = default;
  friend SignedPermutation compose(const SignedPermutation&, const SignedPermutation&);
  friend SignedPermutation inverse(const SignedPermutation&);
  std::vector<int> signed_images_;
};

RationalMatrix action_matrix(const SignedPermutation& g);
RationalMatrix action_matrix(const Permutation& g);
RationalMatrix action_matrix(const SignVector& g);

/// The element whose matrix is action_matrix(g) * action_matrix(h).
SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h);
SignedPermutation inverse(const SignedPermutation& g);

/// {g v : v in V}, sorted and deduplicated. Throws on a dimension mismatch.
std::vector<RationalVector> act_on_set(const SignedPermutation& g, std::span<const RationalVector> vertices);

/// Finite group of signed permutations, stored as a sorted element list.
class FiniteGroup {
 public:
  /// Validates identity, closure and inverses; throws std::invalid_argument.
  explicit FiniteGroup(std::vector<SignedPermutation> elements);

  /// Skips the O(|G|^2) closure check; for complete enumerations of a group
  /// already known to be closed (such as all symmetries of a finite structure).
  static FiniteGroup assume_closed(std::vector<SignedPermutation> elements);

  std::size_t dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<SignedPermutation>& elements() const { return elements_; }
  const SignedPermutation& element(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const SignedPermutation& g) const;
  bool contains(const SignedPermutation& g) const { return index_of(g).has_value(); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.elements_ == b.elements_; }

 private:
  struct Trusted {};
  FiniteGroup(std::vector<SignedPermutation> elements, Trusted);
  friend FiniteGroup generate(std::span<const SignedPermutation>, std::size_t);

  std::size_t dim_ = 0;
  std::vector<SignedPermutation> elements_;
};

/// Breadth-first closure of the generators. Throws CapExceededError past `cap`.
FiniteGroup generate(std::span<const SignedPermutation> generators, std::size_t cap = kDefaultGroupCap);

/// Cyclic is the n-cycle on the coordinates (order n); Dihedral is the symmetry
/// group of a regular n-gon acting on its n vertex indices (order 2n, n >= 3).
enum class GroupFamily { Trivial, Symmetric, Reflection, Hyperoctahedral, Cyclic, Dihedral };

GroupFamily parse_group_family(std::string_view tag);
std::string_view to_string(GroupFamily family);

/// Generators of the canonical realization in O_n: adjacent transpositions for
/// S_n, single sign flips for H_n, both for O_n, the identity for the trivial group.
std::vector<SignedPermutation> standard_generators(GroupFamily family, std::size_t n);
FiniteGroup standard_group(GroupFamily family, std::size_t n, std::size_t cap = kDefaultGroupCap);

bool is_subgroup(const FiniteGroup& h, const FiniteGroup& g);
/// g h g^-1 in H for every g in G and h in H.
bool is_normal(const FiniteGroup& h, const FiniteGroup& g);

struct SemidirectReport {
  bool normal;
  bool trivial_intersection;
  bool product;
  bool all;
};

/// The internal semidirect product conditions for G = H1 x| H2 (H1 normal).
/// Throws std::invalid_argument unless both are subgroups of G.
SemidirectReport semidirect_verify(const FiniteGroup& g, const FiniteGroup& h1, const FiniteGroup& h2);

/// images[i] is the index in the target of phi(source.element(i)).
struct GroupMorphism {
  std::vector<std::size_t> images;
};

/// A bijective homomorphism, or nullopt. Throws CapExceededError if either
/// order exceeds `cap`.
std::optional<GroupMorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                              std::size_t cap = kDefaultIsoCap);
bool isomorphic(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap = kDefaultIsoCap);

/// An injective homomorphism G -> H, or nullopt.
std::optional<GroupMorphism> find_monomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                               std::size_t cap = kDefaultIsoCap);

/// True iff `phi` is a homomorphism G -> H (checked on all pairs).
bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMorphism& phi);

/// Sorted multiset of element orders.
std::vector<std::size_t> order_profile(const FiniteGroup& g);

}  // namespace poisrd
