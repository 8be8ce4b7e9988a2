#include "poisrd/groups.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>

namespace poisrd {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("images do not form a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  return Permutation(std::move(id));
}

Permutation function_compose(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw std::invalid_argument("permutation sizes differ");
  std::vector<std::size_t> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[h[i]];
  return Permutation(std::move(out));
}

Permutation inverse(const Permutation& g) {
  std::vector<std::size_t> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = i;
  return Permutation(std::move(out));
}

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("sign entries must be +1 or -1");
  }
}

SignVector SignVector::identity(std::size_t n) { return SignVector(std::vector<int>(n, 1)); }

SignedPermutation::SignedPermutation(const Permutation& perm, const SignVector& signs) {
  if (perm.size() != signs.size()) throw std::invalid_argument("permutation and sign vector sizes differ");
  signed_images_.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) signed_images_[i] = signs[i] * static_cast<int>(perm[i] + 1);
}

SignedPermutation::SignedPermutation(const Permutation& perm)
    : SignedPermutation(perm, SignVector::identity(perm.size())) {}

SignedPermutation::SignedPermutation(const SignVector& signs)
    : SignedPermutation(Permutation::identity(signs.size()), signs) {}

SignedPermutation SignedPermutation::identity(std::size_t n) { return SignedPermutation(Permutation::identity(n)); }

std::size_t SignedPermutation::perm(std::size_t i) const {
  return static_cast<std::size_t>(std::abs(signed_images_[i]) - 1);
}

Permutation SignedPermutation::permutation() const {
  std::vector<std::size_t> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = perm(i);
  return Permutation(std::move(p));
}

SignVector SignedPermutation::signs() const {
  std::vector<int> s(dim());
  for (std::size_t i = 0; i < dim(); ++i) s[i] = sign(i);
  return SignVector(std::move(s));
}

bool SignedPermutation::is_identity() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (signed_images_[i] != static_cast<int>(i + 1)) return false;
  }
  return true;
}

RationalVector SignedPermutation::apply(const RationalVector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("vector dimension differs from the group element");
  RationalVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = sign(i) > 0 ? x[perm(i)] : Rational(-x[perm(i)]);
  return out;
}

RationalMatrix action_matrix(const SignedPermutation& g) {
  RationalMatrix m(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) m(i, g.perm(i)) = g.sign(i);
  return m;
}

RationalMatrix action_matrix(const Permutation& g) { return action_matrix(SignedPermutation(g)); }
RationalMatrix action_matrix(const SignVector& g) { return action_matrix(SignedPermutation(g)); }

SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("group elements of different dimensions");
  // (A_g A_h x)_i = s^g_i (A_h x)_{pi_g(i)} = s^g_i s^h_{pi_g(i)} x_{pi_h(pi_g(i))}.
  SignedPermutation out;
  out.signed_images_.resize(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const std::size_t j = g.perm(i);
    out.signed_images_[i] = g.sign(i) * h.signed_images_[j];
  }
  return out;
}

SignedPermutation inverse(const SignedPermutation& g) {
  // A^-1 = A^T: row pi(j) carries s_j in column j.
  SignedPermutation out;
  out.signed_images_.resize(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) out.signed_images_[g.perm(j)] = g.sign(j) * static_cast<int>(j + 1);
  return out;
}

std::vector<RationalVector> act_on_set(const SignedPermutation& g, std::span<const RationalVector> vertices) {
  std::vector<RationalVector> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(g.apply(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FiniteGroup::FiniteGroup(std::vector<SignedPermutation> elements, Trusted) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  dim_ = elements_.front().dim();
}

FiniteGroup::FiniteGroup(std::vector<SignedPermutation> elements) {
  if (elements.empty()) throw std::invalid_argument("a group has at least one element");
  const std::size_t n = elements.front().dim();
  if (n == 0) throw std::invalid_argument("group elements need dimension >= 1");
  for (const auto& g : elements) {
    if (g.dim() != n) throw std::invalid_argument("group elements of different dimensions");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  elements_ = std::move(elements);
  dim_ = n;
  if (!contains(SignedPermutation::identity(n))) throw std::invalid_argument("set lacks the identity");
  for (const auto& a : elements_) {
    if (!contains(inverse(a))) throw std::invalid_argument("set is not closed under inverses");
    for (const auto& b : elements_) {
      if (!contains(compose(a, b))) throw std::invalid_argument("set is not closed under composition");
    }
  }
}

FiniteGroup FiniteGroup::assume_closed(std::vector<SignedPermutation> elements) {
  if (elements.empty()) throw std::invalid_argument("a group has at least one element");
  FiniteGroup g(std::move(elements), Trusted{});
  g.elements_.erase(std::unique(g.elements_.begin(), g.elements_.end()), g.elements_.end());
  return g;
}

std::optional<std::size_t> FiniteGroup::index_of(const SignedPermutation& g) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

FiniteGroup generate(std::span<const SignedPermutation> generators, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("generate needs at least one generator");
  const std::size_t n = generators.front().dim();
  if (n == 0) throw std::invalid_argument("group elements need dimension >= 1");
  for (const auto& g : generators) {
    if (g.dim() != n) throw std::invalid_argument("generators of different dimensions");
  }
  std::set<SignedPermutation> seen{SignedPermutation::identity(n)};
  std::deque<SignedPermutation> queue{SignedPermutation::identity(n)};
  while (!queue.empty()) {
    const SignedPermutation x = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      SignedPermutation y = compose(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          throw CapExceededError("group closure exceeds the cap of " + std::to_string(cap) + " elements");
        }
        queue.push_back(std::move(y));
      }
    }
  }
  return FiniteGroup(std::vector<SignedPermutation>(seen.begin(), seen.end()), FiniteGroup::Trusted{});
}

GroupFamily parse_group_family(std::string_view tag) {
  if (tag == "trivial" || tag == "1") return GroupFamily::Trivial;
  if (tag == "S" || tag == "symmetric") return GroupFamily::Symmetric;
  if (tag == "H" || tag == "reflection") return GroupFamily::Reflection;
  if (tag == "O" || tag == "hyperoctahedral") return GroupFamily::Hyperoctahedral;
  if (tag == "C" || tag == "cyclic") return GroupFamily::Cyclic;
  if (tag == "D" || tag == "dihedral") return GroupFamily::Dihedral;
  throw std::invalid_argument("unknown group family '" + std::string(tag) + "'");
}

std::string_view to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::Trivial: return "trivial";
    case GroupFamily::Symmetric: return "S";
    case GroupFamily::Reflection: return "H";
    case GroupFamily::Hyperoctahedral: return "O";
    case GroupFamily::Cyclic: return "C";
    case GroupFamily::Dihedral: return "D";
  }
  return "unknown";
}

std::vector<SignedPermutation> standard_generators(GroupFamily family, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  std::vector<SignedPermutation> gens;
  if (family == GroupFamily::Cyclic || family == GroupFamily::Dihedral) {
    if (family == GroupFamily::Dihedral && n < 3) throw std::invalid_argument("dihedral family needs n >= 3");
    std::vector<std::size_t> rotation(n), reflection(n);
    for (std::size_t i = 0; i < n; ++i) {
      rotation[i] = (i + 1) % n;
      reflection[i] = (n - i) % n;
    }
    gens.emplace_back(Permutation(std::move(rotation)));
    if (family == GroupFamily::Dihedral) gens.emplace_back(Permutation(std::move(reflection)));
    return gens;
  }
  const bool perms = family == GroupFamily::Symmetric || family == GroupFamily::Hyperoctahedral;
  const bool flips = family == GroupFamily::Reflection || family == GroupFamily::Hyperoctahedral;
  if (perms) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto images = Permutation::identity(n).images();
      std::swap(images[i], images[i + 1]);
      gens.emplace_back(Permutation(std::move(images)));
    }
  }
  if (flips) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> s(n, 1);
      s[i] = -1;
      gens.emplace_back(SignVector(std::move(s)));
    }
  }
  if (gens.empty()) gens.push_back(SignedPermutation::identity(n));
  return gens;
}

FiniteGroup standard_group(GroupFamily family, std::size_t n, std::size_t cap) {
  return generate(standard_generators(family, n), cap);
}

bool is_subgroup(const FiniteGroup& h, const FiniteGroup& g) {
  if (h.dim() != g.dim() || h.order() > g.order()) return false;
  return std::all_of(h.elements().begin(), h.elements().end(), [&](const auto& x) { return g.contains(x); });
}

bool is_normal(const FiniteGroup& h, const FiniteGroup& g) {
  if (!is_subgroup(h, g)) return false;
  for (const auto& x : g.elements()) {
    const SignedPermutation x_inv = inverse(x);
    for (const auto& y : h.elements()) {
      if (!h.contains(compose(compose(x, y), x_inv))) return false;
    }
  }
  return true;
}

SemidirectReport semidirect_verify(const FiniteGroup& g, const FiniteGroup& h1, const FiniteGroup& h2) {
  if (!is_subgroup(h1, g) || !is_subgroup(h2, g)) {
    throw std::invalid_argument("semidirect check needs two subgroups of G");
  }
  SemidirectReport r{};
  r.normal = is_normal(h1, g);
  std::size_t common = 0;
  for (const auto& x : h1.elements()) common += h2.contains(x) ? 1 : 0;
  r.trivial_intersection = common == 1;
  std::set<SignedPermutation> products;
  for (const auto& a : h1.elements()) {
    for (const auto& b : h2.elements()) products.insert(compose(a, b));
  }
  r.product = products.size() == g.order() && std::equal(products.begin(), products.end(), g.elements().begin());
  r.all = r.normal && r.trivial_intersection && r.product;
  return r;
}

namespace {

/// Multiplication table over the sorted element indices of a group.
struct CayleyTable {
  std::size_t size = 0;
  std::size_t identity = 0;
  std::vector<std::size_t> product;  // product[a * size + b] = index of a * b
  std::vector<std::size_t> order;

  explicit CayleyTable(const FiniteGroup& g) : size(g.order()), product(size * size), order(size, 0) {
    identity = *g.index_of(SignedPermutation::identity(g.dim()));
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) product[a * size + b] = *g.index_of(compose(g.element(a), g.element(b)));
    }
    for (std::size_t a = 0; a < size; ++a) {
      std::size_t k = 1;
      for (std::size_t x = a; x != identity; x = mul(x, a)) ++k;
      order[a] = k;
    }
  }

  std::size_t mul(std::size_t a, std::size_t b) const { return product[a * size + b]; }
};

/// Generating set chosen greedily, highest element order first.
std::vector<std::size_t> small_generating_set(const CayleyTable& t) {
  std::vector<std::size_t> by_order(t.size);
  for (std::size_t i = 0; i < t.size; ++i) by_order[i] = i;
  std::stable_sort(by_order.begin(), by_order.end(), [&](std::size_t a, std::size_t b) { return t.order[a] > t.order[b]; });
  std::vector<bool> reached(t.size, false);
  reached[t.identity] = true;
  std::size_t count = 1;
  std::vector<std::size_t> gens;
  for (std::size_t x : by_order) {
    if (count == t.size) break;
    if (reached[x]) continue;
    gens.push_back(x);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < t.size; ++i) {
      if (reached[i]) frontier.push_back(i);
    }
    while (!frontier.empty()) {
      const std::size_t y = frontier.back();
      frontier.pop_back();
      for (std::size_t g : gens) {
        const std::size_t z = t.mul(y, g);
        if (!reached[z]) {
          reached[z] = true;
          ++count;
          frontier.push_back(z);
        }
      }
    }
  }
  return gens;
}

std::optional<GroupMorphism> search_morphism(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap,
                                             bool bijective) {
  if (g.order() > cap || h.order() > cap) {
    throw CapExceededError("isomorphism search is capped at order " + std::to_string(cap));
  }
  if (bijective ? g.order() != h.order() : h.order() % g.order() != 0) return std::nullopt;
  const CayleyTable tg(g);
  const CayleyTable th(h);
  if (bijective) {
    auto a = tg.order;
    auto b = th.order;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  const std::vector<std::size_t> gens = small_generating_set(tg);
  std::vector<std::size_t> images(gens.size());
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> phi(tg.size, kUnset);

  // Extends phi over <gens[0..k]> along Cayley-graph edges; false on any
  // conflict or loss of injectivity.
  auto consistent = [&](std::size_t k) {
    std::fill(phi.begin(), phi.end(), kUnset);
    std::vector<bool> used(th.size, false);
    phi[tg.identity] = th.identity;
    used[th.identity] = true;
    std::vector<std::size_t> stack{tg.identity};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i <= k; ++i) {
        const std::size_t y = tg.mul(x, gens[i]);
        const std::size_t img = th.mul(phi[x], images[i]);
        if (phi[y] == kUnset) {
          if (used[img]) return false;
          used[img] = true;
          phi[y] = img;
          stack.push_back(y);
        } else if (phi[y] != img) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t k) {
    if (k == gens.size()) return true;
    for (std::size_t c = 0; c < th.size; ++c) {
      if (th.order[c] != tg.order[gens[k]]) continue;
      images[k] = c;
      if (consistent(k) && assign(k + 1)) return true;
    }
    return false;
  };
  if (gens.empty()) {  // trivial G
    return GroupMorphism{std::vector<std::size_t>(1, th.identity)};
  }
  if (!assign(0)) return std::nullopt;
  consistent(gens.size() - 1);
  return GroupMorphism{phi};
}

}  // namespace

std::optional<GroupMorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap) {
  return search_morphism(g, h, cap, true);
}

bool isomorphic(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap) {
  if (g.order() != h.order()) return false;
  return find_isomorphism(g, h, cap).has_value();
}

std::optional<GroupMorphism> find_monomorphism(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap) {
  return search_morphism(g, h, cap, false);
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMorphism& phi) {
  if (phi.images.size() != g.order()) return false;
  for (std::size_t x : phi.images) {
    if (x >= h.order()) return false;
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      const std::size_t ab = *g.index_of(compose(g.element(a), g.element(b)));
      if (h.element(phi.images[ab]) != compose(h.element(phi.images[a]), h.element(phi.images[b]))) return false;
    }
  }
  return true;
}

std::vector<std::size_t> order_profile(const FiniteGroup& g) {
  std::vector<std::size_t> orders;
  orders.reserve(g.order());
  for (const auto& x : g.elements()) {
    std::size_t k = 1;
    for (SignedPermutation y = x; !y.is_identity(); y = compose(y, x)) ++k;
    orders.push_back(k);
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace poisrd
