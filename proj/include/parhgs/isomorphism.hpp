#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "parhgs/perm_group.hpp"

namespace parhgs {

/// An isomorphism phi: G -> M given by the images of G's generators, in the
/// order of G.generators().
struct PairWitness {
  std::vector<Permutation> mapping;
  /// For trivial-core pairs: a relabelling sigma of the left cosets, numbered
  /// as in FiniteGroup::left_cosets, with sigma(0) = 0 and
  /// sigma * act(g) * sigma^-1 = act(phi(g)).
  std::optional<Permutation> conjugator;
  bool verified = false;
};

inline constexpr std::uint64_t kIsomorphismBound = 10'000;

std::optional<PairWitness> find_isomorphism(const PermGroup& g, const PermGroup& m,
                                            std::uint64_t bound = kIsomorphismBound);

/// Is there an isomorphism G -> M carrying G_sub onto M_sub?
std::optional<PairWitness> pair_isomorphic(const PermGroup& g, const PermGroup& g_sub,
                                           const PermGroup& m, const PermGroup& m_sub,
                                           std::uint64_t bound = kIsomorphismBound);

/// Recomputes a witness: homomorphism, bijectivity and phi(G_sub) = M_sub.
bool verify_witness(const PermGroup& g, const PermGroup& g_sub, const PermGroup& m,
                    const PermGroup& m_sub, const PairWitness& w);

struct QuotientPair {
  PermGroup j;
  PermGroup j_sub;
};

/// (G/C, H/C) for C = Core_G(H), realized as the action on G/H with the
/// identity coset at point 0.
QuotientPair permutation_pair_of_quotient(const PermGroup& g, const PermGroup& h);

/// Precomputed data of a transitive group M for repeated permutation
/// isomorphism tests against it.
class PermIsoTarget {
 public:
  explicit PermIsoTarget(const PermGroup& m);
  const PermGroup& group() const noexcept { return m_; }
  std::uint64_t order() const noexcept { return m_.order(); }
  const std::map<std::vector<std::size_t>, std::uint32_t>& cycle_histogram() const noexcept {
    return hist_;
  }

  /// sigma in Sym(n) with sigma(0) = 0 and sigma J sigma^-1 = M, for a
  /// transitive J of the same degree, or nullopt.
  std::optional<Permutation> conjugator_from(const PermIsoTarget& j) const;

 private:
  friend class PermIsoSearch;
  PermGroup m_;
  std::vector<Permutation> elements_;
  std::map<std::vector<std::size_t>, std::uint32_t> hist_;
  // (cycle type, length of the cycle through 0) -> element indices
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::vector<std::uint32_t>> by_shape_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
  std::vector<Permutation> stab_gens_;   // generators of Stab_M(0)
  std::vector<std::uint32_t> search_gens_;  // element indices generating M
};

/// Permutation isomorphism of transitive groups, fixing point 0.
std::optional<Permutation> permutation_isomorphism(const PermIsoTarget& j, const PermIsoTarget& m);

}  // namespace parhgs
