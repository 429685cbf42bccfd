#pragma once

#include <functional>
#include <vector>

#include "parhgs/grouplib.hpp"
#include "parhgs/perm_group.hpp"

namespace parhgs {

/// Aut(N) acting on the elements of N (each element fixes point 0).
struct AutomorphismGroup {
  PermGroup underlying;
};

/// Hol(N) = lambda(N) Aut(N) acting on the n elements of N.
struct Holomorph {
  PermGroup group;
  PermGroup lambda_n;
  PermGroup aut_n;
  AbstractGroup n_ref;
};

inline constexpr std::uint32_t kAutomorphismBound = 256;

AutomorphismGroup automorphism_group(const AbstractGroup& n,
                                     std::uint32_t bound = kAutomorphismBound);
Holomorph holomorph(const AbstractGroup& n, std::uint32_t bound = kAutomorphismBound);

/// Generators of Aut(G) for an enumerated group, as element maps. Together
/// with the inner automorphisms they generate Aut(G); `include_inner` adds
/// conjugation by the generators of G.
std::vector<std::vector<Elt>> automorphism_generators(const FiniteGroup& g, bool include_inner);

struct HallDecomposition {
  PermGroup u;  // G intersected with the Hall pi(n)-subgroup Q of Hol(N)
  PermGroup v;  // complement of order coprime to n
};

/// The Hall pi(n)-subgroup Q = lambda(N) x| (<theta> x| Phi1) of Hol(N).
PermGroup hall_subgroup(const AbstractGroup& n);
/// G = U x| V for G <= Hol(N), |N| squarefree.
HallDecomposition hall_decomposition(const AbstractGroup& n, const PermGroup& g);

/// The automorphism of N sending its generators() to `images`, as a
/// permutation of the elements; throws PreconditionError if none exists.
Permutation automorphism_from_images(const AbstractGroup& n, const std::vector<Elt>& gens,
                                     const std::vector<Elt>& images);

/// Hol(N) -> Hol(N/M) for a characteristic subgroup M of N (given as a
/// subgroup of lambda(N)). Points of N/M are the left cosets of M numbered
/// as in `blocks`.
struct HolomorphProjection {
  std::vector<std::uint32_t> block_of;  // element of N -> coset of M
  std::size_t quotient_degree = 1;
  AbstractGroup quotient;               // N/M with element i the coset i
  Permutation operator()(const Permutation& x) const;
  PermGroup image(const PermGroup& g) const;
};
HolomorphProjection holomorph_projection(const AbstractGroup& n, const PermGroup& m_char);

}  // namespace parhgs
