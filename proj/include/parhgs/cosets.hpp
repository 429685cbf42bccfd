#pragma once

#include <optional>

#include "parhgs/perm_group.hpp"

namespace parhgs {

struct CosetActionResult {
  PermGroup image;
  PermGroup kernel;
  Point point_of_identity_coset = 0;
};

/// Core_G(H), the kernel of G acting on the left cosets of H.
PermGroup normal_core(const PermGroup& g, const PermGroup& h);

/// Action of G on G/H by left multiplication. Cosets are numbered in order of
/// discovery from H over the sorted generators of G, so H itself is point 0.
CosetActionResult coset_action(const PermGroup& g, const PermGroup& h);

/// Some x in G with x H1 x^-1 == H2, taking the first such element in chain
/// order, or nullopt.
std::optional<Permutation> are_conjugate_subgroups(const PermGroup& g, const PermGroup& h1,
                                                   const PermGroup& h2);

}  // namespace parhgs
