#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "parhgs/finite_group.hpp"

namespace parhgs {

/// Per-element isomorphism invariant: order, conjugacy class size and the
/// number of square roots, packed into one integer.
std::vector<std::uint64_t> element_invariants(const FiniteGroup& g);

/// Cheap whole-group invariants used to reject isomorphism early.
struct GroupInvariants {
  std::uint32_t order = 0;
  std::map<std::uint32_t, std::uint32_t> order_histogram;
  std::vector<std::uint32_t> class_sizes;  // sorted
  std::uint32_t derived_order = 0;
  std::uint32_t center_order = 0;
  bool operator==(const GroupInvariants&) const = default;
};
GroupInvariants group_invariants(const FiniteGroup& g);

struct SearchOptions {
  /// Only enumerate isomorphisms up to composition with inner automorphisms
  /// of the target: the first image is a class representative and the second
  /// one a representative under its centralizer.
  bool modulo_inner = false;
  /// Optional designated subgroups: x in sub_a iff f(x) in sub_b.
  const Subgroup* sub_a = nullptr;
  const Subgroup* sub_b = nullptr;
  std::uint64_t node_limit = 0;  // 0 means unbounded
};

/// Full element map f with f[x] the image of element x.
using IsoVisitor = std::function<bool(const std::vector<Elt>& f)>;

/// Generator-image backtracking over isomorphisms a -> b. `gens_a` must
/// generate a. The visitor returns false to stop; the function returns false
/// when it was stopped that way. Throws ResourceError past node_limit.
bool for_each_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                          const std::vector<Elt>& gens_a, const SearchOptions& opt,
                          const IsoVisitor& visit);

/// A generating sequence suited to the search: elements with the rarest
/// invariant first, larger order breaking ties.
std::vector<Elt> search_generators(const FiniteGroup& g, const Subgroup& s);

}  // namespace parhgs
