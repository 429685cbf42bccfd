#pragma once

#include <boost/dynamic_bitset.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parhgs/perm_group.hpp"

namespace parhgs {

/// Index of an element inside an enumerated group; 0 is the identity.
using Elt = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

/// 128-bit fingerprint of an element set; the canonical subgroup key.
struct SubgroupKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  auto operator<=>(const SubgroupKey&) const = default;
  std::string hex() const;
  static SubgroupKey from_hex(const std::string& s);
};

struct SubgroupKeyHash {
  std::size_t operator()(const SubgroupKey& k) const noexcept {
    return static_cast<std::size_t>(k.hi ^ (k.lo * 0x9e3779b97f4a7c15ULL));
  }
};

SubgroupKey key_of(const ElementSet& s);

/// A subgroup of an enumerated group, stored as its element set together with
/// a generating list.
struct Subgroup {
  ElementSet elems;
  std::vector<Elt> gens;
  std::uint32_t order = 0;
  SubgroupKey key;

  bool contains(Elt x) const { return elems.test(x); }
  std::vector<Elt> elements() const;
};

/// Left cosets xH of a subgroup, numbered by first discovery in a breadth-first
/// sweep from H itself over the (sorted) generators of the parent.
struct CosetTable {
  std::vector<std::uint32_t> coset_of;  // element -> coset number
  std::vector<Elt> reps;                // reps[0] == identity
  std::size_t index() const { return reps.size(); }
};

/// Explicitly enumerated finite permutation group. Elements are numbered in
/// breadth-first order from the generators; products go through a full
/// multiplication table when the order is at most `kTableLimit`, otherwise
/// through permutation composition and a hash lookup.
class FiniteGroup {
 public:
  static constexpr std::uint32_t kTableLimit = 8192;
  static constexpr std::uint64_t kDefaultLimit = 400'000;

  explicit FiniteGroup(const PermGroup& g, std::uint64_t limit = kDefaultLimit);

  std::size_t degree() const noexcept { return degree_; }
  std::uint32_t order() const noexcept { return order_; }
  const PermGroup& perm_group() const noexcept { return group_; }
  const std::vector<Elt>& generators() const noexcept { return gens_; }

  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const noexcept { return inverse_[a]; }
  Elt pow(Elt a, long long e) const;
  /// g * x * g^-1
  Elt conj(Elt x, Elt g) const { return mul(mul(g, x), inverse_[g]); }
  std::uint32_t elt_order(Elt a) const noexcept { return orders_[a]; }

  std::span<const Point> images(Elt a) const noexcept {
    return {flat_.data() + static_cast<std::size_t>(a) * degree_, degree_};
  }
  Permutation perm(Elt a) const;
  std::optional<Elt> find(std::span<const Point> images) const;
  std::optional<Elt> find(const Permutation& p) const { return find(p.images()); }
  Elt index_of(const Permutation& p) const;

  Subgroup whole() const;
  Subgroup trivial() const;
  Subgroup closure(std::span<const Elt> gens) const;
  /// <K, c> built coset by coset over K.
  Subgroup join(const Subgroup& k, Elt c) const;
  Subgroup conjugate(const Subgroup& s, Elt g) const;
  Subgroup intersection(const Subgroup& a, const Subgroup& b) const;
  Subgroup from_elements(const ElementSet& elems) const;
  Subgroup from_perm_group(const PermGroup& h) const;
  PermGroup to_perm_group(const Subgroup& s) const;
  std::vector<Permutation> perms(std::span<const Elt> elts) const;

  bool is_normal(const Subgroup& h) const;
  Subgroup normalizer(const Subgroup& h) const;
  Subgroup centralizer(Elt x) const;
  Subgroup center() const;
  Subgroup derived_subgroup() const;
  /// The normal closure of the conjugates of `h` (smallest normal subgroup
  /// containing h).
  Subgroup normal_closure(const Subgroup& h) const;

  CosetTable left_cosets(const Subgroup& h) const;
  /// Image of the left-multiplication action on the cosets, one permutation
  /// per parent generator.
  std::vector<Permutation> coset_action(const CosetTable& t) const;
  /// Elements acting trivially on all cosets, i.e. the normal core.
  Subgroup coset_kernel(const CosetTable& t) const;
  Subgroup core(const Subgroup& h) const { return coset_kernel(left_cosets(h)); }

  /// Conjugacy class number of every element (classes numbered by first
  /// element), and the class sizes.
  const std::vector<std::uint32_t>& element_classes() const;
  const std::vector<std::uint32_t>& class_sizes() const;

  /// A short generating sequence chosen greedily: candidates are scanned in
  /// the order given by `rank` (smaller first), keeping those that enlarge the
  /// subgroup generated so far.
  std::vector<Elt> small_generating_set(const Subgroup& s,
                                        const std::function<std::uint64_t(Elt)>& rank) const;
  std::vector<Elt> small_generating_set(const Subgroup& s) const;

 private:
  void build_table(const std::vector<std::uint32_t>& parent,
                   const std::vector<std::uint32_t>& via,
                   const std::vector<Elt>& left_gen_rows);
  Subgroup finish(ElementSet elems, std::vector<Elt> gens) const;

  PermGroup group_;
  std::size_t degree_;
  std::uint32_t order_ = 0;
  std::vector<Point> flat_;
  std::vector<Elt> slots_;
  std::uint64_t slot_mask_ = 0;
  std::vector<Elt> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<Elt> gens_;
  std::vector<std::uint16_t> table_;
  mutable std::vector<std::uint32_t> classes_;
  mutable std::vector<std::uint32_t> class_sizes_;
};

}  // namespace parhgs
