#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "parhgs/autohol.hpp"
#include "parhgs/finite_group.hpp"
#include "parhgs/perm_group.hpp"

namespace parhgs {

/// A conjugacy class of subgroups, represented by the conjugate with the
/// least canonical key.
struct SubgroupClass {
  PermGroup representative;
  std::uint64_t class_size = 0;
  std::uint64_t order = 0;
  Subgroup rep;  // the representative inside the enumerated parent
};

struct LatticeOptions {
  /// Keep only subgroups whose order divides this (0 keeps everything).
  std::uint64_t order_divides = 0;
  std::uint64_t max_group_order = 100'000;
  std::function<void(std::size_t classes_so_far)> progress;
  /// Start from these subgroups instead of the trivial one.
  std::vector<Subgroup> seeds;
  /// Only joins passing this are recorded and extended further.
  std::function<bool(const Subgroup&)> keep;
};

/// Subgroups of an enumerated group up to conjugacy, built bottom-up by
/// joining class representatives with cyclic subgroups of prime-power order
/// (one per orbit of the representative's normalizer).
class SubgroupLattice {
 public:
  struct ClassInfo {
    Subgroup rep;
    std::uint32_t class_size = 0;
  };

  SubgroupLattice(const FiniteGroup& g, const LatticeOptions& opt = {});

  const FiniteGroup& group() const noexcept { return g_; }
  /// Sorted by (order, key).
  const std::vector<ClassInfo>& classes() const noexcept { return classes_; }
  /// The class containing a subgroup (any conjugate), if enumerated.
  std::optional<std::size_t> class_of(const Subgroup& s) const;
  std::optional<std::size_t> class_of_key(const SubgroupKey& k) const;

  /// All conjugates of a subgroup, found by conjugating with the generators.
  static std::vector<Subgroup> conjugates(const FiniteGroup& g, const Subgroup& s);

 private:
  const FiniteGroup& g_;
  std::vector<ClassInfo> classes_;
  std::unordered_map<SubgroupKey, std::uint32_t, SubgroupKeyHash> key_to_class_;
};

std::vector<SubgroupClass> all_subgroup_classes(const PermGroup& g,
                                                std::uint64_t bound = 100'000);
/// A Sylow p-subgroup, grown from the trivial group inside normalizers.
Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t p);

/// Transitive subgroups of Hol(N) up to conjugacy in Hol(N).
std::vector<SubgroupClass> transitive_subgroup_classes(const Holomorph& hol,
                                                       std::uint64_t bound = 100'000);
/// Lattice options covering every subgroup of index n. A subgroup of index n
/// contains a Sylow r-subgroup for each prime r not dividing n, so the search
/// is seeded with one such Sylow subgroup (largest r-part) when one exists.
LatticeOptions index_n_options(const FiniteGroup& g, std::uint64_t n);
/// Classes of subgroups of order |G|/n.
std::vector<SubgroupClass> index_n_subgroup_classes(const PermGroup& g, std::uint64_t n);

struct ClassificationReport {
  std::size_t conjugacy_classes = 0;
  std::size_t aut_orbits = 0;
  std::size_t iso_classes = 0;
  struct Detail {
    std::uint64_t order = 0;
    std::uint64_t class_size = 0;
    std::size_t aut_orbit = 0;  // index of the orbit, numbered from 0
    std::size_t iso_class = 0;
  };
  std::vector<Detail> details;
};

ClassificationReport classify_index_n(const PermGroup& g, std::uint64_t n);
/// Same, on an already enumerated group and its index-n lattice.
ClassificationReport classify_classes(const FiniteGroup& g, const SubgroupLattice& lattice,
                                      std::uint64_t sub_order);

/// Sifts the representative list into SubgroupClass values for a parent.
std::vector<SubgroupClass> to_subgroup_classes(const SubgroupLattice& lat,
                                               const std::function<bool(const Subgroup&)>& keep);

}  // namespace parhgs
