#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "parhgs/permutation.hpp"

namespace parhgs {

/// Base and strong generating set built by deterministic Schreier-Sims.
/// New base points are always the smallest point moved by the element that
/// forced them, so chains (and everything enumerated from them) are
/// reproducible.
class StabChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;       // point -> index into orbit, or -1
    std::vector<Permutation> transversal; // transversal[i](base) == orbit[i]
  };

  StabChain(std::size_t degree, const std::vector<Permutation>& gens,
            const std::vector<Point>& base_prefix);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::vector<Point> base() const;
  std::uint64_t order() const noexcept;

  /// Strips `g` through the chain; returns the residue and the level where
  /// sifting stopped (levels().size() when it went all the way through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start = 0) const;
  bool contains(const Permutation& g) const;

 private:
  void recompute_orbit(Level& lvl) const;
  std::size_t degree_;
  std::vector<Level> levels_;
};

/// A permutation group on {0, ..., degree-1} given by generators; immutable,
/// with its stabilizer chain built eagerly at construction.
class PermGroup {
 public:
  PermGroup() : PermGroup(1, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> gens,
            const std::vector<Point>& base_prefix = {});

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }
  static PermGroup symmetric(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  const StabChain& chain() const noexcept { return *chain_; }

  std::uint64_t order() const noexcept { return chain_->order(); }
  bool contains(const Permutation& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool operator==(const PermGroup& other) const;

  std::vector<Point> orbit(Point p) const;
  bool is_transitive() const;
  /// Stab_G(p), generated by the first-level strong generators of a chain
  /// rebuilt with base starting at p.
  PermGroup stabilizer(Point p) const;

  /// All elements in chain order (identity first). Throws ResourceError above
  /// `limit`.
  std::vector<Permutation> elements(std::uint64_t limit = 2'000'000) const;

 private:
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<const StabChain> chain_;
};

std::uint64_t group_order(const PermGroup& g);
bool is_transitive(const PermGroup& g);
PermGroup point_stabilizer(const PermGroup& g, Point p);

/// Brute-force closure by breadth-first multiplication; a test oracle for the
/// chain, bounded by `limit` elements.
std::vector<Permutation> brute_force_closure(std::size_t degree,
                                             const std::vector<Permutation>& gens,
                                             std::size_t limit = 100'000);

}  // namespace parhgs
