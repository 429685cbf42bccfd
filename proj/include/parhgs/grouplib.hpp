#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parhgs/finite_group.hpp"
#include "parhgs/perm_group.hpp"

namespace parhgs {

/// Parameters of a squarefree-order group <s, t | s^e = t^d = 1, t s t^-1 = s^k>.
struct SquarefreeData {
  std::uint32_t e = 1;
  std::uint32_t d = 1;
  std::uint32_t k = 1;
  Elt sigma = 0;
  Elt tau = 0;
};

/// A finite group given by its multiplication table; element 0 is the
/// identity.
class AbstractGroup {
 public:
  AbstractGroup() : AbstractGroup(std::vector<std::uint32_t>{0}, "trivial") {}
  AbstractGroup(std::vector<std::uint32_t> table, std::string tag);

  std::uint32_t order() const noexcept { return n_; }
  Elt mul(Elt a, Elt b) const noexcept { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elt inv(Elt a) const noexcept { return inverse_[a]; }
  std::uint32_t elt_order(Elt a) const;
  const std::vector<std::uint32_t>& table() const noexcept { return table_; }
  /// A generating set, greedily by descending element order.
  const std::vector<Elt>& generators() const noexcept { return gens_; }
  bool is_abelian() const;

  const std::string& label() const noexcept { return label_; }
  const std::string& tag() const noexcept { return tag_; }
  void set_label(std::string l) { label_ = std::move(l); }
  void set_tag(std::string t) { tag_ = std::move(t); }
  const std::optional<SquarefreeData>& squarefree() const noexcept { return sq_; }
  void set_squarefree(SquarefreeData d) { sq_ = d; }

  /// Identity, inverses and associativity; exhaustive up to order 64, on a
  /// deterministic sample of triples above.
  bool check_axioms() const;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> table_;
  std::vector<Elt> inverse_;
  std::vector<Elt> gens_;
  std::string label_;
  std::string tag_;
  std::optional<SquarefreeData> sq_;
};

struct GroupCatalogue {
  std::uint32_t order = 0;
  std::vector<AbstractGroup> groups;
};

inline constexpr int kGrouplibVersion = 1;

/// Orders with a catalogue: 1..16, 18, 20, 21, 24, 27 and squarefree n <= 255.
bool order_supported(std::uint32_t n);
std::string supported_orders_text();

/// One group per isomorphism type, abelian groups first. Cached per order.
const GroupCatalogue& groups_of_order(std::uint32_t n);
std::vector<AbstractGroup> squarefree_groups(std::uint32_t n);

AbstractGroup cyclic_group(std::uint32_t n);
/// <a, b | a^m = 1, b^k = a^t, b a b^-1 = a^r>, elements a^i b^j at i + m j.
AbstractGroup metacyclic_group(std::uint32_t m, std::uint32_t k, std::uint32_t t, std::uint32_t r);
AbstractGroup direct_product(const AbstractGroup& n, const AbstractGroup& m);
/// A x| C_k with the generator of C_k acting as the automorphism `alpha`
/// (given as images of the elements of A, alpha^k = 1).
AbstractGroup semidirect_cyclic(const AbstractGroup& a, const std::vector<Elt>& alpha,
                                std::uint32_t k);
AbstractGroup from_finite_group(const FiniteGroup& g, std::string tag);

/// lambda(N): left multiplications as permutations of the elements.
PermGroup regular_representation(const AbstractGroup& n);
/// Enumerated lambda(N) with the element of FiniteGroup index i being
/// lambda(order_map[i]).
struct RegularGroup {
  FiniteGroup group;
  std::vector<Elt> abstract_of;  // FiniteGroup element -> abstract element
  std::vector<Elt> finite_of;    // abstract element -> FiniteGroup element
};
RegularGroup enumerate_regular(const AbstractGroup& n);

/// Invariant factors such as "C2xC4", for abelian groups.
std::string abelian_name(const AbstractGroup& g);

/// Are the two groups isomorphic?
bool isomorphic(const AbstractGroup& a, const AbstractGroup& b);

}  // namespace parhgs
