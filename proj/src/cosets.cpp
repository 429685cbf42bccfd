#include "parhgs/cosets.hpp"

#include "parhgs/errors.hpp"
#include "parhgs/finite_group.hpp"

namespace parhgs {

namespace {

void require_subgroup(const PermGroup& g, const PermGroup& h) {
  if (!h.is_subgroup_of(g)) throw PreconditionError("subgroup is not contained in the group");
}

}  // namespace

PermGroup normal_core(const PermGroup& g, const PermGroup& h) {
  return coset_action(g, h).kernel;
}

CosetActionResult coset_action(const PermGroup& g, const PermGroup& h) {
  require_subgroup(g, h);
  FiniteGroup fg(g);
  Subgroup sub = fg.from_perm_group(h);
  CosetTable t = fg.left_cosets(sub);
  CosetActionResult r{PermGroup(t.index(), fg.coset_action(t)),
                      fg.to_perm_group(fg.coset_kernel(t)), 0};
  return r;
}

std::optional<Permutation> are_conjugate_subgroups(const PermGroup& g, const PermGroup& h1,
                                                   const PermGroup& h2) {
  require_subgroup(g, h1);
  require_subgroup(g, h2);
  if (h1.order() != h2.order()) return std::nullopt;
  for (const auto& x : g.elements()) {
    const Permutation xi = x.inverse();
    bool ok = true;
    for (const auto& s : h1.generators()) {
      if (!h2.contains(x * s * xi)) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  return std::nullopt;
}

}  // namespace parhgs
