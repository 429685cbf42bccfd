#include "parhgs/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "parhgs/errors.hpp"

namespace parhgs {

namespace {

std::optional<Point> smallest_moved(const Permutation& g,
                                    const std::vector<Point>& exclude) {
  for (std::size_t i = 0; i < g.degree(); ++i) {
    if (g[i] != i &&
        std::find(exclude.begin(), exclude.end(), static_cast<Point>(i)) == exclude.end()) {
      return static_cast<Point>(i);
    }
  }
  return std::nullopt;
}

bool fixes_all(const Permutation& g, const std::vector<Point>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](Point p) { return g[p] == p; });
}

}  // namespace

StabChain::StabChain(std::size_t degree, const std::vector<Permutation>& gens,
                     const std::vector<Point>& base_prefix)
    : degree_(degree) {
  std::vector<Point> base;
  for (Point p : base_prefix) {
    if (p >= degree) throw PreconditionError("base point out of range");
    if (std::find(base.begin(), base.end(), p) == base.end()) base.push_back(p);
  }
  std::vector<Permutation> strong;
  for (const auto& g : gens) {
    if (g.is_identity()) continue;
    if (fixes_all(g, base)) base.push_back(*smallest_moved(g, base));
    strong.push_back(g);
  }
  for (Point b : base) {
    Level lvl;
    lvl.base = b;
    levels_.push_back(std::move(lvl));
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    std::vector<Point> prefix;
    for (std::size_t j = 0; j < i; ++j) prefix.push_back(levels_[j].base);
    for (const auto& g : strong) {
      if (fixes_all(g, prefix)) levels_[i].gens.push_back(g);
    }
    recompute_orbit(levels_[i]);
  }

  // Holt's deterministic SCHREIERSIMS: verify Schreier generators level by
  // level from the bottom, restarting at the deepest level that changed.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool changed = false;
    const auto li = static_cast<std::size_t>(i);
    for (std::size_t d = 0; !changed && d < levels_[li].orbit.size(); ++d) {
      for (std::size_t s = 0; !changed && s < levels_[li].gens.size(); ++s) {
        const auto& gen = levels_[static_cast<std::size_t>(i)].gens[s];
        const auto& lv = levels_[static_cast<std::size_t>(i)];
        Point delta = lv.orbit[d];
        Point image = gen[delta];
        Permutation h =
            lv.transversal[static_cast<std::size_t>(lv.slot[image])].inverse() * gen *
            lv.transversal[d];
        auto [residue, stop] = sift(h, static_cast<std::size_t>(i) + 1);
        if (residue.is_identity()) continue;
        if (stop == levels_.size()) {
          Level fresh;
          fresh.base = *smallest_moved(residue, base);
          base.push_back(fresh.base);
          levels_.push_back(std::move(fresh));
        }
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= stop; ++l) {
          levels_[l].gens.push_back(residue);
          recompute_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(stop);
        changed = true;
      }
    }
    if (!changed) --i;
  }
}

void StabChain::recompute_orbit(Level& lvl) const {
  lvl.orbit.assign(1, lvl.base);
  lvl.slot.assign(degree_, -1);
  lvl.slot[lvl.base] = 0;
  lvl.transversal.assign(1, Permutation(degree_));
  for (std::size_t k = 0; k < lvl.orbit.size(); ++k) {
    for (const auto& s : lvl.gens) {
      Point img = s[lvl.orbit[k]];
      if (lvl.slot[img] >= 0) continue;
      lvl.slot[img] = static_cast<std::int32_t>(lvl.orbit.size());
      lvl.orbit.push_back(img);
      lvl.transversal.push_back(s * lvl.transversal[k]);
    }
  }
}

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  for (const auto& l : levels_) b.push_back(l.base);
  return b;
}

std::uint64_t StabChain::order() const noexcept {
  std::uint64_t o = 1;
  for (const auto& l : levels_) o *= l.orbit.size();
  return o;
}

std::pair<Permutation, std::size_t> StabChain::sift(Permutation g, std::size_t start) const {
  for (std::size_t l = start; l < levels_.size(); ++l) {
    Point img = g[levels_[l].base];
    auto slot = levels_[l].slot[img];
    if (slot < 0) return {std::move(g), l};
    g = levels_[l].transversal[static_cast<std::size_t>(slot)].inverse() * g;
  }
  return {std::move(g), levels_.size()};
}

bool StabChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [res, stop] = sift(g);
  return stop == levels_.size() && res.is_identity();
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens,
                     const std::vector<Point>& base_prefix)
    : degree_(degree) {
  if (degree == 0) throw PreconditionError("permutation group needs degree >= 1");
  for (auto& g : gens) {
    if (g.degree() != degree) throw PreconditionError("generator degree mismatch");
    if (!g.is_identity()) gens_.push_back(std::move(g));
  }
  chain_ = std::make_shared<const StabChain>(degree, gens_, base_prefix);
}

PermGroup PermGroup::symmetric(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<Point> cyc(degree);
    for (std::size_t i = 0; i < degree; ++i) cyc[i] = static_cast<Point>(i);
    gens.push_back(Permutation::from_cycles(degree, {cyc}));
    gens.push_back(Permutation::from_cycles(degree, {{0, 1}}));
  }
  return PermGroup(degree, std::move(gens));
}

bool PermGroup::contains(const Permutation& g) const { return chain_->contains(g); }

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (other.degree_ != degree_) return false;
  return std::all_of(gens_.begin(), gens_.end(),
                     [&](const Permutation& g) { return other.contains(g); });
}

bool PermGroup::operator==(const PermGroup& other) const {
  return degree_ == other.degree_ && order() == other.order() && is_subgroup_of(other);
}

std::vector<Point> PermGroup::orbit(Point p) const {
  std::vector<Point> orb{p};
  std::vector<char> seen(degree_, 0);
  seen[p] = 1;
  for (std::size_t k = 0; k < orb.size(); ++k) {
    for (const auto& s : gens_) {
      Point img = s[orb[k]];
      if (!seen[img]) {
        seen[img] = 1;
        orb.push_back(img);
      }
    }
  }
  return orb;
}

bool PermGroup::is_transitive() const { return orbit(0).size() == degree_; }

PermGroup PermGroup::stabilizer(Point p) const {
  if (p >= degree_) throw PreconditionError("stabilizer point out of range");
  StabChain c(degree_, gens_, {p});
  if (c.levels().empty()) return *this;
  if (c.levels().size() == 1) return trivial(degree_);
  return PermGroup(degree_, c.levels()[1].gens);
}

std::vector<Permutation> PermGroup::elements(std::uint64_t limit) const {
  if (order() > limit) throw ResourceError("group too large to enumerate");
  std::vector<Permutation> out{Permutation(degree_)};
  const auto& lv = chain_->levels();
  for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
    std::vector<Permutation> next;
    next.reserve(out.size() * it->transversal.size());
    for (const auto& u : it->transversal) {
      for (const auto& g : out) next.push_back(u * g);
    }
    out = std::move(next);
  }
  return out;
}

std::uint64_t group_order(const PermGroup& g) { return g.order(); }
bool is_transitive(const PermGroup& g) { return g.is_transitive(); }
PermGroup point_stabilizer(const PermGroup& g, Point p) { return g.stabilizer(p); }

std::vector<Permutation> brute_force_closure(std::size_t degree,
                                             const std::vector<Permutation>& gens,
                                             std::size_t limit) {
  std::vector<Permutation> elts{Permutation(degree)};
  std::unordered_set<Permutation, PermutationHash> seen(elts.begin(), elts.end());
  for (std::size_t k = 0; k < elts.size(); ++k) {
    for (const auto& s : gens) {
      Permutation x = s * elts[k];
      if (seen.insert(x).second) {
        elts.push_back(std::move(x));
        if (elts.size() > limit) throw ResourceError("closure exceeded limit");
      }
    }
  }
  return elts;
}

}  // namespace parhgs
