#include "parhgs/subgroups.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "parhgs/errors.hpp"
#include "parhgs/homsearch.hpp"

namespace parhgs {

namespace {

bool is_prime_power(std::uint32_t m) {
  if (m < 2) return false;
  std::uint32_t p = 2;
  while (m % p) ++p;
  while (m % p == 0) m /= p;
  return m == 1;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Dense numbering of union-find roots in order of first appearance.
std::vector<std::size_t> number_roots(UnionFind& uf, std::size_t n, std::size_t& count) {
  std::vector<std::size_t> id(n), root_id(n, SIZE_MAX);
  count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = uf.find(i);
    if (root_id[r] == SIZE_MAX) root_id[r] = count++;
    id[i] = root_id[r];
  }
  return id;
}

}  // namespace

std::vector<Subgroup> SubgroupLattice::conjugates(const FiniteGroup& g, const Subgroup& s) {
  std::vector<Subgroup> out{s};
  std::unordered_map<SubgroupKey, char, SubgroupKeyHash> seen{{s.key, 1}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elt x : g.generators()) {
      Subgroup c = g.conjugate(out[i], x);
      if (seen.emplace(c.key, 1).second) out.push_back(std::move(c));
    }
  }
  return out;
}

SubgroupLattice::SubgroupLattice(const FiniteGroup& g, const LatticeOptions& opt) : g_(g) {
  if (g.order() > opt.max_group_order) {
    throw ResourceError("subgroup lattice bounded to group order " +
                        std::to_string(opt.max_group_order));
  }
  auto allowed = [&](std::uint64_t ord) {
    return opt.order_divides == 0 || opt.order_divides % ord == 0;
  };
  // Cyclic subgroups of prime-power order, numbered; cyc_of[x] is the id of
  // <x> for prime-power-order x.
  std::vector<std::uint32_t> cyc_of(g.order(), UINT32_MAX);
  std::vector<Elt> cyc_gen;
  for (Elt x = 1; x < g.order(); ++x) {
    const std::uint32_t o = g.elt_order(x);
    if (cyc_of[x] != UINT32_MAX || !is_prime_power(o) || !allowed(o)) continue;
    auto id = static_cast<std::uint32_t>(cyc_gen.size());
    cyc_gen.push_back(x);
    Elt y = x;
    for (std::uint32_t k = 1; k < o; ++k, y = g.mul(y, x)) {
      if (std::gcd(k, o) == 1) cyc_of[y] = id;
    }
  }

  const bool large = g.order() > FiniteGroup::kTableLimit;
  std::vector<ClassInfo> found;
  auto add_small = [&](const Subgroup& s) {
    auto conj = conjugates(g, s);
    auto idx = static_cast<std::uint32_t>(found.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < conj.size(); ++i) {
      key_to_class_.emplace(conj[i].key, idx);
      if (conj[i].key < conj[best].key) best = i;
    }
    found.push_back({std::move(conj[best]), static_cast<std::uint32_t>(conj.size())});
  };
  // Conjugates by a transversal of N(s), holding one element set at a time.
  auto add_large = [&](const Subgroup& s) {
    const CosetTable t = g.left_cosets(g.normalizer(s));
    auto idx = static_cast<std::uint32_t>(found.size());
    const std::vector<Elt> el = s.elements();
    ElementSet buf(g.order());
    SubgroupKey best_key;
    Elt best = 0;
    for (std::size_t i = 0; i < t.index(); ++i) {
      const Elt r = t.reps[i], ri = g.inv(r);
      buf.reset();
      for (Elt x : el) buf.set(g.mul(g.mul(r, x), ri));
      SubgroupKey k = key_of(buf);
      key_to_class_.emplace(k, idx);
      if (i == 0 || k < best_key) {
        best_key = k;
        best = r;
      }
    }
    found.push_back({g.conjugate(s, best), static_cast<std::uint32_t>(t.index())});
  };
  auto add_class = [&](const Subgroup& s) -> bool {
    if (key_to_class_.count(s.key)) return false;
    if (large) {
      add_large(s);
    } else {
      add_small(s);
    }
    return true;
  };

  if (opt.seeds.empty()) {
    add_class(g.trivial());
  } else {
    for (const auto& s : opt.seeds) add_class(s);
  }
  std::vector<char> seen(cyc_gen.size());
  std::vector<std::uint32_t> stack;
  for (std::size_t ci = 0; ci < found.size(); ++ci) {
    const Subgroup k = found[ci].rep;
    const Subgroup nk = g.normalizer(k);
    const std::vector<Elt> ngens = g.small_generating_set(nk);
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t c = 0; c < cyc_gen.size(); ++c) {
      if (seen[c]) continue;
      // orbit of <c> under N(K)
      seen[c] = 1;
      stack.assign(1, c);
      while (!stack.empty()) {
        std::uint32_t z = stack.back();
        stack.pop_back();
        for (Elt h : ngens) {
          std::uint32_t w = cyc_of[g.conj(cyc_gen[z], h)];
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      if (k.contains(cyc_gen[c])) continue;
      if (large && opt.order_divides) {
        // Schreier-Sims order first; closures are costly without a table.
        std::vector<Elt> jg = k.gens;
        jg.push_back(cyc_gen[c]);
        if (!allowed(PermGroup(g.degree(), g.perms(jg)).order())) continue;
      }
      Subgroup j = g.join(k, cyc_gen[c]);
      if (!allowed(j.order) || key_to_class_.count(j.key)) continue;
      if (opt.keep && !opt.keep(j)) continue;
      if (add_class(j) && opt.progress) opt.progress(found.size());
    }
  }

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].rep.order != found[b].rep.order) return found[a].rep.order < found[b].rep.order;
    return found[a].rep.key < found[b].rep.key;
  });
  std::vector<std::uint32_t> remap(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<std::uint32_t>(i);
    classes_.push_back(std::move(found[order[i]]));
  }
  for (auto& [key, idx] : key_to_class_) idx = remap[idx];
}

std::optional<std::size_t> SubgroupLattice::class_of(const Subgroup& s) const {
  return class_of_key(s.key);
}

std::optional<std::size_t> SubgroupLattice::class_of_key(const SubgroupKey& k) const {
  auto it = key_to_class_.find(k);
  if (it == key_to_class_.end()) return std::nullopt;
  return it->second;
}

std::vector<SubgroupClass> to_subgroup_classes(const SubgroupLattice& lat,
                                               const std::function<bool(const Subgroup&)>& keep) {
  std::vector<SubgroupClass> out;
  for (const auto& c : lat.classes()) {
    if (!keep(c.rep)) continue;
    out.push_back({lat.group().to_perm_group(c.rep), c.class_size, c.rep.order, c.rep});
  }
  return out;
}

std::vector<SubgroupClass> all_subgroup_classes(const PermGroup& g, std::uint64_t bound) {
  if (g.order() > bound) {
    throw ResourceError("subgroup lattice bounded to group order " + std::to_string(bound));
  }
  FiniteGroup fg(g);
  LatticeOptions opt;
  opt.max_group_order = bound;
  SubgroupLattice lat(fg, opt);
  return to_subgroup_classes(lat, [](const Subgroup&) { return true; });
}

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t p) {
  std::uint64_t target = 1;
  for (std::uint64_t m = g.order(); m % p == 0; m /= p) target *= p;
  Subgroup s = g.trivial();
  while (s.order < target) {
    const Subgroup n = g.normalizer(s);
    bool grown = false;
    for (auto x = n.elems.find_first(); x != ElementSet::npos && !grown; x = n.elems.find_next(x)) {
      std::uint32_t o = g.elt_order(static_cast<Elt>(x));
      while (o % p == 0) o /= p;
      const Elt y = g.pow(static_cast<Elt>(x), o);
      if (!s.contains(y)) {
        s = g.join(s, y);
        grown = true;
      }
    }
    if (!grown) throw VerificationError("Sylow search stalled");
  }
  return s;
}

std::vector<SubgroupClass> transitive_subgroup_classes(const Holomorph& hol, std::uint64_t bound) {
  FiniteGroup fg(hol.group, std::max<std::uint64_t>(bound, FiniteGroup::kDefaultLimit));
  const std::size_t n = fg.degree();
  auto transitive = [&](const Subgroup& s) {
    if (s.order % n) return false;
    std::vector<char> seen(n, 0);
    std::vector<Point> orb{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      for (Elt x : s.gens) {
        Point p = fg.images(x)[orb[i]];
        if (!seen[p]) {
          seen[p] = 1;
          orb.push_back(p);
        }
      }
    }
    return orb.size() == n;
  };
  LatticeOptions opt;
  opt.max_group_order = bound;
  if (n > 1 && is_prime_power(static_cast<std::uint32_t>(n))) {
    // A transitive group of prime-power degree has a transitive Sylow
    // subgroup, so growing from those reaches every transitive subgroup.
    std::uint32_t p = 2;
    while (n % p) ++p;
    const Subgroup syl = sylow_subgroup(fg, p);
    FiniteGroup fs(fg.to_perm_group(syl));
    SubgroupLattice small(fs);
    for (const auto& c : small.classes()) {
      PermGroup pg = fs.to_perm_group(c.rep);
      if (c.rep.order % n == 0 && pg.is_transitive()) opt.seeds.push_back(fg.from_perm_group(pg));
    }
    opt.keep = transitive;
  }
  SubgroupLattice lat(fg, opt);
  return to_subgroup_classes(lat, transitive);
}

LatticeOptions index_n_options(const FiniteGroup& g, std::uint64_t n) {
  if (n == 0 || g.order() % n) throw PreconditionError("n does not divide the group order");
  LatticeOptions opt;
  opt.order_divides = g.order() / n;
  std::uint32_t best = 0;
  std::uint64_t best_part = 1;
  std::uint64_t m = g.order();
  for (std::uint32_t r = 2; m > 1; ++r) {
    if (m % r) continue;
    std::uint64_t part = 1;
    while (m % r == 0) {
      m /= r;
      part *= r;
    }
    if (n % r && part > best_part) {
      best = r;
      best_part = part;
    }
  }
  if (best) opt.seeds.push_back(sylow_subgroup(g, best));
  return opt;
}

std::vector<SubgroupClass> index_n_subgroup_classes(const PermGroup& g, std::uint64_t n) {
  if (n == 0 || g.order() % n) throw PreconditionError("n does not divide the group order");
  FiniteGroup fg(g);
  SubgroupLattice lat(fg, index_n_options(fg, n));
  const std::uint64_t target = g.order() / n;
  return to_subgroup_classes(lat, [&](const Subgroup& s) { return s.order == target; });
}

ClassificationReport classify_classes(const FiniteGroup& g, const SubgroupLattice& lat,
                                      std::uint64_t sub_order) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < lat.classes().size(); ++i) {
    if (lat.classes()[i].rep.order == sub_order) ids.push_back(i);
  }
  ClassificationReport r;
  r.conjugacy_classes = ids.size();
  if (ids.empty()) return r;
  std::vector<std::size_t> pos(lat.classes().size(), SIZE_MAX);
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;

  UnionFind orbits(ids.size());
  if (ids.size() > 1) {
    for (const auto& f : automorphism_generators(g, false)) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const Subgroup& rep = lat.classes()[ids[i]].rep;
        ElementSet img(g.order());
        for (Elt x : rep.elements()) img.set(f[x]);
        auto c = lat.class_of_key(key_of(img));
        if (!c || pos[*c] == SIZE_MAX) throw VerificationError("automorphism image left the class list");
        orbits.unite(i, pos[*c]);
      }
    }
  }
  auto orbit_id = number_roots(orbits, ids.size(), r.aut_orbits);

  // Abstract isomorphism between orbit representatives.
  std::vector<std::size_t> orbit_rep(r.aut_orbits, SIZE_MAX);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (orbit_rep[orbit_id[i]] == SIZE_MAX) orbit_rep[orbit_id[i]] = i;
  }
  struct Enumerated {
    std::unique_ptr<FiniteGroup> group;
    GroupInvariants inv;
  };
  std::vector<Enumerated> subs;
  for (std::size_t o = 0; o < r.aut_orbits; ++o) {
    auto pg = g.to_perm_group(lat.classes()[ids[orbit_rep[o]]].rep);
    auto fg = std::make_unique<FiniteGroup>(pg);
    auto inv = group_invariants(*fg);
    subs.push_back({std::move(fg), std::move(inv)});
  }
  UnionFind iso(r.aut_orbits);
  for (std::size_t a = 0; a < r.aut_orbits; ++a) {
    for (std::size_t b = a + 1; b < r.aut_orbits; ++b) {
      if (iso.find(a) == iso.find(b) || !(subs[a].inv == subs[b].inv)) continue;
      SearchOptions so;
      so.modulo_inner = true;
      bool found = false;
      const auto& ga = *subs[a].group;
      for_each_isomorphism(ga, *subs[b].group, search_generators(ga, ga.whole()), so,
                           [&](const std::vector<Elt>&) {
                             found = true;
                             return false;
                           });
      if (found) iso.unite(a, b);
    }
  }
  auto iso_id = number_roots(iso, r.aut_orbits, r.iso_classes);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& c = lat.classes()[ids[i]];
    r.details.push_back({c.rep.order, c.class_size, orbit_id[i], iso_id[orbit_id[i]]});
  }
  return r;
}

ClassificationReport classify_index_n(const PermGroup& g, std::uint64_t n) {
  if (n == 0 || g.order() % n) throw PreconditionError("n does not divide the group order");
  FiniteGroup fg(g);
  SubgroupLattice lat(fg, index_n_options(fg, n));
  return classify_classes(fg, lat, g.order() / n);
}

}  // namespace parhgs
