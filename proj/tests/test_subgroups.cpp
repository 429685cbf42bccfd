#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "parhgs/autohol.hpp"
#include "parhgs/finite_group.hpp"
#include "parhgs/grouplib.hpp"
#include "parhgs/homsearch.hpp"
#include "parhgs/subgroups.hpp"
#include "oracles.hpp"

using namespace parhgs;
using namespace parhgs::oracle;

namespace {

struct Named {
  std::string name;
  PermGroup group;
};

// Regular representations of every catalogued group of order <= 100, and the
// holomorphs of order <= 100.
std::vector<Named> corpus() {
  std::vector<Named> out;
  for (std::uint32_t n = 1; n <= 100; ++n) {
    if (!order_supported(n)) continue;
    for (const auto& g : groups_of_order(n).groups) {
      out.push_back({"reg " + g.label() + " " + g.tag(), regular_representation(g)});
      if (n >= 2 && n <= 12) {
        auto hol = holomorph(g);
        if (hol.group.order() <= 100) out.push_back({"hol " + g.label(), hol.group});
      }
    }
  }
  return out;
}

struct BruteClass {
  std::uint64_t order;
  std::uint64_t size;
  auto operator<=>(const BruteClass&) const = default;
};

std::multiset<BruteClass> brute_classes(const FiniteGroup& g, const std::vector<ElementSet>& subs) {
  std::map<ElementSet, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i]] = i;
  std::vector<bool> done(subs.size(), false);
  std::multiset<BruteClass> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    std::set<std::size_t> cls;
    for (Elt c = 0; c < g.order(); ++c) cls.insert(index.at(conjugate_set(g, subs[i], c)));
    for (auto j : cls) done[j] = true;
    out.insert({subs[i].count(), cls.size()});
  }
  return out;
}

std::size_t class_count(const AbstractGroup& a) {
  FiniteGroup g(regular_representation(a));
  SubgroupLattice lat(g);
  return lat.classes().size();
}

}  // namespace

TEST_CASE("lattice agrees with exhaustive subgroup enumeration on the corpus") {
  std::size_t groups = 0;
  for (const auto& [name, pg] : corpus()) {
    CAPTURE(name);
    FiniteGroup g(pg);
    SubgroupLattice lat(g);
    auto subs = brute_subgroups(g);
    auto expected = brute_classes(g, subs);
    std::multiset<BruteClass> got;
    for (const auto& c : lat.classes()) got.insert({c.rep.order, c.class_size});
    CHECK(got == expected);
    for (const auto& s : subs) CHECK(lat.class_of(g.from_elements(s)).has_value());
    ++groups;
  }
  CHECK(groups > 100);
}

TEST_CASE("class size times normalizer order is the group order") {
  for (const auto& [name, pg] : corpus()) {
    CAPTURE(name);
    FiniteGroup g(pg);
    SubgroupLattice lat(g);
    for (const auto& c : lat.classes()) {
      CHECK(static_cast<std::uint64_t>(c.class_size) * g.normalizer(c.rep).order == g.order());
      CHECK(SubgroupLattice::conjugates(g, c.rep).size() == c.class_size);
    }
  }
}

TEST_CASE("known class counts") {
  CHECK(class_count(groups_of_order(6).groups.at(1)) == 4);  // S3
  CHECK(class_count(cyclic_group(4)) == 3);
  std::size_t d8 = 0;
  for (const auto& a : groups_of_order(8).groups) {
    if (a.tag() == "metacyclic(m=4,k=2,t=0,r=3)") d8 = class_count(a);
  }
  CHECK(d8 == 8);
  CHECK(class_count(cyclic_group(12)) == 6);
}

TEST_CASE("core is the intersection of the conjugates and the largest normal subgroup inside") {
  for (const auto& [name, pg] : corpus()) {
    if (pg.order() > 64) continue;
    CAPTURE(name);
    FiniteGroup g(pg);
    SubgroupLattice lat(g);
    std::vector<Subgroup> normals;
    for (const auto& c : lat.classes()) {
      if (c.class_size == 1) normals.push_back(c.rep);
    }
    for (const auto& c : lat.classes()) {
      ElementSet meet = c.rep.elems;
      for (Elt x = 0; x < g.order(); ++x) meet &= conjugate_set(g, c.rep.elems, x);
      auto core = g.core(c.rep);
      CHECK(core.elems == meet);
      CHECK(g.is_normal(core));
      for (const auto& m : normals) {
        if (m.elems.is_subset_of(c.rep.elems)) CHECK(m.elems.is_subset_of(core.elems));
      }
    }
  }
}

TEST_CASE("order filter keeps exactly the classes of dividing order") {
  auto hol = holomorph(cyclic_group(9));
  FiniteGroup g(hol.group);
  SubgroupLattice full(g);
  LatticeOptions opt;
  opt.order_divides = 6;
  SubgroupLattice part(g, opt);
  std::size_t expected = 0;
  for (const auto& c : full.classes()) expected += 6 % c.rep.order == 0;
  CHECK(part.classes().size() == expected);
}

TEST_CASE("index-n classification on small groups") {
  // D8 on 4 points: three classes of order 2 subgroups, of which the two
  // non-central classes are swapped by an outer automorphism.
  auto d8 = holomorph(cyclic_group(4)).group;
  auto r = classify_index_n(d8, 4);
  CHECK(r.conjugacy_classes == 3);
  CHECK(r.aut_orbits == 2);
  CHECK(r.iso_classes == 1);
  // S4 on 4 points: index 4 means order 6, a single class of S3.
  auto s4 = holomorph(groups_of_order(4).groups.at(1)).group;
  REQUIRE(s4.order() == 24);
  auto r4 = classify_index_n(s4, 4);
  CHECK(r4.conjugacy_classes == 1);
  CHECK(r4.aut_orbits == 1);
}

TEST_CASE("transitive classes of small holomorphs") {
  // Hol(C4) = D8: transitive subgroups C4, V4 (regular), D8.
  auto hol = holomorph(cyclic_group(4));
  CHECK(transitive_subgroup_classes(hol).size() == 3);
  // Hol(C5) = AGL(1,5): C5, D10, AGL(1,5).
  CHECK(transitive_subgroup_classes(holomorph(cyclic_group(5))).size() == 3);
}

TEST_CASE("index-n classes agree with exhaustive search for every index") {
  std::size_t compared = 0;
  for (const auto& [name, pg] : corpus()) {
    FiniteGroup g(pg);
    if (g.order() > 72) continue;
    auto subs = oracle::brute_subgroups(g);
    auto all = brute_classes(g, subs);
    for (std::uint64_t n = 1; n <= g.order(); ++n) {
      if (g.order() % n) continue;
      CAPTURE(name);
      CAPTURE(n);
      std::multiset<BruteClass> expect;
      for (const auto& c : all) {
        if (c.order * n == g.order()) expect.insert(c);
      }
      std::multiset<BruteClass> got;
      for (const auto& c : index_n_subgroup_classes(pg, n)) got.insert({c.order, c.class_size});
      CHECK(got == expect);
      ++compared;
    }
  }
  CHECK(compared > 500);
}
