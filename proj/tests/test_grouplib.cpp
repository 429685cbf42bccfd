#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "parhgs/errors.hpp"
#include "parhgs/grouplib.hpp"
#include "parhgs/homsearch.hpp"

using namespace parhgs;

namespace {

// Brute-force isomorphism oracle: try every bijection fixing 0 that respects
// element orders, for tiny groups.
bool brute_isomorphic(const AbstractGroup& a, const AbstractGroup& b) {
  if (a.order() != b.order()) return false;
  const auto n = a.order();
  std::vector<Elt> f(n, 0);
  std::vector<char> used(n, 0);
  used[0] = 1;
  std::function<bool(Elt)> rec = [&](Elt x) -> bool {
    if (x == n) {
      for (Elt i = 0; i < n; ++i) {
        for (Elt j = 0; j < n; ++j) {
          if (f[a.mul(i, j)] != b.mul(f[i], f[j])) return false;
        }
      }
      return true;
    }
    for (Elt y = 1; y < n; ++y) {
      if (used[y] || a.elt_order(x) != b.elt_order(y)) continue;
      // partial check on products of assigned elements
      bool ok = true;
      f[x] = y;
      for (Elt i = 1; i <= x && ok; ++i) {
        Elt p = a.mul(i, x);
        if (p <= x && f[p] != b.mul(f[i], y)) ok = false;
        p = a.mul(x, i);
        if (p <= x && f[p] != b.mul(y, f[i])) ok = false;
      }
      if (!ok) continue;
      used[y] = 1;
      if (rec(x + 1)) return true;
      used[y] = 0;
    }
    return false;
  };
  return rec(1);
}

}  // namespace

TEST_CASE("catalogue counts") {
  const std::map<std::uint32_t, std::size_t> known = {
      {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},   {7, 1},  {8, 5},
      {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2},  {15, 1}, {16, 14},
      {18, 5}, {20, 5}, {21, 2}, {24, 15}, {27, 5}, {30, 4}, {33, 1}, {39, 2},
      {42, 6}, {55, 2}, {105, 2}};
  for (auto [n, c] : known) {
    CAPTURE(n);
    const auto& cat = groups_of_order(n);
    CHECK(cat.groups.size() == c);
    bool seen_nonabelian = false;
    for (const auto& g : cat.groups) {
      CHECK(g.order() == n);
      CHECK(g.check_axioms());
      if (!g.is_abelian()) seen_nonabelian = true;
      CHECK((g.is_abelian() ? !seen_nonabelian : true));
    }
  }
}

TEST_CASE("catalogue members pairwise non-isomorphic by brute force") {
  for (std::uint32_t n : {4u, 6u, 8u, 9u, 10u, 12u}) {
    const auto& gs = groups_of_order(n).groups;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(brute_isomorphic(gs[i], gs[j]));
    }
  }
}

TEST_CASE("order 8 completeness against all metacyclic and product tables") {
  // Every order-8 group built from presentations is isomorphic to a member.
  std::vector<AbstractGroup> tables;
  for (std::uint32_t m : {1u, 2u, 4u, 8u}) {
    std::uint32_t k = 8 / m;
    for (std::uint32_t r = 0; r < std::max(m, 1u); ++r) {
      for (std::uint32_t t = 0; t < m; ++t) {
        try {
          tables.push_back(metacyclic_group(m, k, t, r));
        } catch (const PreconditionError&) {
        }
      }
    }
  }
  tables.push_back(direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
  const auto& gs = groups_of_order(8).groups;
  for (const auto& t : tables) {
    int hits = 0;
    for (const auto& g : gs) hits += brute_isomorphic(t, g);
    CHECK(hits == 1);
  }
}

TEST_CASE("unsupported order") {
  CHECK_THROWS_AS(groups_of_order(32), UnsupportedOrderError);
  CHECK_THROWS_AS(groups_of_order(0), UnsupportedOrderError);
  CHECK_THROWS_AS(squarefree_groups(12), PreconditionError);
}

TEST_CASE("squarefree groups") {
  auto g21 = squarefree_groups(21);
  REQUIRE(g21.size() == 2);
  CHECK(g21[0].is_abelian());
  CHECK_FALSE(g21[1].is_abelian());
  CHECK(g21[1].squarefree()->e == 7);
  CHECK(g21[1].squarefree()->d == 3);
  CHECK(squarefree_groups(15).size() == 1);
  CHECK(squarefree_groups(1).size() == 1);
  CHECK(groups_of_order(15).groups[0].tag() == "cyclic");
}

TEST_CASE("regular representation") {
  auto r = regular_representation(cyclic_group(3));
  CHECK(r.order() == 3);
  CHECK(r.generators().size() == 1);
  CHECK(regular_representation(AbstractGroup()).order() == 1);
  for (std::uint32_t n : {8u, 12u, 21u, 27u}) {
    for (const auto& g : groups_of_order(n).groups) {
      auto rr = regular_representation(g);
      CHECK(rr.order() == n);
      CHECK(rr.is_transitive());
      CHECK(rr.stabilizer(0).order() == 1);
    }
  }
}

TEST_CASE("direct product") {
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(abelian_name(v4) == "C2xC2");
  CHECK(isomorphic(direct_product(cyclic_group(5), AbstractGroup()), cyclic_group(5)));
  auto c2c4 = direct_product(cyclic_group(2), cyclic_group(4));
  CHECK(c2c4.order() == 8);
  CHECK(abelian_name(c2c4) == "C2xC4");
  CHECK(isomorphic(direct_product(cyclic_group(3), cyclic_group(4)), cyclic_group(12)));
  // projections are homomorphisms
  for (Elt x = 0; x < 8; ++x) {
    for (Elt y = 0; y < 8; ++y) {
      Elt p = c2c4.mul(x, y);
      CHECK(p % 2 == (x % 2 + y % 2) % 2);
      CHECK(p / 2 == (x / 2 + y / 2) % 4);
    }
  }
}

TEST_CASE("abelian names") {
  std::multiset<std::string> names;
  for (const auto& g : groups_of_order(16).groups) {
    if (g.is_abelian()) names.insert(g.tag());
  }
  CHECK(names == std::multiset<std::string>{"C16", "C2xC8", "C4xC4", "C2xC2xC4", "C2xC2xC2xC2"});
}
