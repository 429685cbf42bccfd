#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "parhgs/cosets.hpp"
#include "parhgs/errors.hpp"
#include "parhgs/finite_group.hpp"
#include "parhgs/perm_group.hpp"

using namespace parhgs;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> c) {
  return Permutation::from_cycles(n, c);
}

PermGroup s3() { return PermGroup(3, {cyc(3, {{0, 1, 2}}), cyc(3, {{0, 1}})}); }

// x -> x+1 and x -> 2x mod 5
PermGroup hol_c5() {
  return PermGroup(5, {cyc(5, {{0, 1, 2, 3, 4}}), Permutation({0, 2, 4, 1, 3})});
}

PermGroup d8() { return PermGroup(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{1, 3}})}); }

PermGroup random_group(std::mt19937& rng, std::size_t n, int ngens) {
  std::vector<Permutation> gens;
  for (int i = 0; i < ngens; ++i) {
    std::vector<Point> img(n);
    for (std::size_t j = 0; j < n; ++j) img[j] = static_cast<Point>(j);
    // sparse: a random product of two random transpositions / a cycle
    std::shuffle(img.begin(), img.begin() + std::min<std::size_t>(n, 1 + rng() % n), rng);
    gens.emplace_back(img);
  }
  return PermGroup(n, gens);
}

// Normal subgroups of a small group by brute force over all subgroups
// generated by at most two elements.
std::vector<std::set<Permutation>> small_subgroups(const PermGroup& g) {
  auto el = g.elements();
  std::set<std::set<Permutation>> out;
  for (const auto& a : el) {
    for (const auto& b : el) {
      auto c = brute_force_closure(g.degree(), {a, b});
      out.insert(std::set<Permutation>(c.begin(), c.end()));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("permutation basics") {
  auto a = cyc(4, {{0, 1, 2, 3}});
  auto b = cyc(4, {{0, 1}});
  CHECK((a * b)[0] == a[b[0]]);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.order() == 4);
  CHECK(a.pow(4).is_identity());
  CHECK(a.pow(-1) == a.inverse());
  CHECK(Permutation::parse("[1,0,3,2]") == cyc(4, {{0, 1}, {2, 3}}));
  CHECK(Permutation::parse("(1,2)(3,4)", 4, true) == cyc(4, {{0, 1}, {2, 3}}));
  CHECK(Permutation::parse(a.to_string()) == a);
  CHECK(Permutation::parse(a.to_cycles(), 4) == a);
  CHECK_THROWS_AS(Permutation::parse("[0,0]"), ParseError);
  CHECK_THROWS_AS(Permutation::parse("x"), ParseError);
  CHECK(b.cycle_type() == std::vector<std::size_t>{1, 1, 2});
}

TEST_CASE("group_order") {
  CHECK(group_order(s3()) == 6);
  CHECK(group_order(PermGroup::trivial(4)) == 1);
  CHECK(group_order(hol_c5()) == 20);
  CHECK(brute_force_closure(5, hol_c5().generators()).size() == 20);
  CHECK(PermGroup::symmetric(7).order() == 5040);
}

TEST_CASE("is_transitive") {
  CHECK(is_transitive(s3()));
  CHECK_FALSE(is_transitive(PermGroup(3, {cyc(3, {{0, 1}})})));
  CHECK(is_transitive(PermGroup(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})})));
}

TEST_CASE("point_stabilizer") {
  auto st = point_stabilizer(s3(), 0);
  CHECK(st.order() == 2);
  for (const auto& g : st.generators()) CHECK(g[0] == 0);
  CHECK(point_stabilizer(PermGroup(4, {cyc(4, {{0, 1, 2, 3}})}), 0).order() == 1);
  CHECK(point_stabilizer(hol_c5(), 0).order() == 4);
}

TEST_CASE("chain agrees with brute-force closure on random groups") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 3 + rng() % 7;
    auto g = random_group(rng, n, 1 + static_cast<int>(rng() % 3));
    if (g.order() > 10000) continue;
    auto el = brute_force_closure(n, g.generators(), 20000);
    CHECK(el.size() == g.order());
    std::set<Permutation> s(el.begin(), el.end());
    auto chain_el = g.elements();
    CHECK(std::set<Permutation>(chain_el.begin(), chain_el.end()) == s);
    // membership: random permutations
    for (int k = 0; k < 20; ++k) {
      std::vector<Point> img(n);
      for (std::size_t j = 0; j < n; ++j) img[j] = static_cast<Point>(j);
      std::shuffle(img.begin(), img.end(), rng);
      Permutation x(img);
      CHECK(g.contains(x) == (s.count(x) == 1));
    }
    for (Point p = 0; p < n; ++p) {
      CHECK(g.order() == g.orbit(p).size() * g.stabilizer(p).order());
    }
  }
}

TEST_CASE("finite group tables") {
  FiniteGroup fg(hol_c5());
  CHECK(fg.order() == 20);
  for (Elt a = 0; a < fg.order(); ++a) {
    CHECK(fg.mul(a, fg.inv(a)) == 0);
    for (Elt b = 0; b < fg.order(); ++b) {
      CHECK(fg.perm(fg.mul(a, b)) == fg.perm(a) * fg.perm(b));
    }
  }
  CHECK(fg.center().order == 1);
  CHECK(fg.derived_subgroup().order == 5);
  auto sizes = fg.class_sizes();
  CHECK(std::accumulate(sizes.begin(), sizes.end(), 0u) == 20);
  CHECK(sizes.size() == 5);
}

TEST_CASE("normal_core") {
  auto a3 = PermGroup(3, {cyc(3, {{0, 1, 2}})});
  CHECK(normal_core(s3(), a3) == a3);
  CHECK(normal_core(s3(), PermGroup(3, {cyc(3, {{0, 1}})})).order() == 1);
  CHECK(normal_core(hol_c5(), hol_c5().stabilizer(0)).order() == 1);
  CHECK_THROWS_AS(normal_core(a3, s3()), PreconditionError);
}

TEST_CASE("coset_action") {
  auto r = coset_action(s3(), PermGroup(3, {cyc(3, {{0, 1}})}));
  CHECK(r.image.degree() == 3);
  CHECK(r.image.order() == 6);
  CHECK(r.kernel.order() == 1);

  auto z = PermGroup(4, {cyc(4, {{0, 2}, {1, 3}})});
  auto r2 = coset_action(d8(), z);
  CHECK(r2.image.degree() == 4);
  CHECK(r2.image.order() == 4);
  CHECK(r2.kernel == z);

  auto r3 = coset_action(d8(), d8());
  CHECK(r3.image.degree() == 1);
  CHECK(r3.image.order() == 1);
  CHECK(r3.kernel == d8());
}

TEST_CASE("coset action on a point stabilizer reproduces the action") {
  for (const auto& g : {s3(), hol_c5(), d8(), PermGroup::symmetric(5)}) {
    auto r = coset_action(g, g.stabilizer(0));
    CHECK(r.image.degree() == g.degree());
    CHECK(r.kernel.order() == 1);
    CHECK(r.image.order() == g.order());
    CHECK(r.image.stabilizer(r.point_of_identity_coset).order() == g.stabilizer(0).order());
  }
}

TEST_CASE("core characterization exhaustive on small groups") {
  for (const auto& g : {s3(), hol_c5(), d8(), PermGroup::symmetric(4)}) {
    auto subs = small_subgroups(g);
    auto is_normal = [&](const std::set<Permutation>& s) {
      for (const auto& x : g.generators()) {
        for (const auto& y : s) {
          if (!s.count(x * y * x.inverse())) return false;
        }
      }
      return true;
    };
    for (const auto& h : subs) {
      PermGroup hg(g.degree(), std::vector<Permutation>(h.begin(), h.end()));
      auto core = normal_core(g, hg);
      auto cel = core.elements();
      std::set<Permutation> cs(cel.begin(), cel.end());
      CHECK(is_normal(cs));
      CHECK(std::includes(h.begin(), h.end(), cs.begin(), cs.end()));
      for (const auto& n : subs) {
        if (is_normal(n) && std::includes(h.begin(), h.end(), n.begin(), n.end())) {
          CHECK(std::includes(cs.begin(), cs.end(), n.begin(), n.end()));
        }
      }
    }
  }
}

TEST_CASE("are_conjugate_subgroups") {
  auto h1 = PermGroup(3, {cyc(3, {{0, 1}})});
  auto h2 = PermGroup(3, {cyc(3, {{1, 2}})});
  auto w = are_conjugate_subgroups(s3(), h1, h1);
  REQUIRE(w);
  CHECK(w->is_identity());
  CHECK_FALSE(are_conjugate_subgroups(s3(), h1, PermGroup(3, {cyc(3, {{0, 1, 2}})})));
  auto w2 = are_conjugate_subgroups(s3(), h1, h2);
  REQUIRE(w2);
  CHECK(h2.contains(*w2 * cyc(3, {{0, 1}}) * w2->inverse()));
  auto v = PermGroup(4, {cyc(4, {{0, 1}, {2, 3}})});
  auto u = PermGroup(4, {cyc(4, {{0, 1}})});
  CHECK_FALSE(are_conjugate_subgroups(PermGroup::symmetric(4), v, u));
}

TEST_CASE("finite group element orders match permutation orders") {
  for (const auto& g : {s3(), hol_c5(), d8(), PermGroup::symmetric(5)}) {
    FiniteGroup fg(g);
    for (Elt x = 0; x < fg.order(); ++x) CHECK(fg.elt_order(x) == fg.perm(x).order());
    FiniteGroup big(g, FiniteGroup::kDefaultLimit);
    CHECK(big.order() == g.order());
  }
}
