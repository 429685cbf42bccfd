#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "parhgs/autohol.hpp"
#include "parhgs/errors.hpp"
#include "parhgs/finite_group.hpp"

using namespace parhgs;

namespace {

// Counts automorphisms by trying every bijection fixing 0.
std::uint64_t brute_aut_count(const AbstractGroup& g) {
  const auto n = g.order();
  std::vector<Elt> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (Elt a = 0; a < n && ok; ++a) {
      for (Elt b = 0; b < n && ok; ++b) ok = perm[g.mul(a, b)] == g.mul(perm[a], perm[b]);
    }
    count += ok;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return count;
}

// |N_{Sym(n)}(lambda(N))| by scanning the whole symmetric group.
std::uint64_t brute_normalizer_order(const PermGroup& lam) {
  const auto n = lam.degree();
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::uint64_t count = 0;
  do {
    Permutation x(img);
    Permutation xi = x.inverse();
    bool ok = true;
    for (const auto& g : lam.generators()) {
      if (!lam.contains(x * g * xi)) {
        ok = false;
        break;
      }
    }
    count += ok;
  } while (std::next_permutation(img.begin(), img.end()));
  return count;
}

}  // namespace

TEST_CASE("automorphism group examples") {
  CHECK(automorphism_group(cyclic_group(3)).underlying.order() == 2);
  CHECK(automorphism_group(direct_product(cyclic_group(2), cyclic_group(2))).underlying.order() == 6);
  CHECK(automorphism_group(AbstractGroup()).underlying.order() == 1);
}

TEST_CASE("automorphisms respect multiplication and fix 0") {
  for (std::uint32_t n : {8u, 12u, 16u, 21u}) {
    for (const auto& g : groups_of_order(n).groups) {
      auto aut = automorphism_group(g).underlying;
      for (const auto& a : aut.generators()) {
        CHECK(a[0] == 0);
        for (Elt x = 0; x < n; ++x) {
          for (Elt y = 0; y < n; ++y) CHECK(a[g.mul(x, y)] == g.mul(a[x], a[y]));
        }
      }
    }
  }
}

TEST_CASE("automorphism counts against brute force") {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    for (const auto& g : groups_of_order(n).groups) {
      CAPTURE(g.label());
      CHECK(automorphism_group(g).underlying.order() == brute_aut_count(g));
    }
  }
}

TEST_CASE("known automorphism orders") {
  auto c3_3 = direct_product(cyclic_group(3), direct_product(cyclic_group(3), cyclic_group(3)));
  CHECK(automorphism_group(c3_3).underlying.order() == 11232);
  auto c2_4 = direct_product(cyclic_group(2), direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
  CHECK(automorphism_group(c2_4).underlying.order() == 20160);
  CHECK_THROWS_AS(automorphism_group(cyclic_group(300), 256), ResourceError);
}

TEST_CASE("holomorph examples") {
  auto h2 = holomorph(cyclic_group(2));
  CHECK(h2.group.order() == 2);
  auto h3 = holomorph(cyclic_group(3));
  CHECK(h3.group == PermGroup::symmetric(3));
  auto h = holomorph(direct_product(cyclic_group(2), cyclic_group(4)));
  CHECK(h.group.order() == 64);
  CHECK(h.group.is_transitive());
}

TEST_CASE("holomorph invariants over catalogues") {
  for (std::uint32_t n : {4u, 6u, 8u, 9u, 12u, 15u, 21u}) {
    for (const auto& g : groups_of_order(n).groups) {
      auto h = holomorph(g);
      CHECK(h.group.order() == n * h.aut_n.order());
      CHECK(h.group.stabilizer(0) == h.aut_n);
      for (const auto& x : h.group.generators()) {
        for (const auto& l : h.lambda_n.generators()) CHECK(h.lambda_n.contains(x * l * x.inverse()));
      }
    }
  }
}

TEST_CASE("holomorph is the full normalizer of lambda(N) for |N| <= 8") {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    for (const auto& g : groups_of_order(n).groups) {
      CAPTURE(g.label());
      auto h = holomorph(g);
      CHECK(h.group.order() == brute_normalizer_order(h.lambda_n));
    }
  }
}

TEST_CASE("Hall subgroup for squarefree N") {
  for (std::uint32_t n : {6u, 10u, 15u, 21u, 30u, 39u, 55u}) {
    for (const auto& g : groups_of_order(n).groups) {
      CAPTURE(g.label());
      auto h = holomorph(g);
      auto q = hall_subgroup(g);
      CHECK(q.is_subgroup_of(h.group));
      // normal, a pi(n)-group, index coprime to n
      for (const auto& x : h.group.generators()) {
        for (const auto& y : q.generators()) CHECK(q.contains(x * y * x.inverse()));
      }
      std::uint64_t qo = q.order(), idx = h.group.order() / qo;
      CHECK(std::gcd(idx, static_cast<std::uint64_t>(n)) == 1);
      for (std::uint64_t p = 2; p <= qo; ++p) {
        if (qo % p == 0) {
          bool prime = true;
          for (std::uint64_t d = 2; d * d <= p; ++d) prime = prime && p % d;
          if (prime) CHECK(n % p == 0);
        }
      }
      // uniqueness: every pi(n)-element of Hol(N) lies in Q
      FiniteGroup fh(h.group);
      for (Elt x = 0; x < fh.order(); ++x) {
        std::uint64_t o = fh.elt_order(x);
        bool pi = true;
        for (std::uint64_t p = 2; p <= o; ++p) {
          if (o % p == 0) {
            if (n % p != 0) pi = false;
            while (o % p == 0) o /= p;
          }
        }
        CHECK(pi == q.contains(fh.perm(x)));
      }
    }
  }
}

TEST_CASE("hall decomposition") {
  auto c15 = groups_of_order(15).groups[0];
  auto h = holomorph(c15);
  auto d = hall_decomposition(c15, h.group);
  CHECK(d.u == hall_subgroup(c15));
  CHECK(d.u.order() * d.v.order() == h.group.order());
  CHECK(std::gcd(d.v.order(), std::uint64_t{15}) == 1);

  auto lam = regular_representation(c15);
  auto d2 = hall_decomposition(c15, lam);
  CHECK(d2.u == lam);
  CHECK(d2.v.order() == 1);

  auto d3 = hall_decomposition(c15, PermGroup::trivial(15));
  CHECK(d3.u.order() == 1);
  CHECK(d3.v.order() == 1);
  CHECK_THROWS_AS(hall_decomposition(groups_of_order(8).groups[0], PermGroup::trivial(8)),
                  PreconditionError);
}

TEST_CASE("holomorph projection") {
  auto c4 = cyclic_group(4);
  auto h = holomorph(c4);
  // <square> inside lambda(C4)
  Permutation sq(std::vector<Point>{2, 3, 0, 1});
  auto pr = holomorph_projection(c4, PermGroup(4, {sq}));
  CHECK(pr.quotient_degree == 2);
  auto img = pr.image(h.group);
  CHECK(img.order() == 2);
  CHECK(img.is_transitive());
  CHECK(img.is_subgroup_of(holomorph(pr.quotient).group));

  auto triv = holomorph_projection(c4, PermGroup::trivial(4));
  CHECK(triv.quotient_degree == 4);
  for (const auto& x : h.group.elements()) CHECK(triv(x) == x);

  CHECK_THROWS_AS(holomorph_projection(direct_product(cyclic_group(2), cyclic_group(2)),
                                       PermGroup(4, {Permutation({1, 0, 3, 2})})),
                  PreconditionError);
}

TEST_CASE("projection is a homomorphism") {
  for (std::uint32_t n : {8u, 12u}) {
    for (const auto& g : groups_of_order(n).groups) {
      auto h = holomorph(g);
      FiniteGroup fl(h.lambda_n);
      auto aut = h.aut_n;
      // characteristic subgroups: derived subgroup and center of lambda(N)
      for (const auto& m : {fl.derived_subgroup(), fl.center()}) {
        auto mg = fl.to_perm_group(m);
        auto pr = holomorph_projection(g, mg);
        auto el = h.group.elements();
        std::size_t step = el.size() > 500 ? el.size() / 200 : 1;
        for (std::size_t i = 0; i < el.size(); i += step) {
          for (std::size_t j = 0; j < el.size(); j += step) {
            CHECK(pr(el[i] * el[j]) == pr(el[i]) * pr(el[j]));
          }
        }
        CHECK(pr.image(h.group).is_transitive());
        CHECK(pr.image(h.group).is_subgroup_of(holomorph(pr.quotient).group));
      }
    }
  }
}

TEST_CASE("projection of Y x C_q onto Hol(Y)") {
  auto y = groups_of_order(3).groups[0];
  auto n = direct_product(y, cyclic_group(5));
  // the C5 factor: elements x with x % 3 == 0
  std::vector<Point> img(15);
  for (Elt x = 0; x < 15; ++x) img[x] = static_cast<Point>(n.mul(3, x));
  auto pr = holomorph_projection(n, PermGroup(15, {Permutation(img)}));
  CHECK(pr.quotient_degree == 3);
  CHECK(pr(Permutation(img)).is_identity());
}
