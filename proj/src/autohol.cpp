#include "parhgs/autohol.hpp"

#include <algorithm>
#include <numeric>

#include "parhgs/errors.hpp"
#include "parhgs/homsearch.hpp"

namespace parhgs {

namespace {

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> ps;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Is every prime factor of m a divisor of n?
bool is_pi_number(std::uint32_t m, std::uint32_t n) {
  for (auto p : prime_factors(m)) {
    if (n % p) return false;
  }
  return true;
}

std::uint32_t mult_order(std::uint64_t s, std::uint32_t e) {
  if (e == 1) return 1;
  std::uint32_t o = 1;
  for (std::uint64_t x = s % e; x != 1; x = x * s % e) ++o;
  return o;
}

Elt power_of(const AbstractGroup& n, Elt x, std::uint32_t k) {
  Elt r = 0;
  for (std::uint32_t i = 0; i < k; ++i) r = n.mul(r, x);
  return r;
}

const SquarefreeData& squarefree_data(const AbstractGroup& n) {
  if (!n.squarefree()) throw PreconditionError("group " + n.label() + " has no squarefree presentation");
  return *n.squarefree();
}

// phi_s: sigma -> sigma^s, tau -> tau
Permutation phi(const AbstractGroup& n, std::uint32_t s) {
  const auto& d = squarefree_data(n);
  return automorphism_from_images(n, {d.sigma, d.tau}, {power_of(n, d.sigma, s), d.tau});
}

std::vector<std::uint32_t> greedy_unit_generators(std::uint32_t e,
                                                  const std::vector<std::uint32_t>& units) {
  std::vector<char> in(e, 0);
  in[1 % e] = 1;
  std::vector<std::uint32_t> gens;
  for (auto s : units) {
    if (in[s % e]) continue;
    gens.push_back(s);
    std::vector<std::uint32_t> cur;
    for (std::uint32_t x = 0; x < e; ++x) {
      if (in[x]) cur.push_back(x);
    }
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (auto g : gens) {
        auto y = static_cast<std::uint32_t>(static_cast<std::uint64_t>(cur[i]) * g % e);
        if (!in[y]) {
          in[y] = 1;
          cur.push_back(y);
        }
      }
    }
  }
  return gens;
}

}  // namespace

Permutation automorphism_from_images(const AbstractGroup& n, const std::vector<Elt>& gens,
                                     const std::vector<Elt>& images) {
  const Elt kNone = UINT32_MAX;
  std::vector<Elt> f(n.order(), kNone);
  std::vector<char> used(n.order(), 0);
  f[0] = 0;
  used[0] = 1;
  std::vector<Elt> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elt x = queue[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Elt y = n.mul(x, gens[j]);
      Elt fy = n.mul(f[x], images[j]);
      if (f[y] == kNone) {
        if (used[fy]) throw PreconditionError("generator images do not define an automorphism");
        f[y] = fy;
        used[fy] = 1;
        queue.push_back(y);
      } else if (f[y] != fy) {
        throw PreconditionError("generator images do not define an automorphism");
      }
    }
  }
  if (queue.size() != n.order()) throw PreconditionError("elements do not generate the group");
  std::vector<Point> img(f.begin(), f.end());
  return Permutation(std::move(img));
}

std::vector<std::vector<Elt>> automorphism_generators(const FiniteGroup& g, bool include_inner) {
  std::vector<std::vector<Elt>> found;
  const auto gens = search_generators(g, g.whole());
  SearchOptions opt;
  opt.modulo_inner = true;
  for_each_isomorphism(g, g, gens, opt, [&](const std::vector<Elt>& f) {
    found.push_back(f);
    return true;
  });
  std::vector<std::vector<Elt>> out;
  if (include_inner) {
    for (Elt s : g.generators()) {
      std::vector<Elt> f(g.order());
      for (Elt x = 0; x < g.order(); ++x) f[x] = g.conj(x, s);
      out.push_back(std::move(f));
    }
  }
  // Drop maps already generated by earlier ones; the test is exact only
  // through the permutation group they generate on the elements.
  if (found.size() <= 64 || g.order() > 65535) {
    for (auto& f : found) {
      bool identity = true;
      for (Elt x = 0; x < g.order() && identity; ++x) identity = f[x] == x;
      if (!identity) out.push_back(std::move(f));
    }
    return out;
  }
  auto to_perm = [](const std::vector<Elt>& f) {
    return Permutation(std::vector<Point>(f.begin(), f.end()));
  };
  std::vector<Permutation> pg;
  for (const auto& f : out) pg.push_back(to_perm(f));
  PermGroup cur(g.order(), pg);
  for (auto& f : found) {
    Permutation p = to_perm(f);
    if (cur.contains(p)) continue;
    pg.push_back(p);
    cur = PermGroup(g.order(), pg);
    out.push_back(std::move(f));
  }
  return out;
}

AutomorphismGroup automorphism_group(const AbstractGroup& n, std::uint32_t bound) {
  if (n.order() > bound) {
    throw ResourceError("automorphism computation bounded to order " + std::to_string(bound));
  }
  if (n.order() == 1) return {PermGroup::trivial(1)};
  auto rg = enumerate_regular(n);
  std::vector<Permutation> gens;
  for (const auto& f : automorphism_generators(rg.group, true)) {
    std::vector<Point> img(n.order());
    for (Elt x = 0; x < n.order(); ++x) {
      img[rg.abstract_of[x]] = static_cast<Point>(rg.abstract_of[f[x]]);
    }
    gens.emplace_back(std::move(img));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return {PermGroup(n.order(), std::move(gens))};
}

Holomorph holomorph(const AbstractGroup& n, std::uint32_t bound) {
  auto aut = automorphism_group(n, bound).underlying;
  auto lam = regular_representation(n);
  std::vector<Permutation> gens = lam.generators();
  for (const auto& a : aut.generators()) gens.push_back(a);
  PermGroup hol(n.order(), std::move(gens));
  if (hol.order() != static_cast<std::uint64_t>(n.order()) * aut.order()) {
    throw VerificationError("holomorph order mismatch for " + n.label());
  }
  return {std::move(hol), std::move(lam), std::move(aut), n};
}

PermGroup hall_subgroup(const AbstractGroup& n) {
  const auto& d = squarefree_data(n);
  std::vector<Permutation> gens = regular_representation(n).generators();
  if (n.order() == 1) return PermGroup::trivial(1);
  const std::uint32_t z = std::gcd(d.k == 0 ? 0u : d.k - 1, d.e);
  if (d.d > 1) {
    gens.push_back(automorphism_from_images(n, {d.sigma, d.tau},
                                            {d.sigma, n.mul(power_of(n, d.sigma, z), d.tau)}));
  }
  std::vector<std::uint32_t> units;
  for (std::uint32_t s = 1; s < d.e; ++s) {
    if (std::gcd(s, d.e) == 1 && is_pi_number(mult_order(s, d.e), n.order())) units.push_back(s);
  }
  for (auto s : greedy_unit_generators(d.e, units)) gens.push_back(phi(n, s));
  return PermGroup(n.order(), std::move(gens));
}

HallDecomposition hall_decomposition(const AbstractGroup& n, const PermGroup& g) {
  const auto& d = squarefree_data(n);
  if (g.order() == 1) return {g, g};
  const PermGroup q = hall_subgroup(n);
  FiniteGroup fg(g);
  std::vector<Elt> in_q;
  for (Elt x = 1; x < fg.order(); ++x) {
    if (q.contains(fg.perm(x))) in_q.push_back(x);
  }
  Subgroup u = fg.closure(in_q);
  if (u.order != in_q.size() + 1) throw VerificationError("G intersect Q is not closed");
  const std::uint32_t target = fg.order() / u.order;
  PermGroup ug = fg.to_perm_group(u);
  if (target == 1) return {ug, PermGroup::trivial(n.order())};

  std::vector<std::uint32_t> units;
  for (std::uint32_t s = 1; s < d.e; ++s) {
    if (std::gcd(s, d.e) == 1 && std::gcd(mult_order(s, d.e), n.order()) == 1) units.push_back(s);
  }
  std::vector<Permutation> p2;
  for (auto s : greedy_unit_generators(d.e, units)) p2.push_back(phi(n, s));
  const PermGroup phi2(n.order(), p2);
  const Holomorph hol = holomorph(n);
  for (const auto& x : hol.group.elements()) {
    const Permutation xi = x.inverse();
    std::vector<Elt> members;
    for (Elt y = 1; y < fg.order(); ++y) {
      if (phi2.contains(xi * fg.perm(y) * x)) members.push_back(y);
    }
    if (members.size() + 1 == target) return {ug, fg.to_perm_group(fg.closure(members))};
  }
  throw VerificationError("no conjugate of the coprime complement meets G in a complement");
}

Permutation HolomorphProjection::operator()(const Permutation& x) const {
  std::vector<Point> img(quotient_degree);
  for (std::size_t p = 0; p < block_of.size(); ++p) img[block_of[p]] = static_cast<Point>(block_of[x[p]]);
  return Permutation(std::move(img));
}

PermGroup HolomorphProjection::image(const PermGroup& g) const {
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back((*this)(x));
  return PermGroup(quotient_degree, std::move(gens));
}

HolomorphProjection holomorph_projection(const AbstractGroup& n, const PermGroup& m_char) {
  if (m_char.degree() != n.order()) throw PreconditionError("subgroup degree differs from |N|");
  std::vector<char> in_m(n.order(), 0);
  for (Point p : m_char.orbit(0)) in_m[p] = 1;
  for (const auto& g : m_char.generators()) {
    Elt a = g[0];
    for (Elt x = 0; x < n.order(); ++x) {
      if (g[x] != n.mul(a, x)) throw PreconditionError("subgroup is not inside lambda(N)");
    }
  }
  const auto aut = automorphism_group(n).underlying;
  for (const auto& a : aut.generators()) {
    for (Elt x = 0; x < n.order(); ++x) {
      if (in_m[x] && !in_m[a[x]]) throw PreconditionError("subgroup is not characteristic");
    }
  }
  HolomorphProjection pr;
  const Elt kNone = UINT32_MAX;
  pr.block_of.assign(n.order(), kNone);
  std::vector<Elt> reps;
  for (Elt x = 0; x < n.order(); ++x) {
    if (pr.block_of[x] != kNone) continue;
    auto b = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (Elt m = 0; m < n.order(); ++m) {
      if (in_m[m]) pr.block_of[n.mul(x, m)] = b;
    }
  }
  pr.quotient_degree = reps.size();
  const auto qn = static_cast<std::uint32_t>(reps.size());
  std::vector<std::uint32_t> tab(static_cast<std::size_t>(qn) * qn);
  for (std::uint32_t i = 0; i < qn; ++i) {
    for (std::uint32_t j = 0; j < qn; ++j) tab[i * qn + j] = pr.block_of[n.mul(reps[i], reps[j])];
  }
  pr.quotient = AbstractGroup(std::move(tab), "quotient(" + n.label() + ")");
  return pr;
}

}  // namespace parhgs
