#include "parhgs/pqtheory.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "parhgs/errors.hpp"
#include "parhgs/finite_group.hpp"
#include "parhgs/hgs.hpp"
#include "parhgs/isomorphism.hpp"
#include "parhgs/subgroups.hpp"

namespace parhgs {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint32_t mult_order(std::uint64_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) return 0;
  std::uint32_t o = 1;
  for (std::uint64_t x = a; x != 1; x = x * a % p) ++o;
  return o;
}

std::uint32_t least_of_order(std::uint32_t order, std::uint32_t p) {
  for (std::uint32_t a = 1; a < p; ++a) {
    if (mult_order(a, p) == order) return a;
  }
  throw PreconditionError("no residue of order " + std::to_string(order) + " mod " + std::to_string(p));
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  for (; e; e >>= 1, a = a * a % m) {
    if (e & 1) r = r * a % m;
  }
  return r;
}

std::uint64_t totient_prime_power(std::uint64_t q, std::uint32_t c) {
  return c == 0 ? 1 : ipow(q, c) - ipow(q, c - 1);
}

std::uint32_t valuation(std::uint64_t r, std::uint64_t q) {
  std::uint32_t v = 0;
  while (r % q == 0) {
    r /= q;
    ++v;
  }
  return v;
}

using PointMap = std::function<std::pair<std::uint64_t, std::uint64_t>(std::uint64_t, std::uint64_t)>;

Permutation on_pairs(const PqParameters& pr, const PointMap& f) {
  std::vector<Point> img(pr.n());
  for (std::uint64_t j = 0; j < pr.q; ++j) {
    for (std::uint64_t i = 0; i < pr.p; ++i) {
      auto [a, b] = f(i, j);
      img[i + pr.p * j] = static_cast<Point>(a % pr.p + pr.p * (b % pr.q));
    }
  }
  return Permutation(std::move(img));
}

// Generators of Hol(C_pq) pieces.
struct CyclicHol {
  Permutation sigma, tau;
  Permutation aut_sigma(std::uint64_t a) const;
  Permutation aut_tau(std::uint64_t b) const;
  const PqParameters* pr;
};

Permutation CyclicHol::aut_sigma(std::uint64_t a) const {
  return on_pairs(*pr, [&](std::uint64_t i, std::uint64_t j) { return std::pair{a * i, j}; });
}
Permutation CyclicHol::aut_tau(std::uint64_t b) const {
  return on_pairs(*pr, [&](std::uint64_t i, std::uint64_t j) { return std::pair{i, b * j}; });
}

CyclicHol cyclic_pieces(const PqParameters& pr) {
  CyclicHol h;
  h.pr = &pr;
  h.sigma = on_pairs(pr, [](std::uint64_t i, std::uint64_t j) { return std::pair{i + 1, j}; });
  h.tau = on_pairs(pr, [](std::uint64_t i, std::uint64_t j) { return std::pair{i, j + 1}; });
  return h;
}

struct MetaHol {
  Permutation e1, e2, t, a, b;
};

MetaHol metacyclic_pieces(const PqParameters& pr) {
  const std::uint64_t p = pr.p, k = pr.k;
  // (sigma^i tau^j) for tau sigma tau^-1 = sigma^k
  auto lam_sigma = on_pairs(pr, [](std::uint64_t i, std::uint64_t j) { return std::pair{i + 1, j}; });
  auto lam_tau = on_pairs(pr, [&](std::uint64_t i, std::uint64_t j) { return std::pair{i * k % p, j + 1}; });
  std::vector<std::uint64_t> partial(pr.q + 1, 0);  // 1 + k + ... + k^(j-1)
  for (std::uint32_t j = 1; j <= pr.q; ++j) partial[j] = (partial[j - 1] + powmod(k, j - 1, p)) % p;
  auto theta = on_pairs(pr, [&](std::uint64_t i, std::uint64_t j) { return std::pair{i + partial[j], j}; });
  auto psi = [&](std::uint64_t a) {
    return on_pairs(pr, [&](std::uint64_t i, std::uint64_t j) { return std::pair{a * i, j}; });
  };
  MetaHol h;
  h.e1 = lam_sigma;
  h.e2 = lam_sigma * theta.pow(static_cast<std::int64_t>(k - 1));
  h.t = lam_tau;
  h.a = psi(pr.a_alpha);
  h.b = psi(pr.a_beta);
  return h;
}

// T e1 = k e1, T e2 = e2, A ei = a_alpha ei, B ei = a_beta ei, and T, A, B commute.
void check_metacyclic_action(const PqParameters& pr, const MetaHol& h) {
  auto conj = [](const Permutation& x, const Permutation& y) { return x * y * x.inverse(); };
  bool ok = conj(h.t, h.e1) == h.e1.pow(pr.k) && conj(h.t, h.e2) == h.e2 &&
            conj(h.a, h.e1) == h.e1.pow(pr.a_alpha) && conj(h.a, h.e2) == h.e2.pow(pr.a_alpha) &&
            conj(h.b, h.e1) == h.e1.pow(pr.a_beta) && conj(h.b, h.e2) == h.e2.pow(pr.a_beta) &&
            h.t * h.a == h.a * h.t && h.t * h.b == h.b * h.t && h.a * h.b == h.b * h.a &&
            h.e1 * h.e2 == h.e2 * h.e1;
  if (!ok) throw VerificationError("realization of Hol(C_p x| C_q) does not satisfy the action table");
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (n % i == 0) d.push_back(i);
  }
  return d;
}

std::uint32_t primitive_root(std::uint32_t p) { return least_of_order(p - 1, p); }

bool transitive_subgroup(const FiniteGroup& fg, const Subgroup& s) {
  return fg.to_perm_group(s).is_transitive();
}

}  // namespace

PqParameters PqParameters::make(std::uint32_t p, std::uint32_t q) {
  if (p == q || q < 3 || p < q || !is_prime(p) || !is_prime(q)) {
    throw PreconditionError("p and q must be distinct odd primes with p > q");
  }
  if (static_cast<std::uint64_t>(p) * q > 255) {
    throw PreconditionError("degree pq must be at most 255");
  }
  PqParameters pr;
  pr.p = p;
  pr.q = q;
  pr.e0 = valuation(p - 1, q);
  pr.s = static_cast<std::uint32_t>((p - 1) / ipow(q, pr.e0));
  if (pr.e0 > 0) {
    pr.k = least_of_order(q, p);
    pr.a_alpha = least_of_order(static_cast<std::uint32_t>(ipow(q, pr.e0)), p);
  }
  pr.a_beta = least_of_order(pr.s, p);
  return pr;
}

std::string FamilyMember::describe() const {
  std::ostringstream o;
  o << family_tag;
  for (const auto& [k, v] : params) o << " " << k << "=" << v;
  return o.str();
}

std::string PredictedCounts::str() const {
  return "(" + std::to_string(cl_count) + ", " + std::to_string(aut_orbits) + ", " +
         std::to_string(iso_classes) + ")";
}

PermGroup cyclic_holomorph(const PqParameters& pr) {
  auto h = cyclic_pieces(pr);
  return PermGroup(pr.n(), {h.sigma, h.tau, h.aut_sigma(primitive_root(pr.p)),
                            h.aut_tau(primitive_root(pr.q))});
}

PermGroup metacyclic_holomorph(const PqParameters& pr) {
  if (pr.burnside()) throw PreconditionError("q does not divide p - 1: no non-abelian group of order pq");
  auto h = metacyclic_pieces(pr);
  check_metacyclic_action(pr, h);
  PermGroup g(pr.n(), {h.e1, h.e2, h.t, h.a, h.b});
  if (g.order() != static_cast<std::uint64_t>(pr.p) * pr.p * pr.q * (pr.p - 1)) {
    throw VerificationError("Hol(C_p x| C_q) has the wrong order");
  }
  return g;
}

std::vector<FamilyMember> cyclic_type_transitive_subgroups(const PqParameters& pr) {
  auto h = cyclic_pieces(pr);
  std::vector<FamilyMember> out;
  // N x| X over the subgroups X of Aut(N) = Aut(<sigma>) x Aut(<tau>)
  PermGroup aut(pr.n(), {h.aut_sigma(primitive_root(pr.p)), h.aut_tau(primitive_root(pr.q))});
  for (const auto& x : all_subgroup_classes(aut)) {
    std::vector<Permutation> gens{h.sigma, h.tau};
    for (const auto& g : x.representative.generators()) gens.push_back(g);
    FamilyMember m{PermGroup(pr.n(), gens), "NxX", {{"X", x.order}}};
    out.push_back(std::move(m));
  }
  if (pr.e0 == 0) return out;
  // J_{t,c} x| Y with Y <= Aut(<sigma>) not containing alpha
  const auto alpha = h.aut_sigma(pr.a_alpha);
  const std::uint64_t qe0 = ipow(pr.q, pr.e0);
  const std::uint32_t g = primitive_root(pr.p);
  for (std::uint32_t c = 1; c <= pr.e0; ++c) {
    for (std::uint64_t t = 1; t < ipow(pr.q, c); ++t) {
      if (t % pr.q == 0) continue;
      auto gen = h.tau * alpha.pow(static_cast<std::int64_t>(t * ipow(pr.q, pr.e0 - c)));
      for (std::uint64_t y : divisors(pr.p - 1)) {
        if (y % qe0 == 0) continue;
        auto ygen = h.aut_sigma(powmod(g, (pr.p - 1) / y, pr.p));
        FamilyMember m{PermGroup(pr.n(), {h.sigma, gen, ygen}), "JxY",
                       {{"t", t}, {"c", c}, {"Y", y}}};
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::vector<FamilyMember> metacyclic_type_transitive_subgroups(const PqParameters& pr) {
  if (pr.burnside()) return {};
  auto h = metacyclic_pieces(pr);
  check_metacyclic_action(pr, h);
  std::vector<FamilyMember> out;
  for (std::uint32_t c = 0; c <= pr.e0; ++c) {
    const auto ac = h.a.pow(static_cast<std::int64_t>(ipow(pr.q, pr.e0 - c)));
    for (std::uint64_t d : divisors(pr.s)) {
      const auto bd = h.b.pow(static_cast<std::int64_t>(pr.s / d));
      out.push_back({PermGroup(pr.n(), {h.e1, h.e2, h.t, ac, bd}), "G1", {{"c", c}, {"d", d}}});
    }
  }
  for (std::uint32_t c = 1; c <= pr.e0; ++c) {
    const std::uint64_t qc = ipow(pr.q, c);
    for (std::uint64_t d : divisors(pr.s)) {
      const auto bd = h.b.pow(static_cast<std::int64_t>(pr.s / d));
      for (std::uint64_t u = 1; u < qc; ++u) {
        if (u % pr.q == 0) continue;
        auto gen = h.t * h.a.pow(static_cast<std::int64_t>(u * ipow(pr.q, pr.e0 - c)));
        out.push_back({PermGroup(pr.n(), {h.e1, h.e2, gen, bd}), "G2", {{"c", c}, {"d", d}, {"u", u}}});
      }
    }
  }
  for (const auto& m : out) {
    const std::uint64_t c = m.params.at("c"), d = m.params.at("d");
    const std::uint64_t expect = static_cast<std::uint64_t>(pr.p) * pr.p *
                                 ipow(pr.q, static_cast<std::uint32_t>(c) + (m.family_tag == "G1" ? 1 : 0)) * d;
    if (m.group.order() != expect) {
      throw VerificationError("family member " + m.describe() + " has order " +
                              std::to_string(m.group.order()) + ", expected " + std::to_string(expect));
    }
  }
  return out;
}

PredictedCounts predicted_counts(const FamilyMember& m, const PqParameters& pr) {
  const std::uint64_t q = pr.q;
  if (m.family_tag == "NxX") {
    const std::uint64_t r = m.group.order();
    if (r % (q * q) != 0) return {1, 1, 1};
    const std::uint32_t c = valuation(r, q) - 1;
    const std::uint64_t iso = c > 1 ? 2 : 1;
    // tau is the left translation by the second generator
    const Permutation& tau = m.group.generators().at(1);
    bool central = std::all_of(m.group.generators().begin(), m.group.generators().end(),
                               [&](const Permutation& g) { return g * tau == tau * g; });
    return central ? PredictedCounts{q + 1, 2, iso} : PredictedCounts{2, 2, iso};
  }
  if (m.family_tag == "JxY") return {1, 1, 1};
  const std::uint64_t base = ipow(q, pr.e0 - 1) * pr.s;
  if (m.family_tag == "G1") {
    const std::uint32_t c = static_cast<std::uint32_t>(m.params.at("c"));
    if (c == 0) return {base + 2 * q + 2, 2, 1};
    return {base + 2 * q + 2, 3 * (totient_prime_power(q, c) + 2) / 2, 2};
  }
  if (m.family_tag == "G2") {
    const bool special = m.params.at("c") == 1 && m.params.at("u") == (q - 1) / 2;
    return {base + 2, special ? 2u : 3u, 1};
  }
  throw PreconditionError("unknown family " + m.family_tag);
}

bool PqReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const PqCheck& c) { return c.pass; });
}

namespace {

struct TypeEnumeration {
  std::unique_ptr<FiniteGroup> fg;
  std::unique_ptr<SubgroupLattice> lat;
  std::vector<std::size_t> transitive;  // lattice class indices
};

TypeEnumeration enumerate(const PermGroup& hol) {
  TypeEnumeration t;
  t.fg = std::make_unique<FiniteGroup>(hol);
  t.lat = std::make_unique<SubgroupLattice>(*t.fg);
  for (std::size_t i = 0; i < t.lat->classes().size(); ++i) {
    const auto& c = t.lat->classes()[i];
    if (c.rep.order % hol.degree() == 0 && transitive_subgroup(*t.fg, c.rep)) t.transitive.push_back(i);
  }
  return t;
}

// Maps each member to its lattice class; records collisions and members
// outside the transitive list.
PqCheck match_families(const std::string& name, const std::vector<FamilyMember>& members,
                       const TypeEnumeration& te, const std::set<std::size_t>& expected,
                       std::vector<std::string>& collisions, std::vector<std::size_t>& class_of_member) {
  std::map<std::size_t, std::size_t> first;
  std::size_t outside = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto cls = te.lat->class_of(te.fg->from_perm_group(members[i].group));
    if (!cls || !expected.count(*cls)) {
      ++outside;
      class_of_member.push_back(SIZE_MAX);
      continue;
    }
    class_of_member.push_back(*cls);
    auto [it, fresh] = first.emplace(*cls, i);
    if (!fresh) collisions.push_back(members[i].describe() + " ~ " + members[it->second].describe());
  }
  std::ostringstream o;
  o << members.size() << " constructed, " << first.size() << " distinct classes, " << expected.size()
    << " expected";
  if (outside) o << ", " << outside << " outside the expected list";
  return {name, outside == 0 && first.size() == expected.size(), o.str()};
}

}  // namespace

PqReport verify_pq(const PqParameters& pr, const PqOptions& opt) {
  PqReport rep;
  rep.params = pr;
  const std::size_t n = pr.n();

  auto cyc_members = cyclic_type_transitive_subgroups(pr);
  auto cyc = enumerate(cyclic_holomorph(pr));
  std::set<std::size_t> cyc_expected(cyc.transitive.begin(), cyc.transitive.end());
  std::vector<std::size_t> cyc_class;
  rep.checks.push_back(match_families("cyclic families match the transitive subgroups of Hol(C_pq)",
                                      cyc_members, cyc, cyc_expected, rep.collisions, cyc_class));

  auto cat = build_catalogue(n);
  std::string cyclic_label, meta_label;
  std::size_t cyc_cat = 0, meta_cat = 0;
  for (const auto& e : cat.entries()) {
    if (e.type_index == 0) {
      cyclic_label = e.type_label;
      ++cyc_cat;
    } else {
      meta_label = e.type_label;
      ++meta_cat;
    }
  }

  std::vector<FamilyMember> meta_members;
  std::optional<TypeEnumeration> meta;
  if (!pr.burnside()) {
    meta_members = metacyclic_type_transitive_subgroups(pr);
    meta = enumerate(metacyclic_holomorph(pr));
    std::set<std::size_t> expected;
    const std::uint64_t p2 = static_cast<std::uint64_t>(pr.p) * pr.p;
    for (auto i : meta->transitive) {
      if (meta->lat->classes()[i].rep.order % p2 == 0) expected.insert(i);
    }
    std::vector<std::size_t> meta_class;
    rep.checks.push_back(match_families(
        "metacyclic families match the transitive subgroups of Hol(C_p x| C_q) of order divisible by p^2",
        meta_members, *meta, expected, rep.collisions, meta_class));
  }
  {
    std::ostringstream o;
    o << "cyclic " << cyc.transitive.size() << " vs catalogue " << cyc_cat;
    bool ok = cyc.transitive.size() == cyc_cat;
    if (meta) {
      o << "; metacyclic " << meta->transitive.size() << " vs catalogue " << meta_cat;
      ok = ok && meta->transitive.size() == meta_cat;
    }
    rep.checks.push_back({"class totals agree with the degree catalogue", ok, o.str()});
  }

  // Closed-form counts.
  bool counts_ok = true;
  auto record = [&](const std::string& type, const std::string& desc, const PermGroup& g,
                    const PredictedCounts& pred) {
    auto cr = classify_index_n(g, n);
    PqEntryResult r{type, desc, g.order(), pred, {cr.conjugacy_classes, cr.aut_orbits, cr.iso_classes}, false};
    r.pass = r.predicted == r.computed;
    counts_ok = counts_ok && r.pass;
    rep.entries.push_back(std::move(r));
  };
  for (const auto& m : cyc_members) record("cyclic", m.describe(), m.group, predicted_counts(m, pr));
  if (meta) {
    for (const auto& m : meta_members) record("metacyclic", m.describe(), m.group, predicted_counts(m, pr));
    // Classes of order prime to p^2 borrow the prediction of a permutation-
    // isomorphic cyclic-type group.
    std::vector<PermIsoTarget> cyc_targets;
    for (const auto& m : cyc_members) cyc_targets.emplace_back(m.group);
    const std::uint64_t p2 = static_cast<std::uint64_t>(pr.p) * pr.p;
    for (auto i : meta->transitive) {
      const auto& c = meta->lat->classes()[i];
      if (c.rep.order % p2 == 0) continue;
      PermGroup g = meta->fg->to_perm_group(c.rep);
      PermIsoTarget tg(g);
      std::optional<std::size_t> partner;
      for (std::size_t j = 0; j < cyc_members.size() && !partner; ++j) {
        if (permutation_isomorphism(tg, cyc_targets[j])) partner = j;
      }
      std::string desc = "order " + std::to_string(g.order()) + " class " + std::to_string(i);
      if (!partner) {
        counts_ok = false;
        rep.entries.push_back({"metacyclic", desc + " (no cyclic-type partner)", g.order(), {}, {}, false});
        continue;
      }
      record("metacyclic", desc + " ~ " + cyc_members[*partner].describe(), g,
             predicted_counts(cyc_members[*partner], pr));
    }
  }
  {
    std::size_t failed = std::count_if(rep.entries.begin(), rep.entries.end(),
                                       [](const PqEntryResult& r) { return !r.pass; });
    rep.checks.push_back({"index-pq class counts equal the closed forms", counts_ok,
                          std::to_string(rep.entries.size() - failed) + " of " +
                              std::to_string(rep.entries.size()) + " entries agree"});
  }

  // Parallel extensions.
  DetectOptions dopt;
  dopt.threads = opt.threads;
  dopt.all_types = true;
  auto reports = analyze_catalogue(cat, dopt);
  auto summary = summarize(cat, reports);
  rep.checks.push_back({"no entry has the parallel no-HGS property", summary.no_hgs_entries == 0,
                        std::to_string(summary.no_hgs_entries) + " of " +
                            std::to_string(summary.total_transitive_classes) + " entries"});
  std::size_t pairs = 0, missing = 0, trivial_core_differ = 0, both_src = 0, both_lost = 0;
  for (const auto& e : cat.entries()) {
    auto src = hgs_types_admitted(e.group, e.stabilizer, n, cat);
    const bool both = src.size() == 2;
    both_src += both ? 1 : 0;
    for (const auto& r : reports[e.entry_id]) {
      ++pairs;
      std::set<std::string> got(r.admitted_types.begin(), r.admitted_types.end());
      if (!std::includes(got.begin(), got.end(), src.begin(), src.end())) ++missing;
      if (both && got.size() < 2) ++both_lost;
      if (r.core_order == 1 && got != src) ++trivial_core_differ;
    }
  }
  rep.checks.push_back({"every parallel pair admits every type of its source pair", missing == 0,
                        std::to_string(pairs) + " parallel pairs, " + std::to_string(missing) +
                            " missing a source type"});
  rep.checks.push_back({"sources admitting both types: every parallel pair admits both", both_lost == 0,
                        std::to_string(both_src) + " such entries, " + std::to_string(both_lost) +
                            " parallel pairs without both"});
  rep.checks.push_back({"parallel pairs with trivial core admit the same types as the source",
                        trivial_core_differ == 0,
                        std::to_string(trivial_core_differ) + " differing pairs"});
  if (pr.burnside()) {
    std::size_t other = 0;
    for (const auto& e : cat.entries()) {
      for (const auto& r : reports[e.entry_id]) {
        if (r.admitted_types != std::vector<std::string>{cyclic_label}) ++other;
      }
    }
    rep.checks.push_back({"Burnside degree: every pair admits exactly the cyclic type", other == 0,
                          std::to_string(other) + " pairs with another type set"});
  }
  return rep;
}

}  // namespace parhgs
