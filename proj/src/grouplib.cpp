#include "parhgs/grouplib.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "parhgs/autohol.hpp"
#include "parhgs/errors.hpp"
#include "parhgs/homsearch.hpp"

namespace parhgs {

namespace {

bool is_squarefree(std::uint32_t n) {
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint32_t mult_order(std::uint32_t k, std::uint32_t m) {
  if (m == 1) return 1;
  std::uint32_t o = 1;
  std::uint64_t x = k % m;
  while (x != 1) {
    x = x * k % m;
    ++o;
    if (o > m) return 0;
  }
  return o;
}

const std::map<std::uint32_t, std::size_t> kKnownCounts = {
    {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},   {7, 1},  {8, 5},
    {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2},  {15, 1}, {16, 14},
    {18, 5}, {20, 5}, {21, 2}, {24, 15}, {27, 5}};

std::mutex g_cache_mutex;
std::map<std::uint32_t, GroupCatalogue> g_cache;

// Keeps the candidates that are not isomorphic to an earlier one.
std::vector<AbstractGroup> dedup(const std::vector<AbstractGroup>& cands) {
  struct Kept {
    AbstractGroup g;
    GroupInvariants inv;
  };
  std::vector<Kept> kept;
  for (const auto& c : cands) {
    auto rc = enumerate_regular(c);
    auto inv = group_invariants(rc.group);
    bool dup = false;
    for (const auto& k : kept) {
      if (k.inv == inv && isomorphic(k.g, c)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back({c, inv});
  }
  std::vector<AbstractGroup> out;
  for (auto& k : kept) out.push_back(std::move(k.g));
  return out;
}

std::vector<AbstractGroup> metacyclic_candidates(std::uint32_t n) {
  std::vector<AbstractGroup> out;
  for (std::uint32_t m = n; m >= 1; --m) {
    if (n % m) continue;
    std::uint32_t k = n / m;
    for (std::uint32_t r = 1; r <= std::max<std::uint32_t>(m, 1); ++r) {
      if (m > 1 && (r >= m || std::gcd(r, m) != 1)) continue;
      if (m > 1 && powmod(r, k, m) != 1) continue;
      for (std::uint32_t t = 0; t < m; ++t) {
        if ((static_cast<std::uint64_t>(r) * t) % m != t % m) continue;
        out.push_back(metacyclic_group(m, k, t, m == 1 ? 0 : r));
      }
      if (m == 1) break;
    }
  }
  return out;
}

std::vector<AbstractGroup> build_catalogue(std::uint32_t n) {
  if (n == 1) return {AbstractGroup()};
  if (is_squarefree(n)) return squarefree_groups(n);
  std::vector<AbstractGroup> cands = metacyclic_candidates(n);
  for (std::uint32_t a = 2; a * a <= n; ++a) {
    if (n % a) continue;
    for (const auto& x : groups_of_order(a).groups) {
      for (const auto& y : groups_of_order(n / a).groups) cands.push_back(direct_product(y, x));
    }
  }
  for (std::uint32_t k = 2; k < n; ++k) {
    if (n % k) continue;
    for (const auto& base : groups_of_order(n / k).groups) {
      if (base.order() == 1) continue;
      auto aut = automorphism_group(base).underlying;
      FiniteGroup fa(aut);
      const auto& cls = fa.element_classes();
      std::vector<char> seen(fa.class_sizes().size(), 0);
      for (Elt x = 1; x < fa.order(); ++x) {
        if (seen[cls[x]] || k % fa.elt_order(x) != 0) continue;
        seen[cls[x]] = 1;
        auto img = fa.images(x);
        cands.push_back(semidirect_cyclic(base, std::vector<Elt>(img.begin(), img.end()), k));
      }
    }
  }
  auto groups = dedup(cands);
  std::stable_partition(groups.begin(), groups.end(),
                        [](const AbstractGroup& g) { return g.is_abelian(); });
  return groups;
}

}  // namespace

AbstractGroup::AbstractGroup(std::vector<std::uint32_t> table, std::string tag)
    : table_(std::move(table)), tag_(std::move(tag)) {
  std::size_t sz = table_.size();
  n_ = static_cast<std::uint32_t>(std::lround(std::sqrt(static_cast<double>(sz))));
  if (static_cast<std::size_t>(n_) * n_ != sz || n_ == 0) {
    throw PreconditionError("multiplication table is not square");
  }
  inverse_.assign(n_, 0);
  for (Elt a = 0; a < n_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) throw PreconditionError("element 0 is not the identity");
    for (Elt b = 0; b < n_; ++b) {
      if (mul(a, b) == 0) inverse_[a] = b;
    }
  }
  std::vector<Elt> els(n_);
  std::iota(els.begin(), els.end(), 0u);
  std::stable_sort(els.begin(), els.end(),
                   [&](Elt x, Elt y) { return elt_order(x) > elt_order(y); });
  std::vector<char> in(n_, 0);
  in[0] = 1;
  std::size_t have = 1;
  for (Elt x : els) {
    if (have == n_) break;
    if (in[x]) continue;
    gens_.push_back(x);
    std::vector<Elt> list;
    for (Elt y = 0; y < n_; ++y) {
      if (in[y]) list.push_back(y);
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (Elt g : gens_) {
        Elt z = mul(list[i], g);
        if (!in[z]) {
          in[z] = 1;
          list.push_back(z);
        }
      }
    }
    have = list.size();
  }
}

std::uint32_t AbstractGroup::elt_order(Elt a) const {
  std::uint32_t o = 1;
  for (Elt y = a; y != 0; y = mul(y, a)) ++o;
  return a == 0 ? 1 : o;
}

bool AbstractGroup::is_abelian() const {
  for (Elt a : gens_) {
    for (Elt b : gens_) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

bool AbstractGroup::check_axioms() const {
  for (Elt a = 0; a < n_; ++a) {
    std::vector<char> row(n_, 0), col(n_, 0);
    for (Elt b = 0; b < n_; ++b) {
      if (mul(a, b) >= n_) return false;
      row[mul(a, b)] = 1;
      col[mul(b, a)] = 1;
    }
    if (std::count(row.begin(), row.end(), 1) != n_ ||
        std::count(col.begin(), col.end(), 1) != n_) {
      return false;
    }
    if (mul(a, inverse_[a]) != 0 || mul(inverse_[a], a) != 0) return false;
  }
  if (n_ <= 64) {
    for (Elt a = 0; a < n_; ++a) {
      for (Elt b = 0; b < n_; ++b) {
        for (Elt c = 0; c < n_; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        }
      }
    }
    return true;
  }
  std::uint64_t state = 0x853c49e6748fea9bULL;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<Elt>((state >> 33) % n_);
  };
  for (int i = 0; i < 200000; ++i) {
    Elt a = next(), b = next(), c = next();
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  }
  return true;
}

bool order_supported(std::uint32_t n) {
  if (n == 0) return false;
  if (kKnownCounts.count(n)) return true;
  return n <= 255 && is_squarefree(n);
}

std::string supported_orders_text() {
  return "1-16, 18, 20, 21, 24, 27 and squarefree orders up to 255";
}

const GroupCatalogue& groups_of_order(std::uint32_t n) {
  if (!order_supported(n)) {
    throw UnsupportedOrderError("unsupported order " + std::to_string(n) +
                                "; supported orders are " + supported_orders_text());
  }
  {
    std::lock_guard lock(g_cache_mutex);
    auto it = g_cache.find(n);
    if (it != g_cache.end()) return it->second;
  }
  GroupCatalogue cat;
  cat.order = n;
  cat.groups = build_catalogue(n);
  auto known = kKnownCounts.find(n);
  if (known != kKnownCounts.end() && cat.groups.size() != known->second) {
    throw VerificationError("found " + std::to_string(cat.groups.size()) +
                            " groups of order " + std::to_string(n) + ", expected " +
                            std::to_string(known->second));
  }
  for (std::size_t i = 0; i < cat.groups.size(); ++i) {
    auto& g = cat.groups[i];
    g.set_label(std::to_string(n) + "." + std::to_string(i + 1));
    if (g.is_abelian()) {
      std::string name = abelian_name(g);
      if (g.squarefree()) name = "cyclic";
      if (n == 1) name = "trivial";
      g.set_tag(name);
    }
  }
  std::lock_guard lock(g_cache_mutex);
  return g_cache.emplace(n, std::move(cat)).first->second;
}

std::vector<AbstractGroup> squarefree_groups(std::uint32_t n) {
  if (n == 0 || !is_squarefree(n)) {
    throw PreconditionError(std::to_string(n) + " is not squarefree");
  }
  if (n == 1) return {AbstractGroup()};
  std::vector<AbstractGroup> cands;
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    std::uint32_t e = n / d;
    for (std::uint32_t k = 1; k < std::max<std::uint32_t>(e, 2); ++k) {
      if (e > 1 && std::gcd(k, e) != 1) continue;
      if (mult_order(k, e) != d) continue;
      auto g = metacyclic_group(e, d, 0, e == 1 ? 0 : k);
      SquarefreeData sd{e, d, k, e > 1 ? 1u : 0u, d > 1 ? e : 0u};
      g.set_squarefree(sd);
      std::ostringstream tag;
      if (d == 1) {
        tag << "cyclic";
      } else {
        tag << "metacyclic(" << e << "," << d << "," << k << ")";
      }
      g.set_tag(tag.str());
      cands.push_back(std::move(g));
    }
  }
  return dedup(cands);
}

AbstractGroup cyclic_group(std::uint32_t n) {
  std::vector<std::uint32_t> t(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  }
  return AbstractGroup(std::move(t), n == 1 ? "trivial" : "C" + std::to_string(n));
}

AbstractGroup metacyclic_group(std::uint32_t m, std::uint32_t k, std::uint32_t t,
                               std::uint32_t r) {
  if (m == 0 || k == 0) throw PreconditionError("metacyclic parameters must be positive");
  if (m > 1 && (powmod(r, k, m) != 1 || (static_cast<std::uint64_t>(r) * t) % m != t % m)) {
    throw PreconditionError("inconsistent metacyclic parameters");
  }
  const std::uint32_t n = m * k;
  std::vector<std::uint64_t> rp(k + 1, 1);
  for (std::uint32_t j = 1; j <= k; ++j) rp[j] = m > 1 ? rp[j - 1] * r % m : 0;
  std::vector<std::uint32_t> tab(static_cast<std::size_t>(n) * n);
  for (std::uint32_t j = 0; j < k; ++j) {
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t y = 0; y < k; ++y) {
        for (std::uint32_t x = 0; x < m; ++x) {
          // a^i b^j a^x b^y = a^(i + r^j x) b^(j + y), with b^k = a^t
          std::uint64_t ai = (i + rp[j] * x) % m;
          std::uint32_t bj = j + y;
          if (bj >= k) {
            bj -= k;
            ai = (ai + t) % m;
          }
          tab[static_cast<std::size_t>(i + m * j) * n + (x + m * y)] =
              static_cast<std::uint32_t>(ai + m * bj);
        }
      }
    }
  }
  std::ostringstream tag;
  tag << "metacyclic(m=" << m << ",k=" << k << ",t=" << t << ",r=" << r << ")";
  return AbstractGroup(std::move(tab), tag.str());
}

AbstractGroup direct_product(const AbstractGroup& a, const AbstractGroup& b) {
  const std::uint32_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::uint32_t> tab(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      tab[static_cast<std::size_t>(x) * n + y] =
          a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
    }
  }
  auto name = [](const AbstractGroup& g) { return g.label().empty() ? g.tag() : g.label(); };
  return AbstractGroup(std::move(tab), "direct(" + name(a) + " x " + name(b) + ")");
}

AbstractGroup semidirect_cyclic(const AbstractGroup& a, const std::vector<Elt>& alpha,
                                std::uint32_t k) {
  const std::uint32_t na = a.order(), n = na * k;
  std::vector<std::vector<Elt>> powers(k, std::vector<Elt>(na));
  for (Elt x = 0; x < na; ++x) powers[0][x] = x;
  for (std::uint32_t i = 1; i < k; ++i) {
    for (Elt x = 0; x < na; ++x) powers[i][x] = alpha[powers[i - 1][x]];
  }
  for (Elt x = 0; x < na; ++x) {
    if (alpha[powers[k - 1][x]] != x) throw PreconditionError("automorphism order does not divide k");
  }
  std::vector<std::uint32_t> tab(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (Elt x = 0; x < na; ++x) {
      for (std::uint32_t j = 0; j < k; ++j) {
        for (Elt y = 0; y < na; ++y) {
          tab[static_cast<std::size_t>(x + na * i) * n + (y + na * j)] =
              a.mul(x, powers[i][y]) + na * ((i + j) % k);
        }
      }
    }
  }
  std::string base = a.label().empty() ? a.tag() : a.label();
  return AbstractGroup(std::move(tab), "semidirect(" + base + " : C" + std::to_string(k) + ")");
}

AbstractGroup from_finite_group(const FiniteGroup& g, std::string tag) {
  const std::uint32_t n = g.order();
  std::vector<std::uint32_t> tab(static_cast<std::size_t>(n) * n);
  for (Elt a = 0; a < n; ++a) {
    for (Elt b = 0; b < n; ++b) tab[static_cast<std::size_t>(a) * n + b] = g.mul(a, b);
  }
  return AbstractGroup(std::move(tab), std::move(tag));
}

PermGroup regular_representation(const AbstractGroup& n) {
  std::vector<Permutation> gens;
  for (Elt g : n.generators()) {
    std::vector<Point> img(n.order());
    for (Elt x = 0; x < n.order(); ++x) img[x] = static_cast<Point>(n.mul(g, x));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n.order(), std::move(gens));
}

RegularGroup enumerate_regular(const AbstractGroup& n) {
  RegularGroup r{FiniteGroup(regular_representation(n)), {}, {}};
  r.abstract_of.resize(n.order());
  r.finite_of.resize(n.order());
  for (Elt x = 0; x < n.order(); ++x) {
    Elt a = r.group.images(x)[0];
    r.abstract_of[x] = a;
    r.finite_of[a] = x;
  }
  return r;
}

std::string abelian_name(const AbstractGroup& g) {
  if (!g.is_abelian()) throw PreconditionError("group is not abelian");
  const std::uint32_t n = g.order();
  if (n == 1) return "trivial";
  // For each prime p, the number of cyclic factors of order >= p^i is
  // log_p(|Omega_i| / |Omega_{i-1}|), Omega_i = {x : x^(p^i) = 1}.
  std::vector<std::uint32_t> factors;
  std::uint32_t rest = n;
  std::vector<std::vector<std::uint32_t>> prime_parts;
  for (std::uint32_t p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    std::vector<std::uint32_t> counts;  // counts[i] = #factors of order >= p^(i+1)
    std::uint64_t pi = p;
    std::uint32_t prev = 1;
    while (true) {
      std::uint32_t omega = 0;
      for (Elt x = 0; x < n; ++x) omega += pi % g.elt_order(x) == 0;
      if (omega == prev) break;
      std::uint32_t ratio = omega / prev, c = 0;
      while (ratio > 1) {
        ratio /= p;
        ++c;
      }
      counts.push_back(c);
      prev = omega;
      pi *= p;
    }
    std::vector<std::uint32_t> parts;  // cyclic factor orders, largest first
    for (std::size_t f = 0; f < counts[0]; ++f) {
      std::uint32_t q = 1;
      for (std::size_t i = 0; i < counts.size() && counts[i] > f; ++i) q *= p;
      parts.push_back(q);
    }
    prime_parts.push_back(parts);
  }
  std::size_t rank = 0;
  for (const auto& pp : prime_parts) rank = std::max(rank, pp.size());
  for (std::size_t f = 0; f < rank; ++f) {
    std::uint32_t q = 1;
    for (const auto& pp : prime_parts) {
      if (f < pp.size()) q *= pp[f];
    }
    factors.push_back(q);
  }
  std::sort(factors.begin(), factors.end());
  std::string s;
  for (auto q : factors) {
    if (!s.empty()) s += "x";
    s += "C" + std::to_string(q);
  }
  return s;
}

bool isomorphic(const AbstractGroup& a, const AbstractGroup& b) {
  if (a.order() != b.order()) return false;
  auto ra = enumerate_regular(a);
  auto rb = enumerate_regular(b);
  if (!(group_invariants(ra.group) == group_invariants(rb.group))) return false;
  SearchOptions opt;
  opt.modulo_inner = true;
  bool found = false;
  for_each_isomorphism(ra.group, rb.group, search_generators(ra.group, ra.group.whole()), opt,
                       [&](const std::vector<Elt>&) {
                         found = true;
                         return false;
                       });
  return found;
}

}  // namespace parhgs
