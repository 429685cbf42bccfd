#include "parhgs/finite_group.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>

#include "parhgs/errors.hpp"

namespace parhgs {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::string SubgroupKey::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

SubgroupKey SubgroupKey::from_hex(const std::string& s) {
  if (s.size() != 32) throw ParseError("subgroup key must be 32 hex digits");
  SubgroupKey k;
  k.hi = std::stoull(s.substr(0, 16), nullptr, 16);
  k.lo = std::stoull(s.substr(16), nullptr, 16);
  return k;
}

SubgroupKey key_of(const ElementSet& s) {
  SubgroupKey k{0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL ^ s.size()};
  std::vector<std::uint64_t> blocks;
  blocks.reserve(s.num_blocks());
  boost::to_block_range(s, std::back_inserter(blocks));
  std::uint64_t i = 0;
  for (auto b : blocks) {
    ++i;
    if (b == 0) continue;
    k.hi = mix64(k.hi ^ mix64(b + i * 0x9e3779b97f4a7c15ULL));
    k.lo = mix64(k.lo + (b ^ (i * 0xc2b2ae3d27d4eb4fULL)));
  }
  return k;
}

std::vector<Elt> Subgroup::elements() const {
  std::vector<Elt> out;
  out.reserve(order);
  for (auto i = elems.find_first(); i != ElementSet::npos; i = elems.find_next(i)) {
    out.push_back(static_cast<Elt>(i));
  }
  return out;
}

FiniteGroup::FiniteGroup(const PermGroup& g, std::uint64_t limit)
    : group_(g), degree_(g.degree()) {
  if (g.order() > limit) {
    throw ResourceError("group of order " + std::to_string(g.order()) +
                        " exceeds enumeration bound " + std::to_string(limit));
  }
  const auto n = static_cast<std::uint32_t>(g.order());
  std::uint64_t cap = std::bit_ceil(static_cast<std::uint64_t>(n) * 2 + 2);
  slots_.assign(cap, UINT32_MAX);
  slot_mask_ = cap - 1;
  flat_.reserve(static_cast<std::size_t>(n) * degree_);

  auto insert = [&](std::span<const Point> img) -> std::pair<Elt, bool> {
    std::uint64_t h = hash_points(img) & slot_mask_;
    while (slots_[h] != UINT32_MAX) {
      Elt e = slots_[h];
      if (std::equal(img.begin(), img.end(), flat_.begin() + static_cast<std::ptrdiff_t>(e * degree_))) {
        return {e, false};
      }
      h = (h + 1) & slot_mask_;
    }
    Elt e = order_++;
    slots_[h] = e;
    flat_.insert(flat_.end(), img.begin(), img.end());
    return {e, true};
  };

  std::vector<Point> ident(degree_);
  std::iota(ident.begin(), ident.end(), Point{0});
  insert(ident);

  const auto& pg = g.generators();
  std::vector<std::uint32_t> parent{0}, via{0};
  std::vector<Elt> left_rows;  // left_rows[k * n + x] = index(gen_k * x)
  const bool with_table = n <= kTableLimit;
  if (with_table) left_rows.assign(static_cast<std::size_t>(n) * pg.size(), 0);
  std::vector<Point> buf(degree_);
  for (Elt x = 0; x < order_; ++x) {
    for (std::size_t k = 0; k < pg.size(); ++k) {
      const Point* xi = flat_.data() + static_cast<std::size_t>(x) * degree_;
      for (std::size_t i = 0; i < degree_; ++i) buf[i] = pg[k][xi[i]];
      auto [y, fresh] = insert(buf);
      if (fresh) {
        parent.push_back(x);
        via.push_back(static_cast<std::uint32_t>(k));
      }
      if (with_table) left_rows[k * n + x] = y;
    }
  }
  if (order_ != n) throw VerificationError("enumeration disagrees with chain order");

  for (const auto& p : pg) gens_.push_back(*find(p.images()));

  inverse_.resize(order_);
  for (Elt x = 0; x < order_; ++x) {
    auto img = images(x);
    for (std::size_t i = 0; i < degree_; ++i) buf[img[i]] = static_cast<Point>(i);
    inverse_[x] = *find(buf);
  }
  if (with_table) build_table(parent, via, left_rows);

  orders_.resize(order_);
  for (Elt x = 0; x < order_; ++x) {
    if (with_table) {
      std::uint32_t cnt = 1;
      for (Elt y = x; y != 0; y = mul(y, x)) ++cnt;
      orders_[x] = cnt;
    } else {
      orders_[x] = static_cast<std::uint32_t>(perm(x).order());
    }
  }

  // Conjugacy classes: orbits under conjugation by the generators.
  classes_.assign(order_, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<Elt> stack;
  for (Elt x = 0; x < order_; ++x) {
    if (classes_[x] != UINT32_MAX) continue;
    std::uint32_t size = 0;
    classes_[x] = next;
    stack.assign(1, x);
    while (!stack.empty()) {
      Elt y = stack.back();
      stack.pop_back();
      ++size;
      for (Elt s : gens_) {
        Elt z = conj(y, s);
        if (classes_[z] == UINT32_MAX) {
          classes_[z] = next;
          stack.push_back(z);
        }
      }
    }
    class_sizes_.push_back(size);
    ++next;
  }
}

void FiniteGroup::build_table(const std::vector<std::uint32_t>& parent,
                              const std::vector<std::uint32_t>& via,
                              const std::vector<Elt>& left_rows) {
  const std::size_t n = order_;
  table_.assign(n * n, 0);
  for (std::size_t b = 0; b < n; ++b) table_[b] = static_cast<std::uint16_t>(b);
  for (std::size_t a = 1; a < n; ++a) {
    const std::uint16_t* prow = table_.data() + parent[a] * n;
    std::uint16_t* row = table_.data() + a * n;
    const Elt* lk = left_rows.data() + via[a] * n;
    for (std::size_t b = 0; b < n; ++b) row[b] = static_cast<std::uint16_t>(lk[prow[b]]);
  }
}

Elt FiniteGroup::mul(Elt a, Elt b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
  thread_local std::vector<Point> buf;
  buf.resize(degree_);
  auto ai = images(a);
  auto bi = images(b);
  for (std::size_t i = 0; i < degree_; ++i) buf[i] = ai[bi[i]];
  return *find(buf);
}

Elt FiniteGroup::pow(Elt a, long long e) const {
  if (e < 0) {
    a = inverse_[a];
    e = -e;
  }
  Elt acc = 0;
  Elt base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Permutation FiniteGroup::perm(Elt a) const {
  auto img = images(a);
  return Permutation(std::vector<Point>(img.begin(), img.end()));
}

std::optional<Elt> FiniteGroup::find(std::span<const Point> img) const {
  if (img.size() != degree_) return std::nullopt;
  std::uint64_t h = hash_points(img) & slot_mask_;
  while (slots_[h] != UINT32_MAX) {
    Elt e = slots_[h];
    if (std::equal(img.begin(), img.end(),
                   flat_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(e) * degree_))) {
      return e;
    }
    h = (h + 1) & slot_mask_;
  }
  return std::nullopt;
}

Elt FiniteGroup::index_of(const Permutation& p) const {
  auto e = find(p);
  if (!e) throw PreconditionError("permutation " + p.to_cycles() + " is not in the group");
  return *e;
}

Subgroup FiniteGroup::finish(ElementSet elems, std::vector<Elt> gens) const {
  Subgroup s;
  s.order = static_cast<std::uint32_t>(elems.count());
  s.key = key_of(elems);
  s.elems = std::move(elems);
  s.gens = std::move(gens);
  return s;
}

Subgroup FiniteGroup::whole() const {
  ElementSet all(order_);
  all.set();
  return finish(std::move(all), gens_);
}

Subgroup FiniteGroup::trivial() const {
  ElementSet e(order_);
  e.set(0);
  return finish(std::move(e), {});
}

Subgroup FiniteGroup::closure(std::span<const Elt> gens) const {
  std::vector<Elt> g;
  for (Elt x : gens) {
    if (x != 0 && std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
  }
  ElementSet elems(order_);
  elems.set(0);
  std::vector<Elt> list{0};
  for (std::size_t k = 0; k < list.size(); ++k) {
    for (Elt s : g) {
      Elt y = mul(list[k], s);
      if (!elems.test(y)) {
        elems.set(y);
        list.push_back(y);
      }
    }
  }
  return finish(std::move(elems), std::move(g));
}

Subgroup FiniteGroup::join(const Subgroup& k, Elt c) const {
  if (k.contains(c)) return k;
  std::vector<Elt> gens = k.gens;
  gens.push_back(c);
  const std::vector<Elt> kel = k.elements();
  ElementSet elems = k.elems;
  std::vector<Elt> reps{0};
  auto add_coset = [&](Elt r) {
    reps.push_back(r);
    for (Elt h : kel) elems.set(mul(h, r));
  };
  add_coset(c);
  for (std::size_t pos = 1; pos < reps.size(); ++pos) {
    for (Elt s : gens) {
      Elt x = mul(reps[pos], s);
      if (!elems.test(x)) add_coset(x);
    }
  }
  return finish(std::move(elems), std::move(gens));
}

Subgroup FiniteGroup::conjugate(const Subgroup& s, Elt g) const {
  ElementSet elems(order_);
  const Elt gi = inverse_[g];
  for (auto i = s.elems.find_first(); i != ElementSet::npos; i = s.elems.find_next(i)) {
    elems.set(mul(mul(g, static_cast<Elt>(i)), gi));
  }
  std::vector<Elt> gens;
  gens.reserve(s.gens.size());
  for (Elt x : s.gens) gens.push_back(mul(mul(g, x), gi));
  return finish(std::move(elems), std::move(gens));
}

Subgroup FiniteGroup::intersection(const Subgroup& a, const Subgroup& b) const {
  return from_elements(a.elems & b.elems);
}

Subgroup FiniteGroup::from_elements(const ElementSet& elems) const {
  Subgroup s = trivial();
  for (auto i = elems.find_first(); i != ElementSet::npos; i = elems.find_next(i)) {
    if (!s.contains(static_cast<Elt>(i))) s = join(s, static_cast<Elt>(i));
  }
  if (s.elems != elems) throw PreconditionError("element set is not a subgroup");
  return s;
}

Subgroup FiniteGroup::from_perm_group(const PermGroup& h) const {
  std::vector<Elt> gens;
  for (const auto& p : h.generators()) gens.push_back(index_of(p));
  return closure(gens);
}

PermGroup FiniteGroup::to_perm_group(const Subgroup& s) const {
  return PermGroup(degree_, perms(s.gens));
}

std::vector<Permutation> FiniteGroup::perms(std::span<const Elt> elts) const {
  std::vector<Permutation> out;
  out.reserve(elts.size());
  for (Elt x : elts) out.push_back(perm(x));
  return out;
}

bool FiniteGroup::is_normal(const Subgroup& h) const {
  for (Elt g : gens_) {
    for (Elt x : h.gens) {
      if (!h.contains(conj(x, g))) return false;
    }
  }
  return true;
}

Subgroup FiniteGroup::normalizer(const Subgroup& h) const {
  ElementSet elems(order_);
  for (Elt g = 0; g < order_; ++g) {
    bool ok = true;
    for (Elt x : h.gens) {
      if (!h.contains(conj(x, g))) {
        ok = false;
        break;
      }
    }
    if (ok) elems.set(g);
  }
  return from_elements(elems);
}

Subgroup FiniteGroup::centralizer(Elt x) const {
  ElementSet elems(order_);
  for (Elt g = 0; g < order_; ++g) {
    if (mul(g, x) == mul(x, g)) elems.set(g);
  }
  return from_elements(elems);
}

Subgroup FiniteGroup::center() const {
  ElementSet elems(order_);
  elems.set();
  for (Elt s : gens_) {
    for (Elt g = 0; g < order_; ++g) {
      if (elems.test(g) && mul(g, s) != mul(s, g)) elems.reset(g);
    }
  }
  return from_elements(elems);
}

Subgroup FiniteGroup::normal_closure(const Subgroup& h) const {
  Subgroup s = h;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < s.gens.size(); ++i) {
      for (Elt g : gens_) {
        Elt y = conj(s.gens[i], g);
        if (!s.contains(y)) {
          s = join(s, y);
          grew = true;
        }
      }
    }
  }
  return s;
}

Subgroup FiniteGroup::derived_subgroup() const {
  std::vector<Elt> comms;
  for (Elt a : gens_) {
    for (Elt b : gens_) {
      Elt c = mul(mul(a, b), mul(inverse_[a], inverse_[b]));
      if (c != 0) comms.push_back(c);
    }
  }
  return normal_closure(closure(comms));
}

CosetTable FiniteGroup::left_cosets(const Subgroup& h) const {
  CosetTable t;
  t.coset_of.assign(order_, UINT32_MAX);
  const std::vector<Elt> hel = h.elements();
  std::vector<Elt> sorted = gens_;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto add = [&](Elt r) {
    auto id = static_cast<std::uint32_t>(t.reps.size());
    t.reps.push_back(r);
    for (Elt x : hel) t.coset_of[mul(r, x)] = id;
  };
  add(0);
  for (std::size_t pos = 0; pos < t.reps.size(); ++pos) {
    for (Elt s : sorted) {
      Elt y = mul(s, t.reps[pos]);
      if (t.coset_of[y] == UINT32_MAX) add(y);
    }
  }
  return t;
}

std::vector<Permutation> FiniteGroup::coset_action(const CosetTable& t) const {
  std::vector<Permutation> out;
  const std::size_t m = t.index();
  for (Elt s : gens_) {
    std::vector<Point> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Point>(t.coset_of[mul(s, t.reps[i])]);
    out.emplace_back(std::move(img));
  }
  return out;
}

Subgroup FiniteGroup::coset_kernel(const CosetTable& t) const {
  ElementSet elems(order_);
  for (Elt g = 0; g < order_; ++g) {
    bool fixes = true;
    for (std::size_t i = 0; i < t.index() && fixes; ++i) {
      fixes = t.coset_of[mul(g, t.reps[i])] == i;
    }
    if (fixes) elems.set(g);
  }
  return from_elements(elems);
}

const std::vector<std::uint32_t>& FiniteGroup::element_classes() const { return classes_; }
const std::vector<std::uint32_t>& FiniteGroup::class_sizes() const { return class_sizes_; }

std::vector<Elt> FiniteGroup::small_generating_set(
    const Subgroup& s, const std::function<std::uint64_t(Elt)>& rank) const {
  std::vector<Elt> cand = s.elements();
  std::stable_sort(cand.begin(), cand.end(),
                   [&](Elt a, Elt b) { return rank(a) < rank(b); });
  Subgroup cur = trivial();
  std::vector<Elt> gens;
  for (Elt x : cand) {
    if (cur.order == s.order) break;
    if (cur.contains(x)) continue;
    cur = join(cur, x);
    gens.push_back(x);
  }
  return gens;
}

std::vector<Elt> FiniteGroup::small_generating_set(const Subgroup& s) const {
  // Descending element order, ties by index.
  return small_generating_set(s, [&](Elt x) {
    return (static_cast<std::uint64_t>(UINT32_MAX - orders_[x]) << 32) | x;
  });
}

}  // namespace parhgs
