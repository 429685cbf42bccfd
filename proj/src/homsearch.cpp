#include "parhgs/homsearch.hpp"

#include <algorithm>
#include <unordered_map>

#include "parhgs/errors.hpp"

namespace parhgs {

std::vector<std::uint64_t> element_invariants(const FiniteGroup& g) {
  std::vector<std::uint32_t> roots(g.order(), 0);
  for (Elt x = 0; x < g.order(); ++x) ++roots[g.mul(x, x)];
  const auto& cls = g.element_classes();
  const auto& sizes = g.class_sizes();
  std::vector<std::uint64_t> inv(g.order());
  for (Elt x = 0; x < g.order(); ++x) {
    inv[x] = (static_cast<std::uint64_t>(g.elt_order(x)) << 40) |
             (static_cast<std::uint64_t>(sizes[cls[x]]) << 20) | roots[x];
  }
  return inv;
}

GroupInvariants group_invariants(const FiniteGroup& g) {
  GroupInvariants r;
  r.order = g.order();
  for (Elt x = 0; x < g.order(); ++x) ++r.order_histogram[g.elt_order(x)];
  r.class_sizes = g.class_sizes();
  std::sort(r.class_sizes.begin(), r.class_sizes.end());
  r.derived_order = g.derived_subgroup().order;
  r.center_order = g.center().order;
  return r;
}

std::vector<Elt> search_generators(const FiniteGroup& g, const Subgroup& s) {
  auto inv = element_invariants(g);
  std::unordered_map<std::uint64_t, std::uint32_t> freq;
  for (Elt x : s.elements()) ++freq[inv[x]];
  return g.small_generating_set(s, [&](Elt x) {
    return (static_cast<std::uint64_t>(freq[inv[x]]) << 40) |
           (static_cast<std::uint64_t>(0xFFFFF - std::min<std::uint32_t>(g.elt_order(x), 0xFFFFF)) << 20) |
           (x & 0xFFFFF);
  });
}

namespace {

class Search {
 public:
  Search(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Elt>& gens,
         const SearchOptions& opt, const IsoVisitor& visit)
      : a_(a), b_(b), gens_(gens), opt_(opt), visit_(visit),
        f_(a.order(), kNone), used_(b.order(), 0), img_(gens.size(), 0) {
    auto ia = element_invariants(a);
    auto ib = element_invariants(b);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<Elt> c;
      bool in_sub = opt.sub_a && opt.sub_a->contains(gens[i]);
      for (Elt y = 0; y < b.order(); ++y) {
        if (ib[y] != ia[gens[i]]) continue;
        if (opt.sub_b && opt.sub_b->contains(y) != in_sub) continue;
        c.push_back(y);
      }
      cand_.push_back(std::move(c));
    }
    if (opt.modulo_inner && !gens.empty()) reduce_first();
  }

  bool run() { return dfs(0); }

 private:
  static constexpr Elt kNone = UINT32_MAX;

  void reduce_first() {
    const auto& cls = b_.element_classes();
    std::vector<char> seen(b_.class_sizes().size(), 0);
    std::vector<Elt> keep;
    for (Elt y : cand_[0]) {
      if (!seen[cls[y]]) {
        seen[cls[y]] = 1;
        keep.push_back(y);
      }
    }
    cand_[0] = std::move(keep);
  }

  // Representatives of the candidates for generator 1 under conjugation by
  // the centralizer of the image r of generator 0.
  std::vector<Elt> second_candidates(Elt r) const {
    const auto& c = cand_[1];
    Subgroup cent = b_.centralizer(r);
    std::vector<Elt> cg = b_.small_generating_set(cent);
    std::vector<char> seen(b_.order(), 0);
    std::vector<Elt> reps, stack;
    for (Elt y : c) {
      if (seen[y]) continue;
      reps.push_back(y);
      seen[y] = 1;
      stack.assign(1, y);
      while (!stack.empty()) {
        Elt z = stack.back();
        stack.pop_back();
        for (Elt h : cg) {
          Elt w = b_.conj(z, h);
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
    }
    return reps;
  }

  // Extends f over <gens[0..depth]> using the Cayley graph; false on any
  // clash, non-injectivity or subgroup violation. Assignments are logged for
  // undo.
  bool propagate(std::size_t depth) {
    undo();
    f_[0] = 0;
    used_[0] = 1;
    trail_.push_back(0);
    for (std::size_t k = 0; k < trail_.size(); ++k) {
      Elt x = trail_[k];
      for (std::size_t j = 0; j <= depth; ++j) {
        Elt y = a_.mul(x, gens_[j]);
        Elt fy = b_.mul(f_[x], img_[j]);
        if (f_[y] == kNone) {
          if (used_[fy]) return false;
          if (opt_.sub_a && opt_.sub_a->contains(y) != opt_.sub_b->contains(fy)) return false;
          f_[y] = fy;
          used_[fy] = 1;
          trail_.push_back(y);
        } else if (f_[y] != fy) {
          return false;
        }
      }
    }
    return true;
  }

  void undo() {
    for (Elt x : trail_) {
      used_[f_[x]] = 0;
      f_[x] = kNone;
    }
    trail_.clear();
  }

  bool dfs(std::size_t depth) {
    if (depth == gens_.size()) {
      if (trail_.size() != a_.order() && !(gens_.empty() && a_.order() == 1)) return true;
      if (gens_.empty()) {
        std::vector<Elt> id(1, 0);
        return visit_(id);
      }
      return visit_(f_);
    }
    std::vector<Elt> choices =
        (opt_.modulo_inner && depth == 1) ? second_candidates(img_[0]) : cand_[depth];
    for (Elt y : choices) {
      if (opt_.node_limit && ++nodes_ > opt_.node_limit) {
        throw ResourceError("isomorphism search exceeded node limit");
      }
      img_[depth] = y;
      if (!propagate(depth)) continue;
      if (!dfs(depth + 1)) return false;
    }
    return true;
  }

  const FiniteGroup& a_;
  const FiniteGroup& b_;
  const std::vector<Elt>& gens_;
  const SearchOptions& opt_;
  const IsoVisitor& visit_;
  std::vector<Elt> f_;
  std::vector<char> used_;
  std::vector<Elt> img_;
  std::vector<Elt> trail_;
  std::vector<std::vector<Elt>> cand_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

bool for_each_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                          const std::vector<Elt>& gens_a, const SearchOptions& opt,
                          const IsoVisitor& visit) {
  if (a.order() != b.order()) return true;
  if ((opt.sub_a == nullptr) != (opt.sub_b == nullptr)) {
    throw PreconditionError("designated subgroups must be given on both sides");
  }
  if (opt.sub_a && opt.sub_a->order != opt.sub_b->order) return true;
  SearchOptions o = opt;
  if (o.sub_a) o.modulo_inner = false;  // inner automorphisms would move sub_b
  Search s(a, b, gens_a, o, visit);
  return s.run();
}

}  // namespace parhgs
