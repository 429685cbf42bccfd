#include "parhgs/isomorphism.hpp"

#include <algorithm>
#include <unordered_set>

#include "parhgs/cosets.hpp"
#include "parhgs/errors.hpp"
#include "parhgs/finite_group.hpp"
#include "parhgs/homsearch.hpp"

namespace parhgs {

namespace {

std::size_t cycle_len_through(const Permutation& p, Point x) {
  std::size_t len = 1;
  for (Point y = p[x]; y != x; y = p[y]) ++len;
  return len;
}

std::vector<Permutation> images_of_generators(const FiniteGroup& fg, const FiniteGroup& fm,
                                              const std::vector<Elt>& f) {
  std::vector<Permutation> out;
  for (Elt g : fg.generators()) out.push_back(fm.perm(f[g]));
  return out;
}

}  // namespace

PermIsoTarget::PermIsoTarget(const PermGroup& m) : m_(m) {
  elements_ = m.elements();
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    const auto& x = elements_[i];
    auto ct = x.cycle_type();
    ++hist_[ct];
    by_shape_[{ct, cycle_len_through(x, 0)}].push_back(i);
    index_.emplace(x, i);
  }
  stab_gens_ = m.stabilizer(0).generators();
  // Generators with the rarest shapes first.
  std::vector<std::uint32_t> order(elements_.size());
  std::vector<std::size_t> freq(elements_.size());
  for (const auto& [shape, ids] : by_shape_) {
    for (auto i : ids) freq[i] = ids.size();
  }
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (freq[a] != freq[b]) return freq[a] < freq[b];
    return elements_[a].order() > elements_[b].order();
  });
  std::unordered_set<Permutation, PermutationHash> closure{Permutation(m.degree())};
  for (auto i : order) {
    if (closure.size() == elements_.size()) break;
    if (closure.count(elements_[i])) continue;
    search_gens_.push_back(i);
    std::vector<Permutation> gens;
    for (auto k : search_gens_) gens.push_back(elements_[k]);
    auto el = brute_force_closure(m.degree(), gens, elements_.size());
    closure = std::unordered_set<Permutation, PermutationHash>(el.begin(), el.end());
  }
}

class PermIsoSearch {
 public:
  PermIsoSearch(const PermIsoTarget& j, const PermIsoTarget& m)
      : j_(j), m_(m), n_(j.m_.degree()), sigma_(n_, kNone), used_(n_, 0) {
    for (auto gi : j.search_gens_) {
      const auto& g = j.elements_[gi];
      gens_.push_back(&g);
      auto it = m.by_shape_.find({g.cycle_type(), cycle_len_through(g, 0)});
      cands_.push_back(it == m.by_shape_.end() ? nullptr : &it->second);
    }
    images_.resize(gens_.size());
  }

  std::optional<Permutation> run() {
    if (gens_.empty()) {
      if (m_.elements_.size() == 1) return Permutation(n_);
      return std::nullopt;
    }
    for (const auto* c : cands_) {
      if (!c) return std::nullopt;
    }
    if (dfs(0)) return Permutation(std::vector<Point>(sigma_.begin(), sigma_.end()));
    return std::nullopt;
  }

 private:
  static constexpr Point kNone = UINT16_MAX;

  bool propagate(std::size_t depth) {
    std::fill(sigma_.begin(), sigma_.end(), kNone);
    std::fill(used_.begin(), used_.end(), 0);
    sigma_[0] = 0;
    used_[0] = 1;
    queue_.assign(1, 0);
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      Point x = queue_[q];
      for (std::size_t k = 0; k <= depth; ++k) {
        Point y = (*gens_[k])[x];
        Point sy = (*images_[k])[sigma_[x]];
        if (sigma_[y] == kNone) {
          if (used_[sy]) return false;
          sigma_[y] = sy;
          used_[sy] = 1;
          queue_.push_back(y);
        } else if (sigma_[y] != sy) {
          return false;
        }
      }
    }
    return true;
  }

  // Candidates for the first image up to conjugation by Stab_M(0).
  std::vector<std::uint32_t> first_candidates() const {
    const auto& c = *cands_[0];
    if (m_.stab_gens_.empty()) return c;
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> reps, stack;
    for (auto i : c) {
      if (seen.count(i)) continue;
      reps.push_back(i);
      seen.insert(i);
      stack.assign(1, i);
      while (!stack.empty()) {
        auto z = stack.back();
        stack.pop_back();
        for (const auto& s : m_.stab_gens_) {
          auto w = m_.index_.at(s * m_.elements_[z] * s.inverse());
          if (seen.insert(w).second) stack.push_back(w);
        }
      }
    }
    return reps;
  }

  bool dfs(std::size_t depth) {
    if (depth == gens_.size()) return queue_.size() == n_;
    std::vector<std::uint32_t> choices = depth == 0 ? first_candidates() : *cands_[depth];
    for (auto ci : choices) {
      images_[depth] = &m_.elements_[ci];
      if (!propagate(depth)) continue;
      if (dfs(depth + 1)) return true;
    }
    return false;
  }

  const PermIsoTarget& j_;
  const PermIsoTarget& m_;
  std::size_t n_;
  std::vector<const Permutation*> gens_;
  std::vector<const std::vector<std::uint32_t>*> cands_;
  std::vector<const Permutation*> images_;
  std::vector<Point> sigma_;
  std::vector<char> used_;
  std::vector<Point> queue_;
};

std::optional<Permutation> PermIsoTarget::conjugator_from(const PermIsoTarget& j) const {
  return permutation_isomorphism(j, *this);
}

std::optional<Permutation> permutation_isomorphism(const PermIsoTarget& j, const PermIsoTarget& m) {
  if (j.group().degree() != m.group().degree() || j.order() != m.order()) return std::nullopt;
  if (!j.group().is_transitive() || !m.group().is_transitive()) {
    throw PreconditionError("permutation isomorphism needs transitive groups");
  }
  if (j.cycle_histogram() != m.cycle_histogram()) return std::nullopt;
  PermIsoSearch s(j, m);
  auto sigma = s.run();
  if (sigma) {
    for (const auto& g : j.group().generators()) {
      if (!m.group().contains(*sigma * g * sigma->inverse())) {
        throw VerificationError("permutation isomorphism failed to verify");
      }
    }
  }
  return sigma;
}

std::optional<PairWitness> find_isomorphism(const PermGroup& g, const PermGroup& m,
                                            std::uint64_t bound) {
  if (g.order() != m.order()) return std::nullopt;
  if (g.order() > bound) throw ResourceError("isomorphism test bounded to order " + std::to_string(bound));
  FiniteGroup fg(g), fm(m);
  if (!(group_invariants(fg) == group_invariants(fm))) return std::nullopt;
  SearchOptions opt;
  opt.modulo_inner = true;
  std::optional<PairWitness> w;
  for_each_isomorphism(fg, fm, search_generators(fg, fg.whole()), opt,
                       [&](const std::vector<Elt>& f) {
                         w = PairWitness{images_of_generators(fg, fm, f), std::nullopt, true};
                         return false;
                       });
  return w;
}

bool verify_witness(const PermGroup& g, const PermGroup& g_sub, const PermGroup& m,
                    const PermGroup& m_sub, const PairWitness& w) {
  if (w.mapping.size() != g.generators().size() || g.order() != m.order()) return false;
  FiniteGroup fg(g), fm(m);
  const Elt kNone = UINT32_MAX;
  std::vector<Elt> img;
  for (const auto& p : w.mapping) {
    auto e = fm.find(p);
    if (!e) return false;
    img.push_back(*e);
  }
  std::vector<Elt> f(fg.order(), kNone);
  std::vector<char> used(fm.order(), 0);
  f[0] = 0;
  used[0] = 1;
  std::vector<Elt> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elt x = queue[i];
    for (std::size_t k = 0; k < img.size(); ++k) {
      Elt y = fg.mul(x, fg.generators()[k]);
      Elt fy = fm.mul(f[x], img[k]);
      if (f[y] == kNone) {
        if (used[fy]) return false;
        f[y] = fy;
        used[fy] = 1;
        queue.push_back(y);
      } else if (f[y] != fy) {
        return false;
      }
    }
  }
  if (queue.size() != fg.order()) return false;
  if (g_sub.order() != m_sub.order()) return false;
  for (const auto& s : g_sub.generators()) {
    auto e = fg.find(s);
    if (!e || !m_sub.contains(fm.perm(f[*e]))) return false;
  }
  return true;
}

QuotientPair permutation_pair_of_quotient(const PermGroup& g, const PermGroup& h) {
  auto r = coset_action(g, h);
  auto stab = r.image.stabilizer(r.point_of_identity_coset);
  return {r.image, stab};
}

std::optional<PairWitness> pair_isomorphic(const PermGroup& g, const PermGroup& g_sub,
                                           const PermGroup& m, const PermGroup& m_sub,
                                           std::uint64_t bound) {
  if (!g_sub.is_subgroup_of(g) || !m_sub.is_subgroup_of(m)) {
    throw PreconditionError("designated subgroup is not contained in its group");
  }
  if (g.order() != m.order() || g_sub.order() != m_sub.order()) return std::nullopt;
  if (g.order() > bound) throw ResourceError("isomorphism test bounded to order " + std::to_string(bound));
  FiniteGroup fg(g), fm(m);
  Subgroup sg = fg.from_perm_group(g_sub), sm = fm.from_perm_group(m_sub);
  CosetTable tg = fg.left_cosets(sg), tm = fm.left_cosets(sm);
  Subgroup cg = fg.coset_kernel(tg), cm = fm.coset_kernel(tm);
  if (cg.order != cm.order) return std::nullopt;

  if (cg.order == 1) {
    // Faithful on the cosets: pair isomorphism is permutation isomorphism of
    // the two coset actions.
    PermGroup jg(tg.index(), fg.coset_action(tg)), jm(tm.index(), fm.coset_action(tm));
    PermIsoTarget tj(jg), tmm(jm);
    auto sigma = permutation_isomorphism(tj, tmm);
    if (!sigma) return std::nullopt;
    // Pull back through the coset action of M.
    std::unordered_map<Permutation, Elt, PermutationHash> action_to_m;
    for (Elt x = 0; x < fm.order(); ++x) {
      std::vector<Point> img(tm.index());
      for (std::size_t i = 0; i < tm.index(); ++i) {
        img[i] = static_cast<Point>(tm.coset_of[fm.mul(x, tm.reps[i])]);
      }
      action_to_m.emplace(Permutation(std::move(img)), x);
    }
    PairWitness w;
    const Permutation si = sigma->inverse();
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      Elt x = fg.generators()[k];
      std::vector<Point> img(tg.index());
      for (std::size_t i = 0; i < tg.index(); ++i) {
        img[i] = static_cast<Point>(tg.coset_of[fg.mul(x, tg.reps[i])]);
      }
      w.mapping.push_back(fm.perm(action_to_m.at(*sigma * Permutation(std::move(img)) * si)));
    }
    w.conjugator = sigma;
    w.verified = verify_witness(g, g_sub, m, m_sub, w);
    if (!w.verified) throw VerificationError("pair witness failed to verify");
    return w;
  }

  if (!(group_invariants(fg) == group_invariants(fm))) return std::nullopt;
  SearchOptions opt;
  opt.sub_a = &sg;
  opt.sub_b = &sm;
  std::optional<PairWitness> w;
  for_each_isomorphism(fg, fm, search_generators(fg, fg.whole()), opt,
                       [&](const std::vector<Elt>& f) {
                         ElementSet img(fm.order());
                         for (Elt x : sg.elements()) img.set(f[x]);
                         if (img != sm.elems) return true;
                         w = PairWitness{images_of_generators(fg, fm, f), std::nullopt, false};
                         return false;
                       });
  if (w) {
    w->verified = verify_witness(g, g_sub, m, m_sub, *w);
    if (!w->verified) throw VerificationError("pair witness failed to verify");
  }
  return w;
}

}  // namespace parhgs
