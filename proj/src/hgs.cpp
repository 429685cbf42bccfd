#include "parhgs/hgs.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "parhgs/autohol.hpp"
#include "parhgs/errors.hpp"
#include "parhgs/finite_group.hpp"
#include "parhgs/grouplib.hpp"
#include "parhgs/serialization.hpp"
#include "parhgs/subgroups.hpp"

namespace parhgs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void log_line(const CatalogueOptions& opt, const std::string& s) {
  if (opt.log) opt.log(s);
}

fs::path cache_file(const CatalogueOptions& opt, std::size_t n, const std::string& label) {
  return fs::path(opt.cache_dir) / ("catalogue_deg" + std::to_string(n) + "_" + label + ".json");
}

struct TypeEntries {
  std::vector<PermGroup> groups;
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::string> keys;
};

std::optional<TypeEntries> load_type(const fs::path& file, std::size_t n, const std::string& label) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (j.at("format_version").get<int>() != kCatalogueFormatVersion ||
        j.at("grouplib_version").get<int>() != kGrouplibVersion ||
        j.at("algorithm_version").get<int>() != kAlgorithmVersion ||
        j.at("degree").get<std::size_t>() != n || j.at("type_label").get<std::string>() != label ||
        !j.value("complete", false)) {
      return std::nullopt;
    }
    TypeEntries t;
    for (const auto& e : j.at("entries")) {
      t.groups.emplace_back(n, permutations_from_json(e.at("generators"), n));
      if (t.groups.back().order() != e.at("order").get<std::uint64_t>()) return std::nullopt;
      t.class_sizes.push_back(e.at("class_size").get<std::uint64_t>());
      t.keys.push_back(e.at("key").get<std::string>());
    }
    return t;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void save_type(const fs::path& file, std::size_t n, const AbstractGroup& ng, const TypeEntries& t) {
  json entries = json::array();
  for (std::size_t i = 0; i < t.groups.size(); ++i) {
    entries.push_back(json{{"generators", to_json(t.groups[i].generators())},
                           {"order", t.groups[i].order()},
                           {"class_size", t.class_sizes[i]},
                           {"key", t.keys[i]}});
  }
  json j{{"format_version", kCatalogueFormatVersion},
         {"grouplib_version", kGrouplibVersion},
         {"algorithm_version", kAlgorithmVersion},
         {"degree", n},
         {"type_label", ng.label()},
         {"type_tag", ng.tag()},
         {"complete", true},
         {"entries", entries}};
  fs::create_directories(file.parent_path());
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << "\n";
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, file);
}

TypeEntries compute_type(const AbstractGroup& ng, const CatalogueOptions& opt) {
  auto hol = holomorph(ng);
  if (hol.group.order() > opt.max_group_order) {
    throw ResourceError("Hol(" + ng.tag() + ") has order " + std::to_string(hol.group.order()) +
                        ", above the bound " + std::to_string(opt.max_group_order));
  }
  TypeEntries t;
  for (auto& c : transitive_subgroup_classes(hol, opt.max_group_order)) {
    t.groups.push_back(c.representative);
    t.class_sizes.push_back(c.class_size);
    t.keys.push_back(c.rep.key.hex());
  }
  return t;
}

// Transitive and with Stab(0) of index n.
void assert_entry(const CatalogueEntry& e) {
  if (e.group.degree() != e.degree || !e.group.is_transitive() ||
      e.stabilizer.order() * e.degree != e.order) {
    throw VerificationError("catalogue entry " + std::to_string(e.entry_id) + " is not transitive");
  }
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// G acting on points x + n*j of n*q, with C_q moving j.
std::vector<Permutation> product_with_cyclic(const std::vector<Permutation>& gens, std::size_t n,
                                             std::uint64_t q) {
  std::vector<Permutation> out;
  const std::size_t d = n * q;
  for (const auto& g : gens) {
    std::vector<Point> img(d);
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t x = 0; x < n; ++x) img[x + n * j] = static_cast<Point>(g[x] + n * j);
    }
    out.emplace_back(std::move(img));
  }
  std::vector<Point> img(d);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t x = 0; x < n; ++x) img[x + n * j] = static_cast<Point>(x + n * ((j + 1) % q));
  }
  out.emplace_back(std::move(img));
  return out;
}

std::vector<Permutation> lift_fixed(const std::vector<Permutation>& gens, std::size_t n,
                                    std::uint64_t q) {
  std::vector<Permutation> out;
  for (const auto& g : gens) {
    std::vector<Point> img(n * q);
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t x = 0; x < n; ++x) img[x + n * j] = static_cast<Point>(g[x] + n * j);
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

std::string yes_no(bool b) { return b ? "ok" : "FAILED"; }

}  // namespace

Catalogue::Catalogue(std::size_t degree, std::vector<CatalogueEntry> entries)
    : degree_(degree), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (labels_.empty() || labels_.back() != e.type_label) labels_.push_back(e.type_label);
    once_.push_back(std::make_unique<std::once_flag>());
  }
  targets_.resize(entries_.size());
}

std::vector<std::size_t> Catalogue::candidates(std::uint64_t order) const {
  std::vector<std::size_t> out;
  for (const auto& e : entries_) {
    if (e.order == order) out.push_back(e.entry_id);
  }
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = entries_[a];
    const auto& y = entries_[b];
    return std::tie(x.type_index, x.entry_id) < std::tie(y.type_index, y.entry_id);
  });
  return out;
}

const PermIsoTarget& Catalogue::target(std::size_t id) const {
  std::call_once(*once_.at(id),
                 [&] { targets_[id] = std::make_unique<PermIsoTarget>(entries_[id].group); });
  return *targets_[id];
}

Catalogue build_catalogue(std::size_t n, const CatalogueOptions& opt) {
  if (n == 0 || n > UINT16_MAX || !order_supported(static_cast<std::uint32_t>(n))) {
    throw UnsupportedOrderError("degree " + std::to_string(n) + " is not supported; supported: " +
                                supported_orders_text());
  }
  const auto& groups = groups_of_order(static_cast<std::uint32_t>(n)).groups;
  std::vector<CatalogueEntry> entries;
  for (std::size_t ti = 0; ti < groups.size(); ++ti) {
    const auto& ng = groups[ti];
    std::optional<TypeEntries> t;
    fs::path file;
    if (!opt.cache_dir.empty()) {
      file = cache_file(opt, n, ng.label());
      if (opt.resume) t = load_type(file, n, ng.label());
      if (t) log_line(opt, "loaded " + file.string());
    }
    if (!t) {
      if (opt.deadline && std::chrono::steady_clock::now() > *opt.deadline) {
        throw ResourceError("time limit reached while building the degree-" + std::to_string(n) +
                            " catalogue");
      }
      log_line(opt, "enumerating transitive subgroups of Hol(" + ng.tag() + ")");
      t = compute_type(ng, opt);
      if (!opt.cache_dir.empty()) save_type(file, n, ng, *t);
    }
    for (std::size_t i = 0; i < t->groups.size(); ++i) {
      CatalogueEntry e;
      e.degree = n;
      e.type_label = ng.label();
      e.type_tag = ng.tag();
      e.type_index = ti;
      e.group = t->groups[i];
      e.stabilizer = e.group.stabilizer(0);
      e.order = e.group.order();
      e.entry_id = entries.size();
      e.class_size = t->class_sizes[i];
      e.key = t->keys[i];
      assert_entry(e);
      entries.push_back(std::move(e));
    }
  }
  return Catalogue(n, std::move(entries));
}

std::vector<ParallelReport> analyze_parallel(const CatalogueEntry& entry, const Catalogue& cat,
                                             const AnalyzeOptions& opt) {
  if (cat.degree() != entry.degree) throw PreconditionError("catalogue degree differs from the entry");
  const std::size_t n = entry.degree;
  FiniteGroup fg(entry.group);
  LatticeOptions lo = index_n_options(fg, n);
  lo.max_group_order = std::max<std::uint64_t>(lo.max_group_order, entry.order);
  SubgroupLattice lat(fg, lo);
  std::vector<ParallelReport> out;
  for (const auto& c : lat.classes()) {
    if (c.rep.order * n != entry.order) continue;
    ParallelReport r;
    r.source_entry = entry.entry_id;
    r.h_class = out.size();
    r.h_order = c.rep.order;
    r.class_size = c.class_size;
    r.h_generators = fg.to_perm_group(c.rep).generators();
    CosetTable t = fg.left_cosets(c.rep);
    r.core_order = fg.coset_kernel(t).order;
    r.quotient_degree = t.index();
    r.quotient_generators = fg.coset_action(t);
    PermGroup j(n, r.quotient_generators);
    if (!j.is_transitive() || j.order() * r.core_order != entry.order) {
      throw VerificationError("quotient pair is not faithful and transitive");
    }
    PermIsoTarget tj(j);
    for (std::size_t id : cat.candidates(j.order())) {
      const auto& cand = cat.entry(id);
      if (opt.all_types && std::find(r.admitted_types.begin(), r.admitted_types.end(),
                                     cand.type_label) != r.admitted_types.end()) {
        continue;
      }
      ++r.scanned;
      auto sigma = permutation_isomorphism(tj, cat.target(id));
      if (!sigma) continue;
      if (!r.match) {
        PairWitness w;
        for (const auto& g : r.quotient_generators) w.mapping.push_back(*sigma * g * sigma->inverse());
        w.conjugator = *sigma;
        w.verified = (*sigma)[0] == 0;
        r.match = id;
        r.witness = std::move(w);
      }
      r.admitted_types.push_back(cand.type_label);
      if (!opt.all_types) break;
    }
    r.no_hgs = !r.match;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<ParallelReport>> analyze_catalogue(const Catalogue& cat,
                                                           const DetectOptions& opt) {
  const std::size_t total = cat.entries().size();
  std::vector<std::vector<ParallelReport>> reports(total);
  std::atomic<std::size_t> next{0}, done{0};
  std::exception_ptr error;
  std::mutex mu;
  AnalyzeOptions ao;
  ao.all_types = opt.all_types;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= total) return;
      try {
        if (opt.deadline && std::chrono::steady_clock::now() > *opt.deadline) {
          throw ResourceError("time limit reached during the parallel analysis");
        }
        reports[i] = analyze_parallel(cat.entry(i), cat, ao);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        next = total;
        return;
      }
      std::size_t d = ++done;
      if (opt.progress) {
        std::lock_guard lock(mu);
        opt.progress(d, total);
      }
    }
  };
  unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return reports;
}

DegreeSummary summarize(const Catalogue& cat,
                        const std::vector<std::vector<ParallelReport>>& reports) {
  DegreeSummary s;
  s.degree = cat.degree();
  s.total_transitive_classes = cat.entries().size();
  std::map<std::string, std::size_t> row_of;
  for (const auto& e : cat.entries()) {
    if (!row_of.count(e.type_label)) {
      row_of[e.type_label] = s.per_type.size();
      s.per_type.push_back({e.type_label, e.type_tag, 0, 0});
    }
    auto& row = s.per_type[row_of[e.type_label]];
    ++row.classes;
    std::size_t failing = 0;
    for (const auto& r : reports.at(e.entry_id)) failing += r.no_hgs ? 1 : 0;
    s.no_hgs_pairs += failing;
    if (failing) {
      ++row.no_hgs;
      ++s.no_hgs_entries;
      s.witness_entries.push_back(e.entry_id);
    }
  }
  return s;
}

DegreeSummary detect_no_hgs(std::size_t n, const DetectOptions& opt) {
  auto cat = build_catalogue(n, opt.catalogue);
  return summarize(cat, analyze_catalogue(cat, opt));
}

std::set<std::string> hgs_types_admitted(const PermGroup& g, const PermGroup& g_sub,
                                         std::size_t n, const Catalogue& cat) {
  if (cat.degree() != n) throw PreconditionError("catalogue degree differs from n");
  if (!g_sub.is_subgroup_of(g) || g_sub.order() * n != g.order()) {
    throw PreconditionError("the designated subgroup must have index n");
  }
  auto qp = permutation_pair_of_quotient(g, g_sub);
  PermIsoTarget tj(qp.j);
  std::set<std::string> out;
  for (std::size_t id : cat.candidates(qp.j.order())) {
    const auto& cand = cat.entry(id);
    if (out.count(cand.type_label)) continue;
    if (permutation_isomorphism(tj, cat.target(id))) out.insert(cand.type_label);
  }
  return out;
}

std::set<std::string> hgs_types_admitted(const PermGroup& g, const PermGroup& g_sub,
                                         std::size_t n) {
  return hgs_types_admitted(g, g_sub, n, build_catalogue(n));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t find_extension_prime(std::uint64_t n, std::uint64_t lower, std::uint64_t cap) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("n odd required, n >= 3");
  for (std::uint64_t q = std::max(lower, n) + 1; q <= cap; ++q) {
    if (is_prime(q) && gcd64(q - 1, n) == 1) return q;
  }
  throw ResourceError("no suitable prime below the search cap " + std::to_string(cap));
}

namespace {

struct ExtensionSource {
  std::size_t degree;
  std::vector<Permutation> gens;
  std::vector<Permutation> h_gens;
  std::vector<Permutation> quotient;  // action on the cosets of H, aligned with gens
  std::uint64_t order;
  std::vector<std::uint64_t> aut_orders;
  bool certified;
  std::vector<std::string> transcript;
};

ExtendedEntry extend_step(const ExtensionSource& src, std::uint64_t q) {
  ExtendedEntry out;
  auto& tr = out.transcript;
  const std::size_t n = src.degree;
  tr = src.transcript;
  tr.push_back("extension of degree " + std::to_string(n) + " by q = " + std::to_string(q));
  if (n % 2 == 0) throw PreconditionError("n odd required (degree " + std::to_string(n) + ")");
  if (!is_prime(q)) throw PreconditionError(std::to_string(q) + " is not prime");
  if (gcd64(q - 1, n) != 1) {
    throw PreconditionError("gcd(q - 1, n) = " + std::to_string(gcd64(q - 1, n)) + " for q = " +
                            std::to_string(q) + ", n = " + std::to_string(n));
  }
  if (q <= n) {
    throw PreconditionError("q = " + std::to_string(q) + " must exceed n = " + std::to_string(n));
  }
  if (n * q > UINT16_MAX) throw ResourceError("extended degree exceeds the point range");
  tr.push_back("  gcd(q - 1, n) = 1: ok");
  tr.push_back("  q > n: ok (the Sylow q-subgroup of any J of order nq is normal)");
  std::uint64_t bound = 0;
  for (auto a : src.aut_orders) {
    bound = std::max(bound, a);
    if (a % q == 0) {
      throw PreconditionError("q divides |Aut(Y)| = " + std::to_string(a) + " for a group Y of order n");
    }
  }
  tr.push_back("  q does not divide |Aut(Y)| for the " + std::to_string(src.aut_orders.size()) +
               " groups Y of order n (max |Aut(Y)| = " + std::to_string(bound) + "): ok");
  tr.push_back(std::string("  q > max |Aut(Y)|: ") + (q > bound ? "yes" : "no (not needed)"));
  out.aut_bound = bound;
  out.aut_orders = src.aut_orders;

  out.degree = n * q;
  out.prime = q;
  out.group = PermGroup(out.degree, product_with_cyclic(src.gens, n, q));
  out.stabilizer = out.group.stabilizer(0);
  out.h = PermGroup(out.degree, lift_fixed(src.h_gens, n, q));
  PermGroup base_stab = PermGroup(n, src.gens).stabilizer(0);
  PermGroup quotient(out.degree, product_with_cyclic(src.quotient, n, q));

  bool order_ok = out.group.order() == src.order * q;
  bool transitive = out.group.is_transitive();
  bool stab_ok = out.stabilizer.order() == base_stab.order();
  bool h_ok = out.h.is_subgroup_of(out.group) && out.h.order() * out.degree == out.group.order();
  bool quotient_ok = quotient.is_transitive() && out.group.order() % quotient.order() == 0;
  out.core_order = quotient_ok ? out.group.order() / quotient.order() : 0;
  tr.push_back("  |G x C_q| = " + std::to_string(out.group.order()) + ": " + yes_no(order_ok));
  tr.push_back("  transitive on " + std::to_string(out.degree) + " points: " + yes_no(transitive));
  tr.push_back("  Stab(0) = G' x 1, order " + std::to_string(out.stabilizer.order()) + ": " +
               yes_no(stab_ok));
  tr.push_back("  H x 1 has index " + std::to_string(out.degree) + ": " + yes_no(h_ok));
  tr.push_back("  core of H x 1 has order " + std::to_string(out.core_order) +
               "; quotient pair is (G/C x C_q, H/C x 1)");
  tr.push_back(std::string("  source quotient pair matches no transitive pair of degree ") +
               std::to_string(n) + ": " + (src.certified ? "certified" : "NOT certified"));
  out.verified = src.certified && order_ok && transitive && stab_ok && h_ok && quotient_ok;
  tr.push_back(std::string("  every J of order nq is C_q x Y, and a matching pair would project to "
                           "Hol(Y) with C_q in the kernel: ") +
               (out.verified ? "no-HGS verified" : "not verified"));
  return out;
}

ExtensionSource source_from_entry(const CatalogueEntry& entry, const PermGroup& h,
                                  const Catalogue& cat) {
  const std::size_t n = entry.degree;
  if (cat.degree() != n) throw PreconditionError("catalogue degree differs from the entry");
  if (n % 2 == 0) throw PreconditionError("n odd required (degree " + std::to_string(n) + ")");
  if (!h.is_subgroup_of(entry.group) || h.order() * n != entry.order) {
    throw PreconditionError("H must be an index-n subgroup of the entry");
  }
  ExtensionSource src;
  src.degree = n;
  src.gens = entry.group.generators();
  src.h_gens = h.generators();
  src.order = entry.order;
  FiniteGroup fg(entry.group);
  CosetTable t = fg.left_cosets(fg.from_perm_group(h));
  // coset_action follows fg.generators(); express those as the source generators
  src.gens.clear();
  for (Elt x : fg.generators()) src.gens.push_back(fg.perm(x));
  src.quotient = fg.coset_action(t);
  PermGroup j(n, src.quotient);
  PermIsoTarget tj(j);
  std::size_t scanned = 0;
  bool matched = false;
  for (std::size_t id : cat.candidates(j.order())) {
    ++scanned;
    if (permutation_isomorphism(tj, cat.target(id))) {
      matched = true;
      break;
    }
  }
  src.certified = !matched;
  src.transcript.push_back("source entry " + std::to_string(entry.entry_id) + " (type " +
                           entry.type_tag + "), |G| = " + std::to_string(entry.order) +
                           ", |H| = " + std::to_string(h.order()) + ", |G/C| = " +
                           std::to_string(j.order()));
  src.transcript.push_back("  scanned " + std::to_string(scanned) + " catalogue entries of order " +
                           std::to_string(j.order()) + ": " +
                           (matched ? "a match exists" : "no match"));
  for (const auto& y : groups_of_order(static_cast<std::uint32_t>(n)).groups) {
    src.aut_orders.push_back(automorphism_group(y).underlying.order());
  }
  return src;
}

}  // namespace

ExtendedEntry extend_family(const CatalogueEntry& entry, const PermGroup& h, std::uint64_t q,
                            const Catalogue& cat) {
  return extend_step(source_from_entry(entry, h, cat), q);
}

std::vector<ExtendedEntry> iterate_family(const CatalogueEntry& entry, const PermGroup& h,
                                          const std::vector<std::uint64_t>& primes,
                                          const Catalogue& cat) {
  std::vector<ExtendedEntry> out;
  if (primes.empty()) return out;
  ExtensionSource src = source_from_entry(entry, h, cat);
  for (std::uint64_t q : primes) {
    ExtendedEntry e = extend_step(src, q);
    ExtensionSource next;
    next.degree = e.degree;
    next.gens = product_with_cyclic(src.gens, src.degree, q);
    next.h_gens = lift_fixed(src.h_gens, src.degree, q);
    next.quotient = product_with_cyclic(src.quotient, src.degree, q);
    next.order = e.group.order();
    // Every Y' of order nq is C_q x Y with |Aut(Y')| = (q - 1)|Aut(Y)|.
    for (auto a : src.aut_orders) next.aut_orders.push_back((q - 1) * a);
    next.certified = e.verified;
    next.transcript = e.transcript;
    next.transcript.push_back("  groups of order " + std::to_string(e.degree) +
                              " are C_q x Y, so |Aut| = (q - 1)|Aut(Y)|");
    out.push_back(std::move(e));
    src = std::move(next);
  }
  return out;
}

}  // namespace parhgs
