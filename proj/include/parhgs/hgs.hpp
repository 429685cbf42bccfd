#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parhgs/isomorphism.hpp"
#include "parhgs/perm_group.hpp"

namespace parhgs {

inline constexpr int kCatalogueFormatVersion = 1;
inline constexpr int kAlgorithmVersion = 1;

/// A transitive subgroup of Hol(N), up to conjugacy in Hol(N).
struct CatalogueEntry {
  std::size_t degree = 0;
  std::string type_label;  // label of N, e.g. "8.3"
  std::string type_tag;    // e.g. "C2xC4"
  std::size_t type_index = 0;
  PermGroup group;
  PermGroup stabilizer;  // Stab(0)
  std::uint64_t order = 0;
  std::size_t entry_id = 0;
  std::uint64_t class_size = 0;  // conjugates in Hol(N)
  std::string key;               // canonical key inside the enumerated Hol(N)
};

struct CatalogueOptions {
  std::string cache_dir;  // empty disables caching
  bool resume = true;     // reuse cache files written by an earlier run
  std::uint64_t max_group_order = 100'000;
  /// Resource exhaustion is reported once this passes; finished cache files stay.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::function<void(const std::string&)> log;
};

/// All transitive entries of one degree. Permutation-isomorphism targets are
/// built lazily and shared between threads.
class Catalogue {
 public:
  Catalogue(std::size_t degree, std::vector<CatalogueEntry> entries);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<CatalogueEntry>& entries() const noexcept { return entries_; }
  const CatalogueEntry& entry(std::size_t id) const { return entries_.at(id); }
  /// Type labels in catalogue order.
  const std::vector<std::string>& type_labels() const noexcept { return labels_; }
  /// Entries of the given order, sorted by (type, entry_id).
  std::vector<std::size_t> candidates(std::uint64_t order) const;
  const PermIsoTarget& target(std::size_t id) const;

 private:
  std::size_t degree_;
  std::vector<CatalogueEntry> entries_;
  std::vector<std::string> labels_;
  mutable std::vector<std::unique_ptr<std::once_flag>> once_;
  mutable std::vector<std::unique_ptr<PermIsoTarget>> targets_;
};

Catalogue build_catalogue(std::size_t n, const CatalogueOptions& opt = {});

struct ParallelReport {
  std::size_t source_entry = 0;
  std::size_t h_class = 0;  // index among the index-n classes of the entry
  std::uint64_t h_order = 0;
  std::uint64_t class_size = 0;
  std::vector<Permutation> h_generators;
  std::uint64_t core_order = 0;
  std::size_t quotient_degree = 0;
  std::vector<Permutation> quotient_generators;  // G/C acting on G/H
  std::optional<std::size_t> match;
  std::optional<PairWitness> witness;  // maps quotient_generators into the match
  bool no_hgs = false;
  std::size_t scanned = 0;  // same-order entries examined
  /// Filled when every type is requested rather than the first match.
  std::vector<std::string> admitted_types;
};

struct AnalyzeOptions {
  bool all_types = false;
};

std::vector<ParallelReport> analyze_parallel(const CatalogueEntry& entry, const Catalogue& cat,
                                             const AnalyzeOptions& opt = {});

struct DegreeSummary {
  std::size_t degree = 0;
  std::size_t total_transitive_classes = 0;
  std::size_t no_hgs_entries = 0;
  std::size_t no_hgs_pairs = 0;  // index-n classes without a match, over all entries
  struct TypeRow {
    std::string label;
    std::string tag;
    std::size_t classes = 0;
    std::size_t no_hgs = 0;
  };
  std::vector<TypeRow> per_type;
  std::vector<std::size_t> witness_entries;
};

struct DetectOptions {
  CatalogueOptions catalogue;
  unsigned threads = 1;
  bool all_types = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Reports for every entry, indexed by entry_id.
std::vector<std::vector<ParallelReport>> analyze_catalogue(const Catalogue& cat,
                                                           const DetectOptions& opt = {});
DegreeSummary summarize(const Catalogue& cat,
                        const std::vector<std::vector<ParallelReport>>& reports);
DegreeSummary detect_no_hgs(std::size_t n, const DetectOptions& opt = {});

/// Labels of the types N for which (G, G_sub) is pair-isomorphic to a
/// catalogue entry. A pair with nontrivial core is replaced by its quotient.
std::set<std::string> hgs_types_admitted(const PermGroup& g, const PermGroup& g_sub,
                                         std::size_t n, const Catalogue& cat);
std::set<std::string> hgs_types_admitted(const PermGroup& g, const PermGroup& g_sub,
                                         std::size_t n);

/// Least prime q > max(lower, n) with gcd(q - 1, n) = 1.
std::uint64_t find_extension_prime(std::uint64_t n, std::uint64_t lower,
                                   std::uint64_t cap = 10'000'000);

struct ExtendedEntry {
  std::size_t degree = 0;
  std::uint64_t prime = 0;
  PermGroup group;       // G x C_m on points x + n*j
  PermGroup stabilizer;  // Stab(0)
  PermGroup h;           // the no-HGS witness H x {1}
  std::uint64_t core_order = 0;
  /// Largest |Aut(Y)| over groups Y of order degree / prime.
  std::uint64_t aut_bound = 0;
  /// Every |Aut(Y)| over groups Y of order degree / prime.
  std::vector<std::uint64_t> aut_orders;
  std::vector<std::string> transcript;
  bool verified = false;
};

/// G x C_q <= Hol(N x C_q) with witness H x {1}. The no-HGS property is
/// certified by checking that the quotient pair of (G, H) matches no entry of
/// the degree-n catalogue, together with the hypotheses on q.
ExtendedEntry extend_family(const CatalogueEntry& entry, const PermGroup& h, std::uint64_t q,
                            const Catalogue& cat);

/// Repeated extension; element i has degree n * q_1 ... q_{i+1}.
std::vector<ExtendedEntry> iterate_family(const CatalogueEntry& entry, const PermGroup& h,
                                          const std::vector<std::uint64_t>& primes,
                                          const Catalogue& cat);

bool is_prime(std::uint64_t n);

}  // namespace parhgs
