#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parhgs/perm_group.hpp"

namespace parhgs {

/// Distinct odd primes p > q. When q does not divide p - 1 only the cyclic
/// group of order pq exists and e0 = 0, k = 0.
struct PqParameters {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint32_t e0 = 0;       // q^e0 exactly divides p - 1
  std::uint32_t s = 0;        // (p - 1) / q^e0
  std::uint32_t k = 0;        // least residue of order q mod p
  std::uint32_t a_alpha = 0;  // least residue of order q^e0 mod p
  std::uint32_t a_beta = 0;   // least residue of order s mod p

  static PqParameters make(std::uint32_t p, std::uint32_t q);
  std::uint32_t n() const { return p * q; }
  bool burnside() const { return e0 == 0; }
};

/// One group of a parameterized family, with its parameter values
/// (keys among X, Y, t, c, u, d).
struct FamilyMember {
  PermGroup group;
  std::string family_tag;  // "NxX", "JxY", "G1", "G2"
  std::map<std::string, std::uint64_t> params;
  std::string describe() const;
};

/// Hol(C_pq) on the points i + p*j for sigma^i tau^j.
PermGroup cyclic_holomorph(const PqParameters& pr);
/// Hol(C_p x| C_q) = P x| <T, A, B> on the points i + p*j for sigma^i tau^j,
/// generated by e1, e2, T, A, B in this order.
PermGroup metacyclic_holomorph(const PqParameters& pr);

std::vector<FamilyMember> cyclic_type_transitive_subgroups(const PqParameters& pr);
std::vector<FamilyMember> metacyclic_type_transitive_subgroups(const PqParameters& pr);

struct PredictedCounts {
  std::uint64_t cl_count = 0;
  std::uint64_t aut_orbits = 0;
  std::uint64_t iso_classes = 0;
  auto operator<=>(const PredictedCounts&) const = default;
  std::string str() const;
};

/// Closed-form counts of index-pq subgroups for a family member.
PredictedCounts predicted_counts(const FamilyMember& m, const PqParameters& pr);

struct PqCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PqEntryResult {
  std::string type;  // "cyclic" or "metacyclic"
  std::string description;
  std::uint64_t order = 0;
  PredictedCounts predicted;
  PredictedCounts computed;
  bool pass = false;
};

struct PqReport {
  PqParameters params;
  std::vector<PqCheck> checks;
  std::vector<PqEntryResult> entries;
  std::vector<std::string> collisions;  // family members landing in one class
  bool pass() const;
};

struct PqOptions {
  unsigned threads = 1;
};

PqReport verify_pq(const PqParameters& pr, const PqOptions& opt = {});

}  // namespace parhgs
