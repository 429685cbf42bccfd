#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "parhgs/hgs.hpp"
#include "parhgs/perm_group.hpp"

namespace parhgs {

inline constexpr int kGroupFormatVersion = 1;

nlohmann::json to_json(const Permutation& p);
/// Accepts an image-array string, a JSON array of points, or cycle notation
/// (which needs the degree).
Permutation permutation_from_json(const nlohmann::json& j, std::size_t degree = 0);
Permutation permutation_from_json_based(const nlohmann::json& j, std::size_t degree, bool one_based);

nlohmann::json to_json(const PermGroup& g);
PermGroup group_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<Permutation>& perms);
std::vector<Permutation> permutations_from_json(const nlohmann::json& j, std::size_t degree);

struct PairFile {
  std::size_t degree = 0;
  std::vector<Permutation> g;
  std::vector<Permutation> h;
};
/// {degree, G: [perms], H: [perms]}; points are 1-based when the file says
/// "one_based": true.
PairFile parse_pair_file(const std::string& text);

nlohmann::json to_json(const PairWitness& w);
nlohmann::json to_json(const ParallelReport& r);
nlohmann::json to_json(const DegreeSummary& s);
nlohmann::json to_json(const CatalogueEntry& e);
/// "Degree,TransClasses,NoHGS"
std::string summary_csv_header();
std::string summary_csv_row(const DegreeSummary& s);

}  // namespace parhgs
