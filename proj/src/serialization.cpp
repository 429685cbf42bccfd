#include "parhgs/serialization.hpp"

#include "parhgs/errors.hpp"

namespace parhgs {

using nlohmann::json;

Permutation permutation_from_json_based(const json& j, std::size_t degree, bool one_based) {
  if (j.is_array()) {
    std::vector<Point> img;
    for (const auto& v : j) {
      long p = v.get<long>() - (one_based ? 1 : 0);
      if (p < 0) throw ParseError("negative point in image array");
      img.push_back(static_cast<Point>(p));
    }
    if (degree != 0 && img.size() != degree) throw ParseError("image array has wrong length");
    try {
      return Permutation(std::move(img));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  if (!j.is_string()) throw ParseError("permutation must be a string or an array");
  auto s = j.get<std::string>();
  auto first = s.find_first_not_of(" \t");
  if (first != std::string::npos && s[first] == '(' && degree == 0) {
    throw ParseError("cycle notation needs a degree");
  }
  return Permutation::parse(s, degree, one_based && first != std::string::npos && s[first] == '(');
}

json to_json(const Permutation& p) { return p.to_string(); }

Permutation permutation_from_json(const json& j, std::size_t degree) {
  return permutation_from_json_based(j, degree, false);
}

json to_json(const PermGroup& g) {
  return json{{"version", kGroupFormatVersion},
              {"degree", g.degree()},
              {"generators", to_json(g.generators())}};
}

PermGroup group_from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != kGroupFormatVersion) {
      throw ParseError("unsupported group format version");
    }
    auto degree = j.at("degree").get<std::size_t>();
    return PermGroup(degree, permutations_from_json(j.at("generators"), degree));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed group: ") + e.what());
  }
}

json to_json(const std::vector<Permutation>& perms) {
  json a = json::array();
  for (const auto& p : perms) a.push_back(to_json(p));
  return a;
}

std::vector<Permutation> permutations_from_json(const json& j, std::size_t degree) {
  if (!j.is_array()) throw ParseError("expected a list of permutations");
  std::vector<Permutation> out;
  for (const auto& x : j) out.push_back(permutation_from_json(x, degree));
  return out;
}

PairFile parse_pair_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("pair file is not valid JSON: ") + e.what());
  }
  PairFile pf;
  try {
    pf.degree = j.at("degree").get<std::size_t>();
    bool one_based = j.value("one_based", false);
    for (const auto& x : j.at("G")) pf.g.push_back(permutation_from_json_based(x, pf.degree, one_based));
    for (const auto& x : j.at("H")) pf.h.push_back(permutation_from_json_based(x, pf.degree, one_based));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed pair file: ") + e.what());
  }
  if (pf.degree == 0) throw ParseError("pair file degree must be positive");
  return pf;
}

json to_json(const PairWitness& w) {
  json j{{"mapping", to_json(w.mapping)}, {"verified", w.verified}};
  if (w.conjugator) j["conjugator"] = to_json(*w.conjugator);
  return j;
}

json to_json(const ParallelReport& r) {
  json j{{"source_entry", r.source_entry},
         {"h_class", r.h_class},
         {"h_order", r.h_order},
         {"class_size", r.class_size},
         {"h_generators", to_json(r.h_generators)},
         {"core_order", r.core_order},
         {"quotient_degree", r.quotient_degree},
         {"quotient_generators", to_json(r.quotient_generators)},
         {"no_hgs", r.no_hgs},
         {"scanned", r.scanned}};
  j["match"] = r.match ? json(*r.match) : json(nullptr);
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (!r.admitted_types.empty()) j["admitted_types"] = r.admitted_types;
  return j;
}

json to_json(const DegreeSummary& s) {
  json rows = json::array();
  for (const auto& t : s.per_type) {
    rows.push_back(json{{"type_label", t.label}, {"type_tag", t.tag}, {"classes", t.classes},
                        {"no_hgs", t.no_hgs}});
  }
  return json{{"degree", s.degree},
              {"total_transitive_classes", s.total_transitive_classes},
              {"no_hgs_entries", s.no_hgs_entries},
              {"no_hgs_pairs", s.no_hgs_pairs},
              {"per_type", rows},
              {"witness_entries", s.witness_entries}};
}

json to_json(const CatalogueEntry& e) {
  return json{{"entry_id", e.entry_id},
              {"degree", e.degree},
              {"type_label", e.type_label},
              {"type_tag", e.type_tag},
              {"order", e.order},
              {"class_size", e.class_size},
              {"generators", to_json(e.group.generators())},
              {"stabilizer", to_json(e.stabilizer.generators())}};
}

std::string summary_csv_header() { return "Degree,TransClasses,NoHGS"; }

std::string summary_csv_row(const DegreeSummary& s) {
  return std::to_string(s.degree) + "," + std::to_string(s.total_transitive_classes) + "," +
         std::to_string(s.no_hgs_entries);
}

}  // namespace parhgs
