#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "parhgs/errors.hpp"
#include "parhgs/grouplib.hpp"
#include "parhgs/hgs.hpp"
#include "parhgs/isomorphism.hpp"
#include "parhgs/pqtheory.hpp"
#include "parhgs/serialization.hpp"

using namespace parhgs;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  std::vector<std::size_t> degrees;
  std::uint32_t p = 0, q = 0;
  std::string cache_dir;
  std::string format = "csv";
  unsigned threads = 1;
  std::uint64_t max_order = 100'000;
  double max_time = 0;  // seconds, 0 for none
  bool resume = false;
  bool emit_witnesses = false;
  std::size_t entry = 0;
  std::optional<std::size_t> h_class;
  bool auto_prime = false;
  std::vector<std::uint64_t> primes;
  std::string pair_file;
  std::string seed_fixtures;
  bool verbose = false;
};

CatalogueOptions catalogue_options(const RunConfig& c) {
  CatalogueOptions o;
  o.cache_dir = c.cache_dir;
  o.resume = c.resume || !c.cache_dir.empty();
  o.max_group_order = c.max_order;
  if (c.max_time > 0) {
    o.deadline = std::chrono::steady_clock::now() +
                 std::chrono::milliseconds(static_cast<long long>(c.max_time * 1000));
  }
  if (c.verbose) o.log = [](const std::string& s) { std::cerr << s << "\n"; };
  return o;
}

DetectOptions detect_options(const RunConfig& c) {
  DetectOptions d;
  d.catalogue = catalogue_options(c);
  d.deadline = d.catalogue.deadline;
  d.threads = c.threads;
  if (c.verbose) {
    d.progress = [](std::size_t done, std::size_t total) {
      if (done % 100 == 0 || done == total) std::cerr << "analyzed " << done << "/" << total << "\n";
    };
  }
  return d;
}

// Merges derived values into a fixture file, stamped with the producing command.
void seed_fixture(const RunConfig& c, const std::string& command, const std::string& key,
                  const json& value) {
  if (c.seed_fixtures.empty()) return;
  json store = json::object();
  {
    std::ifstream in(c.seed_fixtures);
    if (in) store = json::parse(in, nullptr, false);
    if (store.is_discarded() || !store.is_object()) store = json::object();
  }
  store[command][key] = json{{"value", value},
                             {"computed_by", "parhgs " + command},
                             {"algorithm_version", kAlgorithmVersion},
                             {"grouplib_version", kGrouplibVersion}};
  std::ofstream out(c.seed_fixtures);
  out << store.dump(2) << "\n";
}

int cmd_catalog(const RunConfig& c) {
  json rows = json::array();
  for (auto n : c.degrees) {
    auto cat = build_catalogue(n, catalogue_options(c));
    const auto count = cat.entries().size();
    seed_fixture(c, "catalog", std::to_string(n), count);
    if (c.format == "csv") {
      std::cout << n << "," << count << "\n";
    } else if (c.format == "text") {
      std::cout << "degree " << n << ": " << count << " transitive subgroup classes\n";
      for (const auto& e : cat.entries()) {
        std::cout << "  entry " << e.entry_id << " type " << e.type_label << " (" << e.type_tag
                  << ") order " << e.order << "\n";
      }
    } else {
      json entries = json::array();
      for (const auto& e : cat.entries()) entries.push_back(to_json(e));
      rows.push_back(json{{"degree", n}, {"classes", count}, {"entries", entries}});
    }
  }
  if (c.format == "json") std::cout << rows.dump(1) << "\n";
  return kOk;
}

int cmd_no_hgs(const RunConfig& c) {
  std::vector<std::string> witness_lines;
  json rows = json::array();
  if (c.format == "csv") std::cout << summary_csv_header() << "\n";
  for (auto n : c.degrees) {
    auto opt = detect_options(c);
    auto cat = build_catalogue(n, opt.catalogue);
    auto reports = analyze_catalogue(cat, opt);
    auto s = summarize(cat, reports);
    seed_fixture(c, "no-hgs", std::to_string(n),
                 json{{"classes", s.total_transitive_classes}, {"no_hgs", s.no_hgs_entries}});
    if (c.format == "csv") {
      std::cout << summary_csv_row(s) << "\n";
    } else if (c.format == "text") {
      std::cout << "degree " << n << ": " << s.total_transitive_classes << " transitive classes, "
                << s.no_hgs_entries << " with the parallel no-HGS property (" << s.no_hgs_pairs
                << " subgroup classes)\n";
      for (const auto& t : s.per_type) {
        std::cout << "  " << t.label << " " << t.tag << ": " << t.classes << " classes, " << t.no_hgs
                  << " no-HGS\n";
      }
    } else {
      rows.push_back(to_json(s));
    }
    if (c.emit_witnesses) {
      for (auto id : s.witness_entries) {
        const auto& e = cat.entry(id);
        for (const auto& r : reports[id]) {
          if (!r.no_hgs) continue;
          json w{{"degree", n},
                 {"entry", id},
                 {"type_label", e.type_label},
                 {"G", to_json(e.group.generators())},
                 {"H", to_json(r.h_generators)},
                 {"report", to_json(r)}};
          witness_lines.push_back(w.dump());
        }
      }
    }
  }
  if (c.format == "json") std::cout << rows.dump(1) << "\n";
  for (const auto& l : witness_lines) std::cout << l << "\n";
  return kOk;
}

int cmd_verify_pq(const RunConfig& c) {
  auto pr = PqParameters::make(c.p, c.q);
  PqOptions opt;
  opt.threads = c.threads;
  auto rep = verify_pq(pr, opt);
  if (c.format == "json") {
    json checks = json::array(), entries = json::array();
    for (const auto& ch : rep.checks) {
      checks.push_back(json{{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
    }
    for (const auto& e : rep.entries) {
      entries.push_back(json{{"type", e.type},
                             {"entry", e.description},
                             {"order", e.order},
                             {"predicted", {e.predicted.cl_count, e.predicted.aut_orbits, e.predicted.iso_classes}},
                             {"computed", {e.computed.cl_count, e.computed.aut_orbits, e.computed.iso_classes}},
                             {"pass", e.pass}});
    }
    std::cout << json{{"p", pr.p}, {"q", pr.q}, {"pass", rep.pass()}, {"checks", checks},
                      {"entries", entries}, {"collisions", rep.collisions}}
                     .dump(1)
              << "\n";
  } else {
    std::cout << "p = " << pr.p << ", q = " << pr.q << ", e0 = " << pr.e0 << ", s = " << pr.s
              << ", k = " << pr.k << "\n";
    for (const auto& ch : rep.checks) {
      std::cout << (ch.pass ? "pass " : "FAIL ") << ch.name << " (" << ch.detail << ")\n";
    }
    for (const auto& e : rep.entries) {
      if (e.pass && !c.verbose) continue;
      std::cout << "  " << (e.pass ? "ok   " : "DIFF ") << e.type << " " << e.description << ", order "
                << e.order << ": predicted " << e.predicted.str() << ", computed " << e.computed.str()
                << "\n";
    }
    for (const auto& col : rep.collisions) std::cout << "  same class: " << col << "\n";
    std::cout << (rep.pass() ? "all checks pass" : "verification mismatch") << "\n";
  }
  return rep.pass() ? kOk : kMismatch;
}

int cmd_analyze(const RunConfig& c) {
  std::ifstream in(c.pair_file);
  if (!in) throw ParseError("cannot read pair file " + c.pair_file);
  std::stringstream buf;
  buf << in.rdbuf();
  auto pf = parse_pair_file(buf.str());
  PermGroup g(pf.degree, pf.g), h(pf.degree, pf.h);
  if (!h.is_subgroup_of(g)) throw ParseError("H is not contained in G");
  if (g.order() % h.order() != 0) throw ParseError("H is not a subgroup of G");
  const std::uint64_t n = g.order() / h.order();
  auto qp = permutation_pair_of_quotient(g, h);
  const std::uint64_t core = g.order() / qp.j.order();
  auto cat = build_catalogue(n, catalogue_options(c));
  auto types = hgs_types_admitted(g, h, n, cat);
  if (c.format == "json") {
    std::cout << json{{"degree", n},
                      {"order", g.order()},
                      {"core_order", core},
                      {"quotient_order", qp.j.order()},
                      {"quotient_generators", to_json(qp.j.generators())},
                      {"quotient_stabilizer", to_json(qp.j_sub.generators())},
                      {"regular_quotient", qp.j_sub.order() == 1},
                      {"types", std::vector<std::string>(types.begin(), types.end())}}
                     .dump(1)
              << "\n";
    return kOk;
  }
  std::cout << "|G| = " << g.order() << ", [G:H] = " << n << ", core order " << core << "\n";
  std::cout << "quotient pair: order " << qp.j.order() << " on " << qp.j.degree() << " points"
            << (qp.j_sub.order() == 1 ? " (regular: Galois quotient)" : "") << "\n";
  for (const auto& x : qp.j.generators()) std::cout << "  " << x.to_string() << "\n";
  if (types.empty()) {
    std::cout << "no HGS of any type\n";
  } else {
    std::cout << "types:";
    for (const auto& t : types) {
      for (const auto& e : cat.entries()) {
        if (e.type_label == t) {
          std::cout << " " << t << " (" << e.type_tag << ")";
          break;
        }
      }
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_extend(const RunConfig& c) {
  if (c.degrees.size() != 1) throw PreconditionError("extend takes exactly one --degree");
  const std::size_t n = c.degrees[0];
  if (n % 2 == 0) throw PreconditionError("n odd required (degree " + std::to_string(n) + ")");
  if (!c.auto_prime && c.primes.empty()) throw PreconditionError("give --auto-prime or --primes");
  auto opt = detect_options(c);
  auto cat = build_catalogue(n, opt.catalogue);
  if (c.entry >= cat.entries().size()) throw PreconditionError("no entry " + std::to_string(c.entry));
  const auto& e = cat.entry(c.entry);
  auto reports = analyze_parallel(e, cat);
  const ParallelReport* witness = nullptr;
  for (const auto& r : reports) {
    if (r.no_hgs && (!c.h_class || *c.h_class == r.h_class)) {
      witness = &r;
      break;
    }
  }
  if (!witness) {
    throw PreconditionError("entry " + std::to_string(c.entry) + " has no parallel no-HGS witness");
  }
  PermGroup h(n, witness->h_generators);
  std::vector<std::uint64_t> primes = c.primes;
  if (c.auto_prime) {
    // q must also avoid |Aut(Y)|; take the least prime passing every check.
    std::uint64_t lower = n;
    for (;;) {
      std::uint64_t q = find_extension_prime(n, lower);
      try {
        extend_family(e, h, q, cat);
        primes = {q};
        break;
      } catch (const PreconditionError&) {
        lower = q;
      }
    }
  }
  auto chain = iterate_family(e, h, primes, cat);
  bool ok = true;
  json out = json::array();
  for (const auto& x : chain) {
    ok = ok && x.verified;
    if (c.format == "json") {
      out.push_back(json{{"degree", x.degree},
                         {"prime", x.prime},
                         {"order", x.group.order()},
                         {"generators", to_json(x.group.generators())},
                         {"h", to_json(x.h.generators())},
                         {"core_order", x.core_order},
                         {"verified", x.verified},
                         {"transcript", x.transcript}});
    }
  }
  if (c.format == "json") {
    std::cout << out.dump(1) << "\n";
  } else {
    std::cout << "primes:";
    for (auto q : primes) std::cout << " " << q;
    std::cout << "\n";
    for (const auto& l : chain.back().transcript) std::cout << l << "\n";
    for (const auto& x : chain) {
      std::cout << "degree " << x.degree << ", order " << x.group.order() << ": "
                << (x.verified ? "verified no-HGS entry" : "NOT verified") << "\n";
    }
  }
  return ok ? kOk : kMismatch;
}

void apply_env(RunConfig& c) {
  if (const char* d = std::getenv("PARHGS_CACHE_DIR"); d && c.cache_dir.empty()) c.cache_dir = d;
  if (const char* t = std::getenv("PARHGS_THREADS")) {
    try {
      c.threads = static_cast<unsigned>(std::stoul(t));
    } catch (const std::exception&) {
      throw PreconditionError("PARHGS_THREADS must be a positive integer");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel Hopf-Galois structure analysis"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool threads_given = false;
  auto common = [&](CLI::App* s) {
    s->add_option("--cache-dir", cfg.cache_dir, "catalogue cache directory");
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
    s->add_option_function<unsigned>("--threads", [&](unsigned t) { cfg.threads = t; threads_given = true; },
                                     "worker threads")
        ->check(CLI::PositiveNumber);
    s->add_option("--max-order", cfg.max_order, "largest holomorph to enumerate")->check(CLI::PositiveNumber);
    s->add_option("--max-time", cfg.max_time, "wall-time limit in seconds")->check(CLI::PositiveNumber);
    s->add_flag("--resume", cfg.resume, "reuse cache files");
    s->add_option("--seed-fixtures", cfg.seed_fixtures, "record computed values in this fixture file");
    s->add_flag("-v,--verbose", cfg.verbose, "progress on stderr");
  };
  auto* catalog = app.add_subcommand("catalog", "build the transitive catalogue of a degree");
  catalog->add_option("--degree", cfg.degrees, "degree")->required();
  common(catalog);
  auto* nohgs = app.add_subcommand("no-hgs", "count entries with the parallel no-HGS property");
  nohgs->add_option("--degree", cfg.degrees, "degree")->required();
  nohgs->add_flag("--emit-witnesses", cfg.emit_witnesses, "print each failing (G, H) as a JSON line");
  common(nohgs);
  auto* vpq = app.add_subcommand("verify-pq", "check the degree-pq constructions and counts");
  vpq->add_option("--p", cfg.p, "larger prime")->required();
  vpq->add_option("--q", cfg.q, "smaller prime")->required();
  common(vpq);
  auto* analyze = app.add_subcommand("analyze", "analyze one (G, H) pair from a JSON file");
  analyze->add_option("pair_file", cfg.pair_file, "JSON {degree, G, H}")->required();
  common(analyze);
  auto* extend = app.add_subcommand("extend", "extend a no-HGS entry of odd degree by cyclic factors");
  extend->add_option("--degree", cfg.degrees, "source degree")->required();
  extend->add_option("--entry", cfg.entry, "catalogue entry id")->required();
  extend->add_option("--h-class", cfg.h_class, "index of the witnessing subgroup class");
  auto* ap = extend->add_flag("--auto-prime", cfg.auto_prime, "choose the least valid prime");
  extend->add_option("--primes", cfg.primes, "primes to apply in order")->delimiter(',')->excludes(ap);
  common(extend);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (!threads_given) {
    try {
      apply_env(cfg);
    } catch (const PreconditionError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  } else if (const char* d = std::getenv("PARHGS_CACHE_DIR"); d && cfg.cache_dir.empty()) {
    cfg.cache_dir = d;
  }
  if (cfg.threads == 0) cfg.threads = 1;

  try {
    if (catalog->parsed()) return cmd_catalog(cfg);
    if (nohgs->parsed()) return cmd_no_hgs(cfg);
    if (vpq->parsed()) return cmd_verify_pq(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (extend->parsed()) return cmd_extend(cfg);
  } catch (const UnsupportedOrderError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}
