// ptri: command-line front end for the subset / nucleus / topology triangle.
//
// Exit codes: 0 success, 1 a verification or validation law failed,
// 2 usage or parse error.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptri/heyting.hpp"
#include "ptri/io.hpp"
#include "ptri/nucleus.hpp"
#include "ptri/poset.hpp"
#include "ptri/topology.hpp"
#include "ptri/triangle.hpp"

namespace {

using nlohmann::json;
using namespace ptri;

constexpr int kOk = 0;
constexpr int kLawFailed = 1;
constexpr int kUsage = 2;

// Thrown for problems the user fixes by changing the command line or input.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a supplied nucleus or topology fails its axioms.
struct LawViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string show_family(const Poset& poset, std::span<const Mask> family) {
  std::string out;
  for (Mask s : family) {
    if (!out.empty()) out += ' ';
    out += format_mask(poset, s);
  }
  return out;
}

void print_nucleus(std::ostream& os, const Nucleus& j) {
  const Poset& poset = j.poset();
  const auto downsets = poset.downset_masks();
  for (std::size_t i = 0; i < downsets.size(); ++i) {
    os << "  " << format_mask(poset, downsets[i]) << " -> " << format_mask(poset, j.images()[i])
       << '\n';
  }
}

void print_topology(std::ostream& os, const GrothendieckTopology& topology) {
  const Poset& poset = topology.poset();
  for (std::size_t p = 0; p < poset.size(); ++p) {
    os << "  " << poset.label(ElementId{p}) << ": "
       << show_family(poset, topology.family(ElementId{p})) << '\n';
  }
}

void print_report(std::ostream& os, const TriangleReport& report) {
  os << "poset " << report.poset << '\n'
     << "  size " << report.size << ", downward-directed "
     << (report.downward_directed ? "yes" : "no") << '\n'
     << "  counts: subsets " << report.counts.subsets << ", nuclei " << report.counts.nuclei
     << ", topologies " << report.counts.topologies << '\n';
  for (const LawResult& law : report.laws) {
    os << "  " << (law.passed ? "PASS " : "FAIL ") << law.name << " (" << law.cases
       << " cases)";
    if (law.witness) os << "\n      witness: " << *law.witness;
    os << '\n';
  }
}

ElementId require_label(const Poset& poset, const std::string& label) {
  const auto id = poset.find(label);
  if (!id) throw UsageError("unknown label '" + label + "'");
  return *id;
}

Nucleus load_nucleus(const Poset& poset, const json& input) {
  try {
    return validate_nucleus(poset, io::nucleus_table_from_json(poset, input));
  } catch (const NucleusViolation& e) {
    throw LawViolation(std::string("input is not a nucleus: ") + e.what());
  }
}

GrothendieckTopology load_topology(const Poset& poset, const json& input) {
  try {
    return validate_topology(poset, io::topology_families_from_json(poset, input));
  } catch (const TopologyViolation& e) {
    throw LawViolation(std::string("input is not a Grothendieck topology: ") + e.what());
  }
}

int run_check(const std::string& file, bool as_json) {
  const Poset poset = io::load_poset_file(file);
  const auto covers = covering_pairs(poset);
  if (as_json) {
    json out = {{"labels", json(std::vector<std::string>(poset.labels().begin(),
                                                         poset.labels().end()))},
                {"covers", json::array()},
                {"downsets", poset.downset_count()},
                {"downward_directed", is_downward_directed(poset)}};
    for (const auto& [lo, hi] : covers) {
      out["covers"].push_back(json::array({poset.label(lo), poset.label(hi)}));
    }
    std::cout << out.dump() << '\n';
    return kOk;
  }
  std::cout << "poset " << describe_poset(poset) << '\n'
            << "elements: " << poset.size() << '\n'
            << "covering pairs: " << covers.size() << '\n'
            << "downsets: " << poset.downset_count() << '\n'
            << "downward-directed: " << (is_downward_directed(poset) ? "yes" : "no") << '\n';
  return kOk;
}

int run_downsets(const std::string& file, bool as_json) {
  const Poset poset = io::load_poset_file(file);
  if (as_json) {
    json out = json::array();
    for (const DownSet& s : enumerate_downsets(poset)) out.push_back(io::to_json(poset, s));
    std::cout << out.dump() << '\n';
    return kOk;
  }
  for (const DownSet& s : enumerate_downsets(poset)) {
    std::cout << format_mask(poset, s.mask()) << '\n';
  }
  return kOk;
}

int run_sieves(const std::string& file, const std::string& label, bool as_json) {
  const Poset poset = io::load_poset_file(file);
  const ElementId p = require_label(poset, label);
  const auto sieves = enumerate_sieves(poset, p);
  if (as_json) {
    json out = json::array();
    for (const DownSet& s : sieves) out.push_back(io::to_json(poset, s));
    std::cout << out.dump() << '\n';
    return kOk;
  }
  for (const DownSet& s : sieves) std::cout << format_mask(poset, s.mask()) << '\n';
  return kOk;
}

int run_enumerate(const std::string& file, const std::string& kind, bool as_json) {
  const Poset poset = io::load_poset_file(file);
  static const std::map<std::string, io::EnumerationKind> kinds = {
      {"subsets", io::EnumerationKind::Subsets},
      {"nuclei", io::EnumerationKind::Nuclei},
      {"topologies", io::EnumerationKind::Topologies}};
  const auto chosen = kinds.at(kind);
  if (as_json) {
    std::cout << io::enumeration_json(poset, chosen) << '\n';
    return kOk;
  }
  switch (chosen) {
    case io::EnumerationKind::Subsets: {
      const auto all = json::parse(io::enumeration_json(poset, chosen));
      std::size_t i = 0;
      for (const json& x : all) {
        std::cout << "#" << i++ << " {";
        bool first = true;
        for (const json& l : x) {
          std::cout << (first ? "" : ",") << l.get<std::string>();
          first = false;
        }
        std::cout << "}\n";
      }
      break;
    }
    case io::EnumerationKind::Nuclei: {
      const auto all = enumerate_nuclei(poset);
      for (std::size_t i = 0; i < all.size(); ++i) {
        std::cout << "#" << i << '\n';
        print_nucleus(std::cout, all[i]);
      }
      break;
    }
    case io::EnumerationKind::Topologies: {
      const auto all = enumerate_topologies(poset);
      for (std::size_t i = 0; i < all.size(); ++i) {
        std::cout << "#" << i << '\n';
        print_topology(std::cout, all[i]);
      }
      break;
    }
  }
  return kOk;
}

int run_convert(const std::string& file, const std::string& from, const std::string& to,
                const std::string& input_text, bool alt, bool as_json) {
  const Poset poset = io::load_poset_file(file);
  if (alt && !(from == "nucleus" && to == "subset")) {
    throw UsageError("--alt only applies to --from nucleus --to subset");
  }
  json input;
  try {
    input = json::parse(input_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("--input is not valid JSON: ") + e.what());
  }

  std::optional<Subset> subset;
  std::optional<Nucleus> nucleus;
  std::optional<GrothendieckTopology> topology;
  if (from == "subset") {
    const Subset x = io::subset_from_json(poset, input);
    if (to == "subset") subset = x;
    if (to == "nucleus") nucleus = subset_to_nucleus(poset, x);
    if (to == "topology") topology = subset_to_topology(poset, x);
  } else if (from == "nucleus") {
    const Nucleus j = load_nucleus(poset, input);
    if (to == "subset") subset = alt ? nucleus_to_subset_alt(poset, j) : nucleus_to_subset(poset, j);
    if (to == "nucleus") nucleus = j;
    if (to == "topology") topology = nucleus_to_topology(poset, j);
  } else {
    const GrothendieckTopology t = load_topology(poset, input);
    if (to == "subset") subset = topology_to_subset(poset, t);
    if (to == "nucleus") nucleus = topology_to_nucleus(poset, t);
    if (to == "topology") topology = t;
  }

  if (as_json) {
    if (subset) std::cout << io::serialize(poset, *subset) << '\n';
    if (nucleus) std::cout << io::serialize(*nucleus) << '\n';
    if (topology) std::cout << io::serialize(*topology) << '\n';
    return kOk;
  }
  if (subset) std::cout << "X = " << format_mask(poset, subset->mask()) << '\n';
  if (nucleus) {
    std::cout << "nucleus:\n";
    print_nucleus(std::cout, *nucleus);
  }
  if (topology) {
    std::cout << "topology:\n";
    print_topology(std::cout, *topology);
  }
  return kOk;
}

int run_verify(const std::optional<std::string>& file, std::optional<std::size_t> max_n,
               bool directed_only, bool as_json, std::size_t threads) {
  if (file.has_value() == max_n.has_value()) {
    throw UsageError("verify takes either FILE or --max-n N");
  }
  if (file) {
    if (directed_only) throw UsageError("--directed-only applies to --max-n runs");
    const TriangleReport report = verify_triangle(io::load_poset_file(*file));
    if (as_json) {
      std::cout << io::serialize(report) << '\n';
    } else {
      print_report(std::cout, report);
    }
    return report.passed() ? kOk : kLawFailed;
  }

  const std::size_t cap = std::max(*max_n, kDefaultLabeledPosetCap);
  if (*max_n > kHardLabeledPosetCap) {
    throw UsageError("--max-n is capped at " + std::to_string(kHardLabeledPosetCap));
  }
  bool all_passed = true;
  json reports_json = json::array();
  for (std::size_t n = 0; n <= *max_n; ++n) {
    std::vector<Poset> posets;
    for_each_labeled_poset(
        n,
        [&](const Poset& p) {
          if (!directed_only || is_downward_directed(p)) posets.push_back(p);
        },
        cap);
    const auto start = std::chrono::steady_clock::now();
    const auto reports = verify_all(posets, {}, threads);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t failed = 0;
    for (const auto& report : reports) {
      if (!report.passed()) ++failed;
      if (as_json) reports_json.push_back(io::to_json(report));
    }
    all_passed = all_passed && failed == 0;
    if (!as_json) {
      std::cout << "n=" << n << "  posets=" << reports.size()
                << "  passed=" << reports.size() - failed << "  failed=" << failed << "  ("
                << seconds << "s)\n";
      for (const auto& report : reports) {
        if (!report.passed()) print_report(std::cout, report);
      }
    }
  }
  if (as_json) {
    std::cout << reports_json.dump() << '\n';
  } else {
    std::cout << (all_passed ? "all laws passed\n" : "some laws FAILED\n");
  }
  return all_passed ? kOk : kLawFailed;
}

int run_hasse(const std::string& file, const std::string& format) {
  if (format != "dot") throw UsageError("only --format dot is supported");
  std::cout << io::export_hasse_dot(io::load_poset_file(file));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subsets, nuclei and Grothendieck topologies on finite posets"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string file;
  std::string label;
  std::string kind;
  std::string from;
  std::string to;
  std::string input;
  bool alt = false;
  std::optional<std::string> verify_file;
  std::optional<std::size_t> max_n;
  bool directed_only = false;
  std::size_t threads = 0;
  std::string format = "dot";

  auto* check = app.add_subcommand("check", "Parse a poset file and summarise it");
  check->add_option("FILE", file, "poset v1 file")->required();
  check->add_flag("--json", as_json, "Emit JSON");

  auto* downsets = app.add_subcommand("downsets", "List all downsets in canonical order");
  downsets->add_option("FILE", file, "poset v1 file")->required();
  downsets->add_flag("--json", as_json, "Emit JSON");

  auto* sieves = app.add_subcommand("sieves", "List all sieves on a point");
  sieves->add_option("FILE", file, "poset v1 file")->required();
  sieves->add_option("-p,--point", label, "Point label")->required();
  sieves->add_flag("--json", as_json, "Emit JSON");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate subsets, nuclei or topologies");
  enumerate->add_option("FILE", file, "poset v1 file")->required();
  enumerate->add_option("--kind", kind, "What to enumerate")
      ->required()
      ->check(CLI::IsMember({"subsets", "nuclei", "topologies"}));
  enumerate->add_flag("--json", as_json, "Emit canonical JSON");

  auto* convert = app.add_subcommand("convert", "Convert along one edge of the triangle");
  convert->add_option("FILE", file, "poset v1 file")->required();
  convert->add_option("--from", from, "Input kind")
      ->required()
      ->check(CLI::IsMember({"subset", "nucleus", "topology"}));
  convert->add_option("--to", to, "Output kind")
      ->required()
      ->check(CLI::IsMember({"subset", "nucleus", "topology"}));
  convert->add_option("--input", input, "Input value as canonical JSON")->required();
  convert->add_flag("--alt", alt, "Use j(↓p) ≠ j(↓p ∖ {p}) for nucleus -> subset");
  convert->add_flag("--json", as_json, "Emit canonical JSON");

  auto* verify = app.add_subcommand("verify", "Check every triangle law");
  verify->add_option("FILE", verify_file, "poset v1 file");
  verify->add_option("--max-n", max_n, "Verify all labeled posets with up to N points");
  verify->add_flag("--directed-only", directed_only, "Skip posets that are not downward-directed");
  verify->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  verify->add_flag("--json", as_json, "Emit JSON reports");

  auto* hasse = app.add_subcommand("hasse", "Export the Hasse diagram");
  hasse->add_option("FILE", file, "poset v1 file")->required();
  hasse->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return run_check(file, as_json);
    if (*downsets) return run_downsets(file, as_json);
    if (*sieves) return run_sieves(file, label, as_json);
    if (*enumerate) return run_enumerate(file, kind, as_json);
    if (*convert) return run_convert(file, from, to, input, alt, as_json);
    if (*verify) return run_verify(verify_file, max_n, directed_only, as_json, threads);
    if (*hasse) return run_hasse(file, format);
  } catch (const LawViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLawFailed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ptri::Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
