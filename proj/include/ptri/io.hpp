#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ptri/nucleus.hpp"
#include "ptri/poset.hpp"
#include "ptri/topology.hpp"
#include "ptri/triangle.hpp"

namespace ptri::io {

/// Parsed form of the `poset v1` text format:
///
///     poset v1
///     elements a b c
///     rel a<b
///     rel b<c      # comments run to end of line
///
/// `rel x<y` means x <= y with x != y. The builder closes the relation.
struct PosetDocument {
  std::string version = "1";
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> relations;

  friend bool operator==(const PosetDocument&, const PosetDocument&) = default;
};

/// Throws ParseError (SyntaxError, DuplicateLabel, UnknownLabel) with the
/// offending line.
PosetDocument parse_poset(std::string_view text);

/// Renders a document back to text that parse_poset accepts.
std::string render_poset(const PosetDocument& doc);

Poset to_poset(const PosetDocument& doc);

/// Document listing the covering pairs of `poset`.
PosetDocument to_document(const Poset& poset);

/// Reads and parses a poset file; I/O failures surface as InvalidInput.
Poset load_poset_file(const std::string& path);

// Canonical JSON. Sets are label arrays sorted by byte order, nuclei are
// [downset, image] pairs in canonical D(P) order, topologies map each label
// to its covering sieves in canonical order.

nlohmann::json to_json(const Poset& poset, Mask set);
nlohmann::json to_json(const Poset& poset, const Subset& x);
nlohmann::json to_json(const Poset& poset, const DownSet& s);
nlohmann::json to_json(const Nucleus& j);
nlohmann::json to_json(const GrothendieckTopology& topology);
nlohmann::json to_json(const TriangleReport& report);

/// Compact, deterministic text of the JSON forms above.
std::string serialize(const Poset& poset, const Subset& x);
std::string serialize(const Nucleus& j);
std::string serialize(const GrothendieckTopology& topology);
std::string serialize(const TriangleReport& report);

/// Reverse direction, for `convert --input`. Unknown labels raise
/// UnknownLabel, malformed shapes raise InvalidInput; axiom checks are left
/// to validate_nucleus / validate_topology.
Subset subset_from_json(const Poset& poset, const nlohmann::json& value);
RawNucleusTable nucleus_table_from_json(const Poset& poset, const nlohmann::json& value);
RawSieveFamilies topology_families_from_json(const Poset& poset, const nlohmann::json& value);

/// Hasse diagram as a DOT digraph: one node per element in index order, one
/// edge per covering pair from the lower to the upper element.
std::string export_hasse_dot(const Poset& poset);

enum class EnumerationKind { Subsets, Nuclei, Topologies };

/// JSON array of every subset (canonical mask order), every nucleus, or
/// every topology of the poset. Byte-identical across runs.
std::string enumeration_json(const Poset& poset, EnumerationKind kind);

}  // namespace ptri::io
