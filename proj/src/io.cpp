#include "ptri/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ptri::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Mask mask_of_labels(const Poset& poset, const json& value, std::string_view what) {
  if (!value.is_array()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array of labels");
  }
  Mask m = 0;
  for (const json& item : value) {
    if (!item.is_string()) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + " must contain label strings");
    }
    const auto id = poset.find(item.get<std::string>());
    if (!id) {
      throw Error(ErrorCode::UnknownLabel, "unknown label '" + item.get<std::string>() + "'");
    }
    m |= bit(id->index);
  }
  return m;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

PosetDocument parse_poset(std::string_view text) {
  PosetDocument doc;
  bool have_header = false;
  bool have_elements = false;
  std::unordered_set<std::string> declared;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        end == std::string_view::npos ? text.substr(pos) : text.substr(pos, end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto words = split_words(line);

    if (!have_header) {
      if (words.size() != 2 || words[0] != "poset" || words[1].size() < 2 || words[1][0] != 'v') {
        throw ParseError(ErrorCode::SyntaxError, line_no, "expected header 'poset v1'");
      }
      if (words[1] != "v1") {
        throw ParseError(ErrorCode::SyntaxError, line_no,
                         "unsupported format version '" + words[1] + "'");
      }
      doc.version = "1";
      have_header = true;
      continue;
    }

    if (words[0] == "elements") {
      if (have_elements) {
        throw ParseError(ErrorCode::SyntaxError, line_no, "second 'elements' line");
      }
      have_elements = true;
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].find('<') != std::string::npos) {
          throw ParseError(ErrorCode::SyntaxError, line_no,
                           "label '" + words[i] + "' contains '<'");
        }
        if (!declared.insert(words[i]).second) {
          throw ParseError(ErrorCode::DuplicateLabel, line_no,
                           "duplicate label '" + words[i] + "'");
        }
        doc.labels.push_back(words[i]);
      }
      continue;
    }

    if (words[0] == "rel") {
      if (!have_elements) {
        throw ParseError(ErrorCode::SyntaxError, line_no, "'rel' before 'elements'");
      }
      std::string body;
      for (std::size_t i = 1; i < words.size(); ++i) body += words[i];
      const auto lt = body.find('<');
      if (lt == std::string::npos || lt == 0 || lt + 1 == body.size() ||
          body.find('<', lt + 1) != std::string::npos) {
        throw ParseError(ErrorCode::SyntaxError, line_no, "expected 'rel x<y'");
      }
      std::string lo = body.substr(0, lt);
      std::string hi = body.substr(lt + 1);
      for (const auto& label : {lo, hi}) {
        if (!declared.count(label)) {
          throw ParseError(ErrorCode::UnknownLabel, line_no, "unknown label '" + label + "'");
        }
      }
      if (lo == hi) {
        throw ParseError(ErrorCode::SyntaxError, line_no, "'rel " + lo + "<" + hi +
                                                              "' relates a label to itself");
      }
      doc.relations.emplace_back(std::move(lo), std::move(hi));
      continue;
    }

    throw ParseError(ErrorCode::SyntaxError, line_no, "unrecognised line '" + words[0] + "'");
  }

  if (!have_header) throw ParseError(ErrorCode::SyntaxError, 1, "missing header 'poset v1'");
  if (!have_elements) {
    throw ParseError(ErrorCode::SyntaxError, line_no, "missing 'elements' line");
  }
  return doc;
}

std::string render_poset(const PosetDocument& doc) {
  std::string out = "poset v" + doc.version + "\nelements";
  for (const auto& label : doc.labels) out += " " + label;
  out += '\n';
  for (const auto& [lo, hi] : doc.relations) out += "rel " + lo + "<" + hi + "\n";
  return out;
}

Poset to_poset(const PosetDocument& doc) { return build_poset(doc.labels, doc.relations); }

PosetDocument to_document(const Poset& poset) {
  PosetDocument doc;
  doc.labels.assign(poset.labels().begin(), poset.labels().end());
  for (const auto& [lo, hi] : covering_pairs(poset)) {
    doc.relations.emplace_back(poset.label(lo), poset.label(hi));
  }
  return doc;
}

Poset load_poset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return to_poset(parse_poset(buffer.str()));
}

json to_json(const Poset& poset, Mask set) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (set & bit(i)) labels.push_back(poset.label(ElementId{i}));
  }
  std::sort(labels.begin(), labels.end());
  return json(labels);
}

json to_json(const Poset& poset, const Subset& x) {
  poset.require_owner(x);
  return to_json(poset, x.mask());
}

json to_json(const Poset& poset, const DownSet& s) {
  poset.require_owner(s);
  return to_json(poset, s.mask());
}

json to_json(const Nucleus& j) {
  const Poset& poset = j.poset();
  json out = json::array();
  const auto downsets = poset.downset_masks();
  for (std::size_t i = 0; i < downsets.size(); ++i) {
    out.push_back(json::array({to_json(poset, downsets[i]), to_json(poset, j.images()[i])}));
  }
  return out;
}

json to_json(const GrothendieckTopology& topology) {
  const Poset& poset = topology.poset();
  json out = json::object();
  for (std::size_t p = 0; p < poset.size(); ++p) {
    json family = json::array();
    for (Mask s : topology.family(ElementId{p})) family.push_back(to_json(poset, s));
    out[poset.label(ElementId{p})] = std::move(family);
  }
  return out;
}

json to_json(const TriangleReport& report) {
  json laws = json::array();
  for (const LawResult& law : report.laws) {
    laws.push_back({{"name", law.name},
                    {"passed", law.passed},
                    {"cases", law.cases},
                    {"witness", law.witness ? json(*law.witness) : json(nullptr)}});
  }
  return {{"poset", report.poset},
          {"size", report.size},
          {"downward_directed", report.downward_directed},
          {"counts",
           {{"subsets", report.counts.subsets},
            {"nuclei", report.counts.nuclei},
            {"topologies", report.counts.topologies}}},
          {"laws", std::move(laws)},
          {"passed", report.passed()},
          {"wall_seconds", report.wall_seconds}};
}

std::string serialize(const Poset& poset, const Subset& x) { return to_json(poset, x).dump(); }
std::string serialize(const Nucleus& j) { return to_json(j).dump(); }
std::string serialize(const GrothendieckTopology& topology) { return to_json(topology).dump(); }
std::string serialize(const TriangleReport& report) { return to_json(report).dump(); }

Subset subset_from_json(const Poset& poset, const json& value) {
  return poset.subset(mask_of_labels(poset, value, "subset"));
}

RawNucleusTable nucleus_table_from_json(const Poset& poset, const json& value) {
  if (!value.is_array()) {
    throw Error(ErrorCode::InvalidInput, "nucleus must be an array of [downset, image] pairs");
  }
  RawNucleusTable table(poset.downset_count(), 0);
  std::vector<bool> seen(poset.downset_count(), false);
  for (const json& entry : value) {
    if (!entry.is_array() || entry.size() != 2) {
      throw Error(ErrorCode::InvalidInput, "nucleus entries must be [downset, image] pairs");
    }
    const Mask key = mask_of_labels(poset, entry[0], "nucleus argument");
    const auto idx = poset.downset_index(key);
    if (!idx) {
      throw Error(ErrorCode::NotADownset,
                  "nucleus argument " + format_mask(poset, key) + " is not a downset");
    }
    if (seen[*idx]) {
      throw Error(ErrorCode::InvalidInput,
                  "nucleus lists " + format_mask(poset, key) + " more than once");
    }
    seen[*idx] = true;
    table[*idx] = mask_of_labels(poset, entry[1], "nucleus image");
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::IncompleteTable,
                  "nucleus has no entry for " + format_mask(poset, poset.downset_masks()[i]));
    }
  }
  return table;
}

RawSieveFamilies topology_families_from_json(const Poset& poset, const json& value) {
  if (!value.is_object()) {
    throw Error(ErrorCode::InvalidInput, "topology must be an object mapping labels to sieves");
  }
  RawSieveFamilies families(poset.size());
  for (const auto& [label, sieves] : value.items()) {
    const auto id = poset.find(label);
    if (!id) throw Error(ErrorCode::UnknownLabel, "unknown label '" + label + "'");
    if (!sieves.is_array()) {
      throw Error(ErrorCode::InvalidInput, "sieves at '" + label + "' must be an array");
    }
    for (const json& sieve : sieves) {
      families[id->index].push_back(mask_of_labels(poset, sieve, "sieve"));
    }
  }
  return families;
}

std::string export_hasse_dot(const Poset& poset) {
  std::string out = "digraph hasse {\n  rankdir=BT;\n";
  for (const auto& label : poset.labels()) out += "  " + dot_quote(label) + ";\n";
  for (const auto& [lo, hi] : covering_pairs(poset)) {
    out += "  " + dot_quote(poset.label(lo)) + " -> " + dot_quote(poset.label(hi)) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string enumeration_json(const Poset& poset, EnumerationKind kind) {
  json out = json::array();
  switch (kind) {
    case EnumerationKind::Subsets: {
      std::vector<Mask> masks;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << poset.size()); ++m) {
        masks.push_back(static_cast<Mask>(m));
      }
      std::sort(masks.begin(), masks.end(), canonical_less);
      for (Mask m : masks) out.push_back(to_json(poset, m));
      break;
    }
    case EnumerationKind::Nuclei:
      for (const Nucleus& j : enumerate_nuclei(poset)) out.push_back(to_json(j));
      break;
    case EnumerationKind::Topologies:
      for (const GrothendieckTopology& t : enumerate_topologies(poset)) out.push_back(to_json(t));
      break;
  }
  return out.dump();
}

}  // namespace ptri::io
