#include "doctest.h"

#include <random>
#include <regex>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ptri/io.hpp"

using namespace ptri;
using ptri::test::mask_of;
using nlohmann::json;

namespace {

ParseError expect_parse_error(std::string_view text) {
  try {
    io::parse_poset(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(ErrorCode::InvalidInput, 0, "");
}

std::set<std::pair<std::string, std::string>> dot_edges(const std::string& dot) {
  std::set<std::pair<std::string, std::string>> out;
  const std::regex edge("\"([^\"]*)\" -> \"([^\"]*)\";");
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge); it != std::sregex_iterator();
       ++it) {
    out.emplace((*it)[1], (*it)[2]);
  }
  return out;
}

}  // namespace

TEST_CASE("parse_poset examples") {
  const auto chain = io::parse_poset("poset v1\nelements a b\nrel a<b\n");
  CHECK(chain.labels == std::vector<std::string>{"a", "b"});
  REQUIRE(chain.relations.size() == 1);
  CHECK(io::to_poset(chain) == test::chain2());

  const auto single = io::parse_poset("poset v1\nelements a\n");
  CHECK(io::to_poset(single) == test::singleton());

  const auto commented = io::parse_poset(
      "# header comment\n\nposet v1   # trailing\nelements x y z\r\nrel x < y\nrel y<z # c\n");
  CHECK(commented.relations.size() == 2);
  CHECK(io::to_poset(commented).leq(ElementId{0}, ElementId{2}));

  const auto empty = io::parse_poset("poset v1\nelements\n");
  CHECK(io::to_poset(empty).size() == 0);
}

TEST_CASE("parse_poset errors carry line numbers") {
  auto e = expect_parse_error("poset v1\nelements a b\nrel a<c\n");
  CHECK(e.code() == ErrorCode::UnknownLabel);
  CHECK(e.line() == 3);

  e = expect_parse_error("poset v1\nelements a a\n");
  CHECK(e.code() == ErrorCode::DuplicateLabel);
  CHECK(e.line() == 2);

  e = expect_parse_error("elements a\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.line() == 1);

  e = expect_parse_error("poset v2\nelements a\n");
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = expect_parse_error("poset v1\nrel a<b\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.line() == 2);

  e = expect_parse_error("poset v1\nelements a b\nrel a-b\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.line() == 3);

  e = expect_parse_error("poset v1\nelements a b\nrel a<a\n");
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = expect_parse_error("poset v1\nelements a\nelements b\n");
  CHECK(e.line() == 3);

  e = expect_parse_error("poset v1\nelements a\nfoo\n");
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = expect_parse_error("poset v1\n");
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = expect_parse_error("");
  CHECK(e.code() == ErrorCode::SyntaxError);

  // Cycles are a builder error, not a parse error.
  const auto cyclic = io::parse_poset("poset v1\nelements a b\nrel a<b\nrel b<a\n");
  CHECK_THROWS_AS(io::to_poset(cyclic), Error);
}

TEST_CASE("render then parse returns the same document (random documents)") {
  std::mt19937 rng(20210720);
  for (int round = 0; round < 300; ++round) {
    io::PosetDocument doc;
    const std::size_t n = rng() % 7;
    for (std::size_t i = 0; i < n; ++i) {
      std::string label;
      const std::size_t len = 1 + rng() % 4;
      for (std::size_t k = 0; k < len; ++k) label += "abcxyz_019"[rng() % 10];
      label += std::to_string(i);  // keeps labels distinct
      doc.labels.push_back(label);
    }
    if (n >= 2) {
      const std::size_t edges = rng() % 6;
      for (std::size_t e = 0; e < edges; ++e) {
        std::size_t lo = rng() % n, hi = rng() % n;
        if (lo == hi) continue;
        doc.relations.emplace_back(doc.labels[lo], doc.labels[hi]);
      }
    }
    CHECK(io::parse_poset(io::render_poset(doc)) == doc);
  }
}

TEST_CASE("to_document lists covers and rebuilds the same order") {
  for (const Poset& p : test::all_posets_up_to(4)) {
    const auto doc = io::to_document(p);
    CHECK(io::to_poset(io::parse_poset(io::render_poset(doc))) == p);
  }
}

TEST_CASE("serialize examples") {
  const Poset c = test::chain2();
  CHECK(io::serialize(c, c.subset(mask_of(c, {"b"}))) == R"(["b"])");

  const Poset s = test::singleton();
  const auto ds = s.downset_masks();
  const Nucleus id = validate_nucleus(s, RawNucleusTable(ds.begin(), ds.end()));
  CHECK(io::serialize(id) == R"([[[],[]],[["a"],["a"]]])");

  const auto smallest = validate_topology(s, RawSieveFamilies{{1}});
  CHECK(io::serialize(smallest) == R"({"a":[["a"]]})");
}

TEST_CASE("serialized label arrays are sorted by byte order") {
  const Poset p = test::make({"zeta", "alpha", "mid"});
  CHECK(io::serialize(p, p.subset(p.all_mask())) == R"(["alpha","mid","zeta"])");
}

TEST_CASE("serialize is injective and parse inverts it") {
  for (const Poset& p : test::all_posets_up_to(3)) {
    std::set<std::string> seen;
    for (const Nucleus& j : enumerate_nuclei(p)) {
      const std::string text = io::serialize(j);
      CHECK(seen.insert(text).second);
      const auto table = io::nucleus_table_from_json(p, json::parse(text));
      CHECK(validate_nucleus(p, table) == j);
    }
    seen.clear();
    for (const auto& t : enumerate_topologies(p)) {
      const std::string text = io::serialize(t);
      CHECK(seen.insert(text).second);
      CHECK(validate_topology(p, io::topology_families_from_json(p, json::parse(text))) == t);
    }
    seen.clear();
    for (Mask m = 0; m < (Mask{1} << p.size()); ++m) {
      const std::string text = io::serialize(p, p.subset(m));
      CHECK(seen.insert(text).second);
      CHECK(io::subset_from_json(p, json::parse(text)).mask() == m);
    }
  }
}

TEST_CASE("JSON input errors") {
  const Poset c = test::chain2();
  CHECK_THROWS_AS(io::subset_from_json(c, json::parse(R"(["q"])")), Error);
  CHECK_THROWS_AS(io::subset_from_json(c, json::parse(R"("a")")), Error);
  CHECK_THROWS_AS(io::nucleus_table_from_json(c, json::parse(R"([[[],[]]])")), Error);
  CHECK_THROWS_AS(io::nucleus_table_from_json(c, json::parse(R"([[["b"],["b"]]])")), Error);
  CHECK_THROWS_AS(
      io::nucleus_table_from_json(c, json::parse(R"([[[],[]],[[],[]],[["a"],["a"]]])")), Error);
  CHECK_THROWS_AS(io::topology_families_from_json(c, json::parse(R"({"q":[]})")), Error);
  CHECK_THROWS_AS(io::topology_families_from_json(c, json::parse(R"([])")), Error);
  // A missing label leaves an empty family; validation then reports it.
  const auto families = io::topology_families_from_json(c, json::parse(R"({"a":[["a"]]})"));
  CHECK(families[1].empty());
  CHECK_THROWS_AS(validate_topology(c, families), TopologyViolation);
}

TEST_CASE("export_hasse_dot") {
  const Poset s = test::singleton();
  CHECK(io::export_hasse_dot(s) == "digraph hasse {\n  rankdir=BT;\n  \"a\";\n}\n");

  const Poset c3 = test::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(io::export_hasse_dot(c3) ==
        "digraph hasse {\n  rankdir=BT;\n  \"a\";\n  \"b\";\n  \"c\";\n"
        "  \"a\" -> \"b\";\n  \"b\" -> \"c\";\n}\n");

  const auto anti = io::export_hasse_dot(test::antichain2());
  CHECK(dot_edges(anti).empty());
  CHECK(anti.find("\"b\";") != std::string::npos);

  const Poset quoted = test::make({"x\"y"});
  CHECK(io::export_hasse_dot(quoted).find("\"x\\\"y\";") != std::string::npos);
}

TEST_CASE("DOT edges are the transitive reduction, exhaustive to size 4") {
  for (const Poset& p : test::all_posets_up_to(4)) {
    std::set<std::pair<std::string, std::string>> want;
    for (auto [lo, hi] : oracle::reduction(p)) {
      want.emplace(p.label(ElementId{lo}), p.label(ElementId{hi}));
    }
    CHECK(dot_edges(io::export_hasse_dot(p)) == want);
  }
}

TEST_CASE("enumeration_json is deterministic and complete") {
  const Poset v = test::vee();
  for (auto kind : {io::EnumerationKind::Subsets, io::EnumerationKind::Nuclei,
                    io::EnumerationKind::Topologies}) {
    const std::string first = io::enumeration_json(v, kind);
    CHECK(first == io::enumeration_json(v, kind));
    CHECK(json::parse(first).size() == 8);
  }
  CHECK(io::enumeration_json(test::chain2(), io::EnumerationKind::Subsets) ==
        R"([[],["a"],["b"],["a","b"]])");
}

TEST_CASE("report JSON shape") {
  const auto report = verify_triangle(test::chain2());
  const json j = io::to_json(report);
  CHECK(j["poset"] == "[a,b] a<b");
  CHECK(j["passed"] == true);
  CHECK(j["counts"]["nuclei"] == 4);
  CHECK(j["laws"].size() == std::size(kTriangleLaws));
  CHECK(j["laws"][0]["witness"].is_null());
  CHECK(json::parse(io::serialize(report)) == j);
}
