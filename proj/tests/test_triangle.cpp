#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ptri/triangle.hpp"

using namespace ptri;
using ptri::test::id;
using ptri::test::mask_of;

namespace {

Nucleus identity_nucleus(const Poset& p) {
  const auto ds = p.downset_masks();
  return validate_nucleus(p, RawNucleusTable(ds.begin(), ds.end()));
}

Nucleus top_nucleus(const Poset& p) {
  return validate_nucleus(p, RawNucleusTable(p.downset_count(), p.all_mask()));
}

bool is_smallest(const GrothendieckTopology& t) {
  const Poset& p = t.poset();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto f = t.family(ElementId{i});
    if (f.size() != 1 || f[0] != p.down_mask(ElementId{i})) return false;
  }
  return true;
}

bool is_largest(const GrothendieckTopology& t) {
  const Poset& p = t.poset();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (t.family(ElementId{i}).size() != enumerate_sieves(p, ElementId{i}).size()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("subset_to_nucleus") {
  const Poset c = test::chain2();
  CHECK(subset_to_nucleus(c, c.subset(c.all_mask())) == identity_nucleus(c));
  CHECK(subset_to_nucleus(c, c.subset(0)) == top_nucleus(c));

  const Nucleus j = subset_to_nucleus(c, c.subset(mask_of(c, {"b"})));
  const Mask a = mask_of(c, {"a"}), ab = mask_of(c, {"a", "b"});
  CHECK(j.apply_mask(0) == a);
  CHECK(j.apply_mask(a) == a);
  CHECK(j.apply_mask(ab) == ab);
  for (Mask s : c.downset_masks()) {
    CHECK(j.apply_mask(s) == oracle::implication(c, mask_of(c, {"b"}), s));
  }
}

TEST_CASE("nucleus_to_subset, alt and via topology on the corner nuclei") {
  for (const Poset& p : test::all_posets_up_to(3)) {
    const Nucleus id_j = identity_nucleus(p);
    const Nucleus top_j = top_nucleus(p);
    CHECK(nucleus_to_subset(p, id_j).mask() == p.all_mask());
    CHECK(nucleus_to_subset_alt(p, id_j).mask() == p.all_mask());
    CHECK(nucleus_to_subset_via_topology(p, id_j).mask() == p.all_mask());
    CHECK(nucleus_to_subset(p, top_j).mask() == 0);
    CHECK(nucleus_to_subset_alt(p, top_j).mask() == 0);
    CHECK(nucleus_to_subset_via_topology(p, top_j).mask() == 0);
  }
  const Poset c = test::chain2();
  const Subset b = c.subset(mask_of(c, {"b"}));
  CHECK(nucleus_to_subset(c, subset_to_nucleus(c, b)) == b);
}

TEST_CASE("subset_to_topology and topology_to_subset") {
  for (const Poset& p : test::all_posets_up_to(3)) {
    CHECK(is_smallest(subset_to_topology(p, p.subset(p.all_mask()))));
    CHECK(is_largest(subset_to_topology(p, p.subset(0))));
    if (p.size() > 0) {
      CHECK(topology_to_subset(p, subset_to_topology(p, p.subset(0))).mask() == 0);
    }
    CHECK(topology_to_subset(p, subset_to_topology(p, p.subset(p.all_mask()))).mask() ==
          p.all_mask());
  }

  const Poset c = test::chain2();
  const Subset b = c.subset(mask_of(c, {"b"}));
  const GrothendieckTopology t = subset_to_topology(c, b);
  const auto at_a = sieves_at(t, id(c, "a"));
  REQUIRE(at_a.size() == 2);
  CHECK(at_a[0] == c.bottom());
  CHECK(at_a[1].mask() == mask_of(c, {"a"}));
  const auto at_b = sieves_at(t, id(c, "b"));
  REQUIRE(at_b.size() == 1);
  CHECK(at_b[0] == principal_downset(c, id(c, "b")));
  CHECK(topology_to_subset(c, t) == b);
}

TEST_CASE("nucleus_to_topology and topology_to_nucleus") {
  for (const Poset& p : test::all_posets_up_to(3)) {
    CHECK(is_smallest(nucleus_to_topology(p, identity_nucleus(p))));
    CHECK(is_largest(nucleus_to_topology(p, top_nucleus(p))));
    CHECK(topology_to_nucleus(p, subset_to_topology(p, p.subset(p.all_mask()))) ==
          identity_nucleus(p));
    CHECK(topology_to_nucleus(p, subset_to_topology(p, p.subset(0))) == top_nucleus(p));
  }
  const Poset c = test::chain2();
  const Subset b = c.subset(mask_of(c, {"b"}));
  CHECK(nucleus_to_topology(c, subset_to_nucleus(c, b)) == subset_to_topology(c, b));
  const Nucleus j = topology_to_nucleus(c, subset_to_topology(c, b));
  CHECK(j.apply_mask(0) == mask_of(c, {"a"}));
}

TEST_CASE("conversions reject values from another poset") {
  const Poset a = test::chain2();
  const Poset b = test::chain2();
  const Nucleus j = identity_nucleus(a);
  CHECK_THROWS_AS(nucleus_to_subset(b, j), Error);
  CHECK_THROWS_AS(nucleus_to_topology(b, j), Error);
  CHECK_THROWS_AS(subset_to_nucleus(b, a.subset(0)), Error);
  CHECK_THROWS_AS(topology_to_subset(b, subset_to_topology(a, a.subset(0))), Error);
}

TEST_CASE("verify_triangle on small posets") {
  const TriangleReport empty = verify_triangle(Poset{});
  CHECK(empty.passed());
  CHECK(empty.counts.subsets == 1);
  CHECK(empty.counts.nuclei == 1);
  CHECK(empty.counts.topologies == 1);
  CHECK_FALSE(empty.downward_directed);

  const TriangleReport chain = verify_triangle(test::chain2());
  CHECK(chain.passed());
  CHECK(chain.counts.subsets == 4);
  CHECK(chain.counts.nuclei == 4);
  CHECK(chain.counts.topologies == 4);
  CHECK(chain.downward_directed);
  CHECK(chain.poset == "[a,b] a<b");
  REQUIRE(chain.laws.size() == std::size(kTriangleLaws));
  for (std::size_t i = 0; i < chain.laws.size(); ++i) {
    CHECK(chain.laws[i].name == kTriangleLaws[i]);
    CHECK(chain.laws[i].cases > 0);
    CHECK_FALSE(chain.laws[i].witness.has_value());
  }
  REQUIRE(chain.find("identity_alt") != nullptr);
  CHECK(chain.find("identity_alt")->cases == 4);
  CHECK(chain.find("nonsense") == nullptr);
}

TEST_CASE("verify_triangle on every labeled poset of size 3") {
  const auto posets = enumerate_labeled_posets(3);
  const auto reports = verify_all(posets, {}, 2);
  REQUIRE(reports.size() == 19);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].passed());
    CHECK(reports[i].poset == describe_poset(posets[i]));
    CHECK(reports[i].counts.nuclei == 8);
  }
}

TEST_CASE("verify_triangle surfaces cap violations") {
  const Poset six(default_labels(6), {1, 2, 4, 8, 16, 32});
  CHECK_THROWS_AS(verify_triangle(six), Error);
  CHECK_THROWS_AS(verify_all(std::vector<Poset>{six}), Error);
}
