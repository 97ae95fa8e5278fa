#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptri/nucleus.hpp"
#include "ptri/poset.hpp"
#include "ptri/topology.hpp"

namespace ptri {

// The six edges between subsets X ⊆ P, nuclei j on D(P) and Grothendieck
// topologies J on P.

/// j_X(S) = X → S
Nucleus subset_to_nucleus(const Poset& poset, const Subset& x);

/// X_j = {p : p ∉ j(↓p ∖ {p})}
Subset nucleus_to_subset(const Poset& poset, const Nucleus& j);

/// X'_j = {p : j(↓p) ≠ j(↓p ∖ {p})}
Subset nucleus_to_subset_alt(const Poset& poset, const Nucleus& j);

/// J_X(p) = {S ∈ D(↓p) : X ∩ ↓p ⊆ S}
GrothendieckTopology subset_to_topology(const Poset& poset, const Subset& x);

/// X_J = {p : J(p) = {↓p}}
Subset topology_to_subset(const Poset& poset, const GrothendieckTopology& topology);

/// J_j(p) = {S ∈ D(↓p) : p ∈ j(S)}
GrothendieckTopology nucleus_to_topology(const Poset& poset, const Nucleus& j);

/// j_J(S) = {p : S ∩ ↓p ∈ J(p)}
Nucleus topology_to_nucleus(const Poset& poset, const GrothendieckTopology& topology);

/// X_{J_j} evaluated from its quantified form: p is kept iff for every sieve S
/// on p, p ∈ j(S) exactly when S = ↓p. Does not build J_j.
Subset nucleus_to_subset_via_topology(const Poset& poset, const Nucleus& j);

struct LawResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::optional<std::string> witness;  // first counterexample, if any
};

struct TriangleCounts {
  std::uint64_t subsets = 0;
  std::uint64_t nuclei = 0;
  std::uint64_t topologies = 0;
};

struct TriangleReport {
  std::string poset;  // descriptor: labels and covering pairs
  std::size_t size = 0;
  bool downward_directed = false;
  TriangleCounts counts;  // from the axiomatic enumerators only
  std::vector<LawResult> laws;
  double wall_seconds = 0.0;

  bool passed() const;
  const LawResult* find(std::string_view law) const;
};

struct VerifyLimits {
  std::size_t max_points = kDefaultTopologyPointCap;
  std::size_t max_downsets = kDefaultNucleusDownsetCap;
};

/// Law names, in report order.
inline constexpr const char* kTriangleLaws[] = {
    "roundtrip_subset_nucleus",    "roundtrip_subset_topology",
    "roundtrip_nucleus_subset",    "roundtrip_topology_subset",
    "roundtrip_nucleus_topology",  "roundtrip_topology_nucleus",
    "commute_nucleus_topology",    "commute_topology_nucleus",
    "identity_composite",          "identity_alt",
    "composite_cross_check",       "count_nuclei",
    "count_topologies",            "well_defined",
};

/// Enumerates subsets, nuclei and topologies independently and checks every
/// law of the triangle against them. Failing laws keep the first witness and
/// never stop the remaining laws.
TriangleReport verify_triangle(const Poset& poset, const VerifyLimits& limits = {});

/// verify_triangle over many posets on up to `threads` workers (0 picks the
/// hardware concurrency). Reports come back in input order.
std::vector<TriangleReport> verify_all(std::span<const Poset> posets,
                                       const VerifyLimits& limits = {},
                                       std::size_t threads = 0);

}  // namespace ptri
