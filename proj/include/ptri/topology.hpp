#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptri/poset.hpp"

namespace ptri {

/// Per-point sieve families as listed by a caller: entry p holds masks that
/// are meant to be sieves on p. Order and duplicates are irrelevant.
using RawSieveFamilies = std::vector<std::vector<Mask>>;

/// A Grothendieck topology on P: for every point p a family J(p) of sieves on
/// p, satisfying maximality, stability under S ↦ S ∩ ↓q, and transitivity.
/// Families are kept sorted in canonical downset order.
class GrothendieckTopology {
 public:
  const Poset& poset() const noexcept { return poset_; }

  /// J(p) as masks in canonical order.
  std::span<const Mask> family(ElementId p) const { return families_.at(p.index); }
  bool covers(ElementId p, Mask sieve) const;

  /// Wraps families the caller knows satisfy the axioms; each family must
  /// already be canonical (sorted, no duplicates). validate_topology is the
  /// checked entry point.
  static GrothendieckTopology from_trusted_families(Poset poset, RawSieveFamilies families);

  friend bool operator==(const GrothendieckTopology& a, const GrothendieckTopology& b) {
    return a.poset_.tag() == b.poset_.tag() && a.families_ == b.families_;
  }

  /// Canonical order: point by point, each family compared lexicographically
  /// by canonical downset order.
  friend bool operator<(const GrothendieckTopology& a, const GrothendieckTopology& b);

 private:
  GrothendieckTopology(Poset poset, RawSieveFamilies families)
      : poset_(std::move(poset)), families_(std::move(families)) {}

  Poset poset_;
  RawSieveFamilies families_;
};

/// J(p) as downsets of P.
std::vector<DownSet> sieves_at(const GrothendieckTopology& topology, ElementId p);

/// Sorts and deduplicates each family, then checks the axioms in order
/// (sieve shape, maximality, stability, transitivity). Throws
/// TopologyViolation with a witness for the first failure.
GrothendieckTopology validate_topology(const Poset& poset, RawSieveFamilies families);

/// Default bound on |P| for exhaustive topology search.
inline constexpr std::size_t kDefaultTopologyPointCap = 5;

/// Every Grothendieck topology on P, in canonical order, found from the
/// axioms alone. Throws CapExceeded when |P| > cap.
std::vector<GrothendieckTopology> enumerate_topologies(
    const Poset& poset, std::size_t max_points = kDefaultTopologyPointCap);

}  // namespace ptri
