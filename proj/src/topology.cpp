#include "ptri/topology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ptri {

namespace {

bool family_contains(std::span<const Mask> family, Mask sieve) {
  return std::binary_search(family.begin(), family.end(), sieve, canonical_less);
}

std::vector<Mask> sieves_on(const Poset& poset, ElementId p) {
  std::vector<Mask> out;
  const Mask below = poset.down_mask(p);
  for (Mask m : poset.downset_masks()) {
    if (is_subset_of(m, below)) out.push_back(m);
  }
  return out;
}

[[noreturn]] void fail(const Poset& poset, ErrorCode code, std::size_t p, std::size_t q,
                       Mask sieve, Mask other, const std::string& what) {
  std::string message = std::string(to_string(code)) + ": " + what + " (p=" +
                        poset.label(ElementId{p});
  if (code == ErrorCode::StabilityFail) message += ", q=" + poset.label(ElementId{q});
  message += ", S=" + format_mask(poset, sieve);
  if (code == ErrorCode::TransitivityFail) message += ", R=" + format_mask(poset, other);
  message += ")";
  throw TopologyViolation(code, p, q, sieve, other, message);
}

}  // namespace

bool GrothendieckTopology::covers(ElementId p, Mask sieve) const {
  return family_contains(family(p), sieve);
}

GrothendieckTopology GrothendieckTopology::from_trusted_families(Poset poset,
                                                                 RawSieveFamilies families) {
  if (families.size() != poset.size()) {
    throw Error(ErrorCode::InvalidInput, "topology needs one family per point");
  }
  return GrothendieckTopology(std::move(poset), std::move(families));
}

bool operator<(const GrothendieckTopology& a, const GrothendieckTopology& b) {
  const auto& fa = a.families_;
  const auto& fb = b.families_;
  return std::lexicographical_compare(
      fa.begin(), fa.end(), fb.begin(), fb.end(),
      [](const std::vector<Mask>& x, const std::vector<Mask>& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                            canonical_less);
      });
}

std::vector<DownSet> sieves_at(const GrothendieckTopology& topology, ElementId p) {
  std::vector<DownSet> out;
  for (Mask m : topology.family(p)) out.push_back(topology.poset().downset(m));
  return out;
}

GrothendieckTopology validate_topology(const Poset& poset, RawSieveFamilies families) {
  const std::size_t n = poset.size();
  if (families.size() != n) {
    throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(n) +
                                             " sieve families, got " +
                                             std::to_string(families.size()));
  }
  for (std::size_t p = 0; p < n; ++p) {
    const Mask below = poset.down_mask(ElementId{p});
    for (Mask s : families[p]) {
      if (!poset.is_downset_mask(s) || !is_subset_of(s, below)) {
        fail(poset, ErrorCode::NotASieve, p, p, s, 0, "not a sieve on p");
      }
    }
    auto& family = families[p];
    std::sort(family.begin(), family.end(), canonical_less);
    family.erase(std::unique(family.begin(), family.end()), family.end());
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (!family_contains(families[p], poset.down_mask(ElementId{p}))) {
      fail(poset, ErrorCode::MissingMaximal, p, p, poset.down_mask(ElementId{p}), 0,
           "↓p is not a cover");
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    const Mask below = poset.down_mask(ElementId{p});
    for (Mask s : families[p]) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!(below & bit(q))) continue;
        if (!family_contains(families[q], s & poset.down_mask(ElementId{q}))) {
          fail(poset, ErrorCode::StabilityFail, p, q, s, 0, "S ∩ ↓q is not a cover of q");
        }
      }
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    const auto candidates = sieves_on(poset, ElementId{p});
    for (Mask s : families[p]) {
      for (Mask r : candidates) {
        bool locally_covered = true;
        for (Mask rest = s; rest != 0 && locally_covered; rest &= rest - 1) {
          const auto q = static_cast<std::size_t>(std::countr_zero(rest));
          locally_covered = family_contains(families[q], r & poset.down_mask(ElementId{q}));
        }
        if (locally_covered && !family_contains(families[p], r)) {
          fail(poset, ErrorCode::TransitivityFail, p, p, s, r,
               "R is locally covered on S but not a cover");
        }
      }
    }
  }

  return GrothendieckTopology::from_trusted_families(poset, std::move(families));
}

namespace {

// Chooses J(p) point by point along a linear extension. When p is reached,
// every q < p is fixed, so stability of a sieve at p and transitivity at p
// depend only on already-chosen families plus the candidate J(p) itself.
class TopologySearch {
 public:
  TopologySearch(const Poset& poset, std::vector<GrothendieckTopology>& out)
      : poset_(poset), out_(out), families_(poset.size()) {
    order_.resize(poset.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return cardinality(poset.down_mask(ElementId{a})) <
             cardinality(poset.down_mask(ElementId{b}));
    });
  }

  void run() { extend(0); }

 private:
  bool covered(std::size_t q, Mask sieve) const { return family_contains(families_[q], sieve); }

  void extend(std::size_t depth) {
    if (depth == order_.size()) {
      out_.push_back(GrothendieckTopology::from_trusted_families(poset_, families_));
      return;
    }
    const std::size_t p = order_[depth];
    const Mask below = poset_.down_mask(ElementId{p});
    const Mask strictly_below = below & ~bit(p);
    const auto sieves = sieves_on(poset_, ElementId{p});

    // local[r]: the q < p at which sieves[r] ∩ ↓q is already a cover.
    std::vector<Mask> local(sieves.size(), 0);
    for (std::size_t r = 0; r < sieves.size(); ++r) {
      for (Mask rest = strictly_below; rest != 0; rest &= rest - 1) {
        const auto q = static_cast<std::size_t>(std::countr_zero(rest));
        if (covered(q, sieves[r] & poset_.down_mask(ElementId{q}))) local[r] |= bit(q);
      }
    }

    // Stable candidates: S with S ∩ ↓q a cover for every q < p. The maximal
    // sieve is always stable and always present.
    std::vector<std::size_t> stable;
    std::size_t maximal = sieves.size();
    for (std::size_t r = 0; r < sieves.size(); ++r) {
      if (sieves[r] == below) {
        maximal = r;
      } else if (local[r] == strictly_below) {
        stable.push_back(r);
      }
    }

    if (stable.size() >= 63) {
      throw Error(ErrorCode::CapExceeded, "too many candidate sieves at one point");
    }
    const std::uint64_t choices = std::uint64_t{1} << stable.size();
    for (std::uint64_t pick = 0; pick < choices; ++pick) {
      std::vector<bool> chosen(sieves.size(), false);
      chosen[maximal] = true;
      for (std::size_t i = 0; i < stable.size(); ++i) {
        if (pick & (std::uint64_t{1} << i)) chosen[stable[i]] = true;
      }
      if (!transitive(sieves, local, chosen, maximal)) continue;

      auto& family = families_[p];
      family.clear();
      for (std::size_t r = 0; r < sieves.size(); ++r) {
        if (chosen[r]) family.push_back(sieves[r]);
      }
      extend(depth + 1);
    }
    families_[p].clear();
  }

  // For S ≠ ↓p every element of S is strictly below p, so "R ∩ ↓q covers q
  // for all q ∈ S" reads off local[R]. S = ↓p makes the hypothesis include
  // R ∈ J(p) itself and is vacuous.
  static bool transitive(const std::vector<Mask>& sieves, const std::vector<Mask>& local,
                         const std::vector<bool>& chosen, std::size_t maximal) {
    for (std::size_t s = 0; s < sieves.size(); ++s) {
      if (!chosen[s] || s == maximal) continue;
      for (std::size_t r = 0; r < sieves.size(); ++r) {
        if (!chosen[r] && is_subset_of(sieves[s], local[r])) return false;
      }
    }
    return true;
  }

  const Poset& poset_;
  std::vector<GrothendieckTopology>& out_;
  RawSieveFamilies families_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::vector<GrothendieckTopology> enumerate_topologies(const Poset& poset,
                                                       std::size_t max_points) {
  if (poset.size() > max_points) {
    throw Error(ErrorCode::CapExceeded, "|P| = " + std::to_string(poset.size()) +
                                            " exceeds topology search cap " +
                                            std::to_string(max_points));
  }
  std::vector<GrothendieckTopology> out;
  TopologySearch(poset, out).run();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ptri
