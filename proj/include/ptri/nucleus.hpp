#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "ptri/poset.hpp"

namespace ptri {

/// Images of every downset, listed in the poset's canonical downset order.
using RawNucleusTable = std::vector<Mask>;

/// A nucleus on D(P): inflationary, idempotent, binary-meet-preserving.
/// Stored as a full table over canonical D(P); equality is table equality.
class Nucleus {
 public:
  const Poset& poset() const noexcept { return poset_; }
  std::span<const Mask> images() const noexcept { return images_; }

  DownSet apply(const DownSet& s) const;
  Mask apply_mask(Mask downset) const;

  /// Wraps a table the caller knows satisfies the axioms. Conversion maps
  /// use this; validate_nucleus is the checked entry point.
  static Nucleus from_trusted_table(Poset poset, RawNucleusTable images);

  friend bool operator==(const Nucleus& a, const Nucleus& b) {
    return a.poset_.tag() == b.poset_.tag() && a.images_ == b.images_;
  }

  /// Canonical order: lexicographic over images in canonical D(P) order,
  /// each image compared by canonical downset index.
  friend bool operator<(const Nucleus& a, const Nucleus& b);

 private:
  Nucleus(Poset poset, RawNucleusTable images)
      : poset_(std::move(poset)), images_(std::move(images)) {}

  Poset poset_;
  RawNucleusTable images_;
};

DownSet apply(const Nucleus& j, const DownSet& s);

/// Checks the table against the nucleus axioms in a fixed order (table
/// shape, images downward closed, inflationary, idempotent, meet-preserving,
/// monotone) and throws NucleusViolation naming the first failure.
Nucleus validate_nucleus(const Poset& poset, RawNucleusTable table);

/// Default bound on |D(P)| for exhaustive nucleus search.
inline constexpr std::size_t kDefaultNucleusDownsetCap = 32;

/// Every nucleus on D(P), in canonical order, found by backtracking over the
/// table directly from the axioms. Throws CapExceeded when |D(P)| > cap.
std::vector<Nucleus> enumerate_nuclei(const Poset& poset,
                                      std::size_t max_downsets = kDefaultNucleusDownsetCap);

}  // namespace ptri
