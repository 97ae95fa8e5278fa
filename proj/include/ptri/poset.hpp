#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptri/error.hpp"

namespace ptri {

/// Element i of a poset lives at bit i.
using Mask = std::uint32_t;

/// Largest carrier the lattice operations accept (2^16 candidate masks).
inline constexpr std::size_t kMaxPosetSize = 16;

/// Default and hard caps for streaming all labeled posets on n points.
inline constexpr std::size_t kDefaultLabeledPosetCap = 4;
inline constexpr std::size_t kHardLabeledPosetCap = 5;

inline constexpr Mask bit(std::size_t i) { return Mask{1} << i; }
inline int cardinality(Mask m) { return std::popcount(m); }
inline constexpr bool is_subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

/// Canonical mask order: ascending cardinality, then ascending mask value.
inline bool canonical_less(Mask a, Mask b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  return ca != cb ? ca < cb : a < b;
}

struct ElementId {
  std::size_t index = 0;

  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

class Poset;

/// A subset of a poset's carrier with no closure requirement.
class Subset {
 public:
  Mask mask() const noexcept { return mask_; }
  std::uint64_t owner() const noexcept { return owner_; }
  bool contains(ElementId p) const { return (mask_ & bit(p.index)) != 0; }
  std::size_t size() const { return static_cast<std::size_t>(cardinality(mask_)); }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  friend class Poset;
  Subset(Mask mask, std::uint64_t owner) : mask_(mask), owner_(owner) {}

  Mask mask_;
  std::uint64_t owner_;
};

/// A downward-closed subset. Sieves on p are the downsets contained in ↓p.
class DownSet {
 public:
  Mask mask() const noexcept { return mask_; }
  std::uint64_t owner() const noexcept { return owner_; }
  bool contains(ElementId p) const { return (mask_ & bit(p.index)) != 0; }
  std::size_t size() const { return static_cast<std::size_t>(cardinality(mask_)); }
  bool is_subset_of(const DownSet& other) const {
    return ptri::is_subset_of(mask_, other.mask_);
  }

  friend bool operator==(const DownSet&, const DownSet&) = default;

 private:
  friend class Poset;
  DownSet(Mask mask, std::uint64_t owner) : mask_(mask), owner_(owner) {}

  Mask mask_;
  std::uint64_t owner_;
};

/// Immutable finite poset. Copies share the underlying tables, so copying is
/// cheap and values are safe to share across threads.
///
/// Every poset carries an identity tag. Subsets and downsets record the tag
/// of the poset that produced them; mixing values from different posets
/// raises PosetMismatch. Structural equality (operator==) ignores the tag.
class Poset {
 public:
  /// The empty poset.
  Poset();

  /// `down_rows[q]` is the set of p with p <= q, i.e. the mask of ↓q. The rows
  /// must describe a partial order (checked); build_poset takes generators.
  Poset(std::vector<std::string> labels, std::vector<Mask> down_rows);

  std::size_t size() const noexcept;
  std::uint64_t tag() const noexcept;

  std::span<const std::string> labels() const noexcept;
  const std::string& label(ElementId p) const;
  std::optional<ElementId> find(std::string_view label) const;

  bool leq(ElementId p, ElementId q) const;

  Mask down_mask(ElementId p) const;
  Mask up_mask(ElementId p) const;
  Mask all_mask() const noexcept;

  bool is_downset_mask(Mask m) const;

  /// All downset masks in canonical order.
  std::span<const Mask> downset_masks() const noexcept;
  std::size_t downset_count() const noexcept;

  /// Position of a downset mask in canonical order, or nullopt.
  std::optional<std::size_t> downset_index(Mask m) const;

  /// Checked constructors for values owned by this poset.
  Subset subset(Mask m) const;
  DownSet downset(Mask m) const;
  DownSet bottom() const;
  DownSet top() const;

  void require_owner(const Subset& s) const;
  void require_owner(const DownSet& s) const;

  /// Structural equality: same labels and order relation.
  friend bool operator==(const Poset& a, const Poset& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Builds the reflexive-transitive closure of `relations` (pairs x <= y) on
/// the declared labels. Declaration order fixes element indices.
Poset build_poset(std::span<const std::string> labels,
                  std::span<const std::pair<std::string, std::string>> relations);

bool leq(const Poset& poset, ElementId p, ElementId q);

/// ↓p
DownSet principal_downset(const Poset& poset, ElementId p);

/// ↓p ∖ {p}; always a downset since p is maximal in ↓p.
DownSet punctured_downset(const Poset& poset, ElementId p);

/// True iff the poset is nonempty and every pair has a common lower bound.
bool is_downward_directed(const Poset& poset);

/// All downsets in canonical order.
std::vector<DownSet> enumerate_downsets(const Poset& poset);

/// All sieves on p (downsets contained in ↓p) in canonical order.
std::vector<DownSet> enumerate_sieves(const Poset& poset, ElementId p);

/// Covering pairs (lower, upper): p < q with nothing strictly between.
/// Ordered by lower index, then upper index.
std::vector<std::pair<ElementId, ElementId>> covering_pairs(const Poset& poset);

/// Descriptor such as "[a,b,c] a<b b<c": labels in order, then covers.
std::string describe_poset(const Poset& poset);

/// Renders a mask as "{a,b}" with labels in element order.
std::string format_mask(const Poset& poset, Mask m);

/// Labels used for generated posets: a, b, c, ...
std::vector<std::string> default_labels(std::size_t n);

/// Streams every partial order on n labeled points exactly once, in a fixed
/// order. Throws CapExceeded when n > cap or cap > the hard cap.
void for_each_labeled_poset(std::size_t n, const std::function<void(const Poset&)>& visit,
                            std::size_t cap = kDefaultLabeledPosetCap);

std::vector<Poset> enumerate_labeled_posets(std::size_t n,
                                            std::size_t cap = kDefaultLabeledPosetCap);

}  // namespace ptri
