#include "ptri/nucleus.hpp"

#include <algorithm>
#include <string>

namespace ptri {

DownSet Nucleus::apply(const DownSet& s) const {
  poset_.require_owner(s);
  return poset_.downset(apply_mask(s.mask()));
}

Mask Nucleus::apply_mask(Mask downset) const {
  const auto idx = poset_.downset_index(downset);
  if (!idx) throw Error(ErrorCode::NotADownset, "nucleus applied to a non-downset");
  return images_[*idx];
}

Nucleus Nucleus::from_trusted_table(Poset poset, RawNucleusTable images) {
  if (images.size() != poset.downset_count()) {
    throw Error(ErrorCode::IncompleteTable, "nucleus table does not cover D(P)");
  }
  return Nucleus(std::move(poset), std::move(images));
}

bool operator<(const Nucleus& a, const Nucleus& b) {
  return std::lexicographical_compare(a.images_.begin(), a.images_.end(), b.images_.begin(),
                                      b.images_.end(), canonical_less);
}

DownSet apply(const Nucleus& j, const DownSet& s) { return j.apply(s); }

namespace {

[[noreturn]] void fail(const Poset& poset, ErrorCode code, Mask first, Mask second,
                       const std::string& what) {
  throw NucleusViolation(code, first, second,
                         std::string(to_string(code)) + ": " + what + " at " +
                             format_mask(poset, first) +
                             (code == ErrorCode::NotMeetPreserving ||
                                      code == ErrorCode::NotMonotone
                                  ? " and " + format_mask(poset, second)
                                  : std::string()));
}

}  // namespace

Nucleus validate_nucleus(const Poset& poset, RawNucleusTable table) {
  const auto downsets = poset.downset_masks();
  if (table.size() != downsets.size()) {
    throw NucleusViolation(ErrorCode::IncompleteTable, 0, 0,
                           "IncompleteTable: expected " + std::to_string(downsets.size()) +
                               " entries, got " + std::to_string(table.size()));
  }
  const std::size_t count = downsets.size();

  for (std::size_t i = 0; i < count; ++i) {
    if (!poset.is_downset_mask(table[i])) {
      fail(poset, ErrorCode::ImageNotDownset, downsets[i], 0, "image is not a downset");
    }
  }
  auto image = [&](Mask s) { return table[*poset.downset_index(s)]; };

  for (std::size_t i = 0; i < count; ++i) {
    if (!is_subset_of(downsets[i], table[i])) {
      fail(poset, ErrorCode::NotInflationary, downsets[i], 0, "S is not below j(S)");
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (image(table[i]) != table[i]) {
      fail(poset, ErrorCode::NotIdempotent, downsets[i], 0, "j(j(S)) differs from j(S)");
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = i + 1; k < count; ++k) {
      if (image(downsets[i] & downsets[k]) != (table[i] & table[k])) {
        fail(poset, ErrorCode::NotMeetPreserving, downsets[i], downsets[k],
             "j(A ∩ B) differs from j(A) ∩ j(B)");
      }
    }
  }
  // Implied by meet preservation; kept as an independent cross-check.
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < count; ++k) {
      if (is_subset_of(downsets[i], downsets[k]) && !is_subset_of(table[i], table[k])) {
        fail(poset, ErrorCode::NotMonotone, downsets[i], downsets[k], "j is not monotone");
      }
    }
  }
  return Nucleus::from_trusted_table(poset, std::move(table));
}

namespace {

class NucleusSearch {
 public:
  NucleusSearch(const Poset& poset, std::vector<Nucleus>& out)
      : poset_(poset), downsets_(poset.downset_masks()), out_(out) {
    const std::size_t count = downsets_.size();
    meet_index_.assign(count * count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < count; ++k) {
        meet_index_[i * count + k] = *poset.downset_index(downsets_[i] & downsets_[k]);
      }
    }
    image_.assign(count, 0);
    hits_.assign(count, 0);
  }

  void run() { extend(0); }

 private:
  // Assigns j at canonical position `i`. Every downset strictly below D[i],
  // and every A ∩ D[i] with A earlier, sits at an earlier position, so each
  // axiom can be checked the moment its last participant is assigned.
  void extend(std::size_t i) {
    const std::size_t count = downsets_.size();
    if (i == count) {
      RawNucleusTable table(count);
      for (std::size_t k = 0; k < count; ++k) table[k] = downsets_[image_[k]];
      out_.push_back(Nucleus::from_trusted_table(poset_, std::move(table)));
      return;
    }
    const Mask s = downsets_[i];
    for (std::size_t u = i; u < count; ++u) {
      const Mask candidate = downsets_[u];
      if (!is_subset_of(s, candidate)) continue;  // inflationary
      // Something already maps onto D[i], so D[i] must be a fixed point.
      if (hits_[i] > 0 && u != i) continue;
      if (!consistent(i, candidate)) continue;
      image_[i] = u;
      ++hits_[u];
      extend(i + 1);
      --hits_[u];
    }
  }

  bool consistent(std::size_t i, Mask candidate) const {
    const std::size_t count = downsets_.size();
    const Mask s = downsets_[i];
    for (std::size_t k = 0; k < i; ++k) {
      const Mask earlier = downsets_[k];
      const Mask earlier_image = downsets_[image_[k]];
      if (is_subset_of(earlier, s) && !is_subset_of(earlier_image, candidate)) return false;
      if (downsets_[image_[meet_index_[k * count + i]]] != (earlier_image & candidate)) {
        return false;
      }
    }
    return true;
  }

  const Poset& poset_;
  std::span<const Mask> downsets_;
  std::vector<Nucleus>& out_;
  std::vector<std::size_t> meet_index_;
  std::vector<std::size_t> image_;
  std::vector<std::size_t> hits_;
};

}  // namespace

std::vector<Nucleus> enumerate_nuclei(const Poset& poset, std::size_t max_downsets) {
  if (poset.downset_count() > max_downsets) {
    throw Error(ErrorCode::CapExceeded, "|D(P)| = " + std::to_string(poset.downset_count()) +
                                            " exceeds nucleus search cap " +
                                            std::to_string(max_downsets));
  }
  std::vector<Nucleus> out;
  NucleusSearch(poset, out).run();
  return out;
}

}  // namespace ptri
