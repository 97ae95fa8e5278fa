#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptri/poset.hpp"

namespace ptri::test {

inline Poset make(std::vector<std::string> labels,
                  std::vector<std::pair<std::string, std::string>> relations = {}) {
  return build_poset(labels, relations);
}

inline Poset chain2() { return make({"a", "b"}, {{"a", "b"}}); }
inline Poset chain3() { return make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
inline Poset antichain2() { return make({"a", "b"}); }
inline Poset singleton() { return make({"a"}); }
/// c below both a and b.
inline Poset vee() { return make({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}}); }

inline Mask mask_of(const Poset& poset, std::initializer_list<const char*> labels) {
  Mask m = 0;
  for (const char* l : labels) m |= bit(poset.find(l).value().index);
  return m;
}

inline ElementId id(const Poset& poset, const char* label) { return poset.find(label).value(); }

/// Every labeled poset on at most `max_n` points.
inline std::vector<Poset> all_posets_up_to(std::size_t max_n) {
  std::vector<Poset> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    auto batch = enumerate_labeled_posets(n, std::max(n, kDefaultLabeledPosetCap));
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace ptri::test
