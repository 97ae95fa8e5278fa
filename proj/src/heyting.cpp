#include "ptri/heyting.hpp"

namespace ptri {

DownSet meet(const Poset& poset, const DownSet& a, const DownSet& b) {
  poset.require_owner(a);
  poset.require_owner(b);
  return poset.downset(a.mask() & b.mask());
}

DownSet join(const Poset& poset, const DownSet& a, const DownSet& b) {
  poset.require_owner(a);
  poset.require_owner(b);
  return poset.downset(a.mask() | b.mask());
}

Mask implication_mask(const Poset& poset, Mask x, Mask s) {
  Mask out = 0;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    if (is_subset_of(poset.down_mask(ElementId{p}) & x, s)) out |= bit(p);
  }
  return out;
}

DownSet implication(const Poset& poset, const Subset& x, const DownSet& s) {
  poset.require_owner(x);
  poset.require_owner(s);
  return poset.downset(implication_mask(poset, x.mask(), s.mask()));
}

bool is_downset(const Poset& poset, const Subset& x) {
  poset.require_owner(x);
  return poset.is_downset_mask(x.mask());
}

}  // namespace ptri
