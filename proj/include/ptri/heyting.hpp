#pragma once

#include "ptri/poset.hpp"

namespace ptri {

// Lattice structure on D(P). Both arguments must come from `poset`.

DownSet meet(const Poset& poset, const DownSet& a, const DownSet& b);
DownSet join(const Poset& poset, const DownSet& a, const DownSet& b);

/// X → S, evaluated pointwise as {p : ↓p ∩ X ⊆ S}. X may be any subset; the
/// result is always downward closed. On downset arguments this is the
/// Heyting implication of D(P).
DownSet implication(const Poset& poset, const Subset& x, const DownSet& s);

/// Mask-level form of implication for callers that already hold masks.
Mask implication_mask(const Poset& poset, Mask x, Mask s);

bool is_downset(const Poset& poset, const Subset& x);

}  // namespace ptri
