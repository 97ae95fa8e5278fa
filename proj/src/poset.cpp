#include "ptri/poset.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

namespace ptri {

struct Poset::Data {
  std::uint64_t tag = 0;
  std::vector<std::string> labels;
  std::vector<Mask> down;
  std::vector<Mask> up;
  std::vector<Mask> downsets;
  std::vector<std::int32_t> index_of;  // indexed by mask, -1 if not a downset
};

namespace {

std::uint64_t next_tag() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

Mask all_bits(std::size_t n) { return static_cast<Mask>((std::uint64_t{1} << n) - 1); }

bool closed_downward(std::span<const Mask> down, Mask m) {
  for (Mask rest = m; rest != 0; rest &= rest - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(rest));
    if (!is_subset_of(down[i], m)) return false;
  }
  return true;
}

}  // namespace

Poset::Poset() : Poset({}, {}) {}

Poset::Poset(std::vector<std::string> labels, std::vector<Mask> down_rows) {
  if (labels.size() > kMaxPosetSize) {
    throw Error(ErrorCode::CapExceeded, "poset has " + std::to_string(labels.size()) +
                                            " elements; at most " +
                                            std::to_string(kMaxPosetSize) + " supported");
  }
  if (labels.size() != down_rows.size()) {
    throw Error(ErrorCode::InvalidInput, "label count does not match relation rows");
  }
  for (std::size_t q = 0; q < down_rows.size(); ++q) {
    if (!(down_rows[q] & bit(q)) || !is_subset_of(down_rows[q], all_bits(down_rows.size()))) {
      throw Error(ErrorCode::InvalidInput, "relation rows are not reflexive on the carrier");
    }
    for (Mask rest = down_rows[q] & ~bit(q); rest != 0; rest &= rest - 1) {
      const auto p = static_cast<std::size_t>(std::countr_zero(rest));
      if (down_rows[p] & bit(q)) {
        throw Error(ErrorCode::CycleDetected, "relation rows are not antisymmetric");
      }
      if (!is_subset_of(down_rows[p], down_rows[q])) {
        throw Error(ErrorCode::InvalidInput, "relation rows are not transitive");
      }
    }
  }
  auto data = std::make_shared<Data>();
  data->tag = next_tag();
  data->labels = std::move(labels);
  data->down = std::move(down_rows);

  const std::size_t n = data->labels.size();
  data->up.assign(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t p = 0; p < n; ++p) {
      if (data->down[q] & bit(p)) data->up[p] |= bit(q);
    }
  }

  const Mask limit = Mask{1} << n;
  data->index_of.assign(limit, -1);
  for (Mask m = 0; m < limit; ++m) {
    if (closed_downward(data->down, m)) data->downsets.push_back(m);
  }
  std::sort(data->downsets.begin(), data->downsets.end(), canonical_less);
  for (std::size_t i = 0; i < data->downsets.size(); ++i) {
    data->index_of[data->downsets[i]] = static_cast<std::int32_t>(i);
  }
  data_ = std::move(data);
}

std::size_t Poset::size() const noexcept { return data_->labels.size(); }
std::uint64_t Poset::tag() const noexcept { return data_->tag; }

std::span<const std::string> Poset::labels() const noexcept { return data_->labels; }

const std::string& Poset::label(ElementId p) const { return data_->labels.at(p.index); }

std::optional<ElementId> Poset::find(std::string_view label) const {
  const auto& labels = data_->labels;
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return ElementId{static_cast<std::size_t>(it - labels.begin())};
}

bool Poset::leq(ElementId p, ElementId q) const {
  return (data_->down.at(q.index) & bit(p.index)) != 0;
}

Mask Poset::down_mask(ElementId p) const { return data_->down.at(p.index); }
Mask Poset::up_mask(ElementId p) const { return data_->up.at(p.index); }
Mask Poset::all_mask() const noexcept {
  return static_cast<Mask>((std::uint64_t{1} << size()) - 1);
}

bool Poset::is_downset_mask(Mask m) const {
  return is_subset_of(m, all_mask()) && data_->index_of[m] >= 0;
}

std::span<const Mask> Poset::downset_masks() const noexcept { return data_->downsets; }
std::size_t Poset::downset_count() const noexcept { return data_->downsets.size(); }

std::optional<std::size_t> Poset::downset_index(Mask m) const {
  if (!is_subset_of(m, all_mask())) return std::nullopt;
  const auto idx = data_->index_of[m];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

Subset Poset::subset(Mask m) const {
  if (!is_subset_of(m, all_mask())) {
    throw Error(ErrorCode::InvalidInput, "subset mask exceeds the carrier");
  }
  return Subset(m, tag());
}

DownSet Poset::downset(Mask m) const {
  if (!is_downset_mask(m)) {
    throw Error(ErrorCode::NotADownset, "mask is not downward closed");
  }
  return DownSet(m, tag());
}

DownSet Poset::bottom() const { return DownSet(0, tag()); }
DownSet Poset::top() const { return DownSet(all_mask(), tag()); }

void Poset::require_owner(const Subset& s) const {
  if (s.owner() != tag()) throw Error(ErrorCode::PosetMismatch, "subset belongs to another poset");
}

void Poset::require_owner(const DownSet& s) const {
  if (s.owner() != tag()) throw Error(ErrorCode::PosetMismatch, "downset belongs to another poset");
}

bool operator==(const Poset& a, const Poset& b) {
  return a.data_->labels == b.data_->labels && a.data_->down == b.data_->down;
}

Poset build_poset(std::span<const std::string> labels,
                  std::span<const std::pair<std::string, std::string>> relations) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) {
      throw Error(ErrorCode::DuplicateLabel, "duplicate label '" + labels[i] + "'");
    }
  }
  if (labels.size() > kMaxPosetSize) {
    throw Error(ErrorCode::CapExceeded, "poset has " + std::to_string(labels.size()) +
                                            " elements; at most " +
                                            std::to_string(kMaxPosetSize) + " supported");
  }

  const std::size_t n = labels.size();
  // down[q] collects every p with p <= q.
  std::vector<Mask> down(n);
  for (std::size_t i = 0; i < n; ++i) down[i] = bit(i);
  for (const auto& [lo, hi] : relations) {
    const auto a = index.find(lo);
    if (a == index.end()) throw Error(ErrorCode::UnknownLabel, "unknown label '" + lo + "'");
    const auto b = index.find(hi);
    if (b == index.end()) throw Error(ErrorCode::UnknownLabel, "unknown label '" + hi + "'");
    down[b->second] |= bit(a->second);
  }

  // Warshall on row masks: if k <= q then everything below k is below q.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      if (down[q] & bit(k)) down[q] |= down[k];
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if ((down[q] & bit(p)) && (down[p] & bit(q))) {
        throw Error(ErrorCode::CycleDetected, "relations force '" + labels[p] + "' = '" +
                                                  labels[q] + "'");
      }
    }
  }

  return Poset(std::vector<std::string>(labels.begin(), labels.end()), std::move(down));
}

bool leq(const Poset& poset, ElementId p, ElementId q) { return poset.leq(p, q); }

DownSet principal_downset(const Poset& poset, ElementId p) {
  return poset.downset(poset.down_mask(p));
}

DownSet punctured_downset(const Poset& poset, ElementId p) {
  return poset.downset(poset.down_mask(p) & ~bit(p.index));
}

bool is_downward_directed(const Poset& poset) {
  const std::size_t n = poset.size();
  if (n == 0) return false;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if ((poset.down_mask(ElementId{p}) & poset.down_mask(ElementId{q})) == 0) return false;
    }
  }
  return true;
}

std::vector<DownSet> enumerate_downsets(const Poset& poset) {
  std::vector<DownSet> out;
  out.reserve(poset.downset_count());
  for (Mask m : poset.downset_masks()) out.push_back(poset.downset(m));
  return out;
}

std::vector<DownSet> enumerate_sieves(const Poset& poset, ElementId p) {
  const Mask below = poset.down_mask(p);
  std::vector<DownSet> out;
  for (Mask m : poset.downset_masks()) {
    if (is_subset_of(m, below)) out.push_back(poset.downset(m));
  }
  return out;
}

std::vector<std::pair<ElementId, ElementId>> covering_pairs(const Poset& poset) {
  std::vector<std::pair<ElementId, ElementId>> out;
  const std::size_t n = poset.size();
  for (std::size_t p = 0; p < n; ++p) {
    const Mask above = poset.up_mask(ElementId{p}) & ~bit(p);
    for (std::size_t q = 0; q < n; ++q) {
      if (!(above & bit(q))) continue;
      // Something strictly between p and q lies in both ↑p∖{p} and ↓q∖{q}.
      const Mask between = above & poset.down_mask(ElementId{q}) & ~bit(q);
      if (between == 0) out.emplace_back(ElementId{p}, ElementId{q});
    }
  }
  return out;
}

std::string describe_poset(const Poset& poset) {
  std::string out = "[";
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (i) out += ',';
    out += poset.label(ElementId{i});
  }
  out += ']';
  for (const auto& [lo, hi] : covering_pairs(poset)) {
    out += ' ' + poset.label(lo) + '<' + poset.label(hi);
  }
  return out;
}

std::string format_mask(const Poset& poset, Mask m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (!(m & bit(i))) continue;
    if (!first) out += ',';
    out += poset.label(ElementId{i});
    first = false;
  }
  out += '}';
  return out;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 26) {
      labels.emplace_back(1, static_cast<char>('a' + i));
    } else {
      labels.push_back("e" + std::to_string(i));
    }
  }
  return labels;
}

void for_each_labeled_poset(std::size_t n, const std::function<void(const Poset&)>& visit,
                            std::size_t cap) {
  if (cap > kHardLabeledPosetCap) {
    throw Error(ErrorCode::CapExceeded, "labeled poset cap " + std::to_string(cap) +
                                            " exceeds hard cap " +
                                            std::to_string(kHardLabeledPosetCap));
  }
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded, "labeled posets on " + std::to_string(n) +
                                            " points exceed cap " + std::to_string(cap));
  }

  // Each unordered pair {i<k} is unrelated, i<k, or k<i. Antisymmetry holds
  // by construction, so only transitivity needs checking per assignment.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) pairs.emplace_back(i, k);
  }
  const auto labels = default_labels(n);
  std::vector<int> choice(pairs.size(), 0);
  std::vector<Mask> down(n);

  while (true) {
    for (std::size_t i = 0; i < n; ++i) down[i] = bit(i);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const auto [i, k] = pairs[e];
      if (choice[e] == 1) down[k] |= bit(i);
      if (choice[e] == 2) down[i] |= bit(k);
    }
    bool transitive = true;
    for (std::size_t q = 0; q < n && transitive; ++q) {
      for (Mask rest = down[q]; rest != 0; rest &= rest - 1) {
        const auto r = static_cast<std::size_t>(std::countr_zero(rest));
        if (!is_subset_of(down[r], down[q])) {
          transitive = false;
          break;
        }
      }
    }
    if (transitive) visit(Poset(labels, down));

    // Odometer increment, last pair fastest.
    std::size_t e = pairs.size();
    while (e > 0) {
      --e;
      if (++choice[e] < 3) break;
      choice[e] = 0;
      if (e == 0) return;
    }
    if (pairs.empty()) return;
  }
}

std::vector<Poset> enumerate_labeled_posets(std::size_t n, std::size_t cap) {
  std::vector<Poset> out;
  for_each_labeled_poset(n, [&](const Poset& p) { out.push_back(p); }, cap);
  return out;
}

}  // namespace ptri
