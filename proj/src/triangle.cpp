#include "ptri/triangle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <chrono>
#include <functional>

#include "ptri/heyting.hpp"

namespace ptri {

Nucleus subset_to_nucleus(const Poset& poset, const Subset& x) {
  poset.require_owner(x);
  RawNucleusTable table;
  table.reserve(poset.downset_count());
  for (Mask s : poset.downset_masks()) table.push_back(implication_mask(poset, x.mask(), s));
  return Nucleus::from_trusted_table(poset, std::move(table));
}

Subset nucleus_to_subset(const Poset& poset, const Nucleus& j) {
  if (j.poset().tag() != poset.tag()) {
    throw Error(ErrorCode::PosetMismatch, "nucleus belongs to another poset");
  }
  Mask out = 0;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    const DownSet punctured = punctured_downset(poset, ElementId{p});
    if (!apply(j, punctured).contains(ElementId{p})) out |= bit(p);
  }
  return poset.subset(out);
}

Subset nucleus_to_subset_alt(const Poset& poset, const Nucleus& j) {
  if (j.poset().tag() != poset.tag()) {
    throw Error(ErrorCode::PosetMismatch, "nucleus belongs to another poset");
  }
  Mask out = 0;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    const ElementId id{p};
    if (apply(j, principal_downset(poset, id)) != apply(j, punctured_downset(poset, id))) {
      out |= bit(p);
    }
  }
  return poset.subset(out);
}

GrothendieckTopology subset_to_topology(const Poset& poset, const Subset& x) {
  poset.require_owner(x);
  RawSieveFamilies families(poset.size());
  for (std::size_t p = 0; p < poset.size(); ++p) {
    const Mask required = x.mask() & poset.down_mask(ElementId{p});
    for (const DownSet& s : enumerate_sieves(poset, ElementId{p})) {
      if (is_subset_of(required, s.mask())) families[p].push_back(s.mask());
    }
  }
  return GrothendieckTopology::from_trusted_families(poset, std::move(families));
}

Subset topology_to_subset(const Poset& poset, const GrothendieckTopology& topology) {
  if (topology.poset().tag() != poset.tag()) {
    throw Error(ErrorCode::PosetMismatch, "topology belongs to another poset");
  }
  Mask out = 0;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    const auto family = topology.family(ElementId{p});
    if (family.size() == 1 && family.front() == poset.down_mask(ElementId{p})) out |= bit(p);
  }
  return poset.subset(out);
}

GrothendieckTopology nucleus_to_topology(const Poset& poset, const Nucleus& j) {
  if (j.poset().tag() != poset.tag()) {
    throw Error(ErrorCode::PosetMismatch, "nucleus belongs to another poset");
  }
  RawSieveFamilies families(poset.size());
  for (std::size_t p = 0; p < poset.size(); ++p) {
    for (const DownSet& s : enumerate_sieves(poset, ElementId{p})) {
      if (apply(j, s).contains(ElementId{p})) families[p].push_back(s.mask());
    }
  }
  return GrothendieckTopology::from_trusted_families(poset, std::move(families));
}

Nucleus topology_to_nucleus(const Poset& poset, const GrothendieckTopology& topology) {
  if (topology.poset().tag() != poset.tag()) {
    throw Error(ErrorCode::PosetMismatch, "topology belongs to another poset");
  }
  RawNucleusTable table;
  table.reserve(poset.downset_count());
  for (Mask s : poset.downset_masks()) {
    Mask image = 0;
    for (std::size_t p = 0; p < poset.size(); ++p) {
      if (topology.covers(ElementId{p}, s & poset.down_mask(ElementId{p}))) image |= bit(p);
    }
    table.push_back(image);
  }
  return Nucleus::from_trusted_table(poset, std::move(table));
}

Subset nucleus_to_subset_via_topology(const Poset& poset, const Nucleus& j) {
  if (j.poset().tag() != poset.tag()) {
    throw Error(ErrorCode::PosetMismatch, "nucleus belongs to another poset");
  }
  Mask out = 0;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    const ElementId id{p};
    const DownSet whole = principal_downset(poset, id);
    const auto sieves = enumerate_sieves(poset, id);
    const bool kept = std::all_of(sieves.begin(), sieves.end(), [&](const DownSet& s) {
      return apply(j, s).contains(id) == (s == whole);
    });
    if (kept) out |= bit(p);
  }
  return poset.subset(out);
}

bool TriangleReport::passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.passed; });
}

const LawResult* TriangleReport::find(std::string_view law) const {
  const auto it =
      std::find_if(laws.begin(), laws.end(), [&](const LawResult& l) { return l.name == law; });
  return it == laws.end() ? nullptr : &*it;
}

namespace {

std::string show(const Poset& poset, const Subset& x) { return format_mask(poset, x.mask()); }

std::string show(const Poset& poset, const Nucleus& j) {
  std::string out = "[";
  const auto downsets = poset.downset_masks();
  for (std::size_t i = 0; i < downsets.size(); ++i) {
    if (i) out += ' ';
    out += format_mask(poset, downsets[i]) + "->" + format_mask(poset, j.images()[i]);
  }
  return out + "]";
}

std::string show(const Poset& poset, const GrothendieckTopology& topology) {
  std::string out = "{";
  for (std::size_t p = 0; p < poset.size(); ++p) {
    if (p) out += "; ";
    out += poset.label(ElementId{p}) + ":";
    for (Mask s : topology.family(ElementId{p})) out += " " + format_mask(poset, s);
  }
  return out + "}";
}

RawSieveFamilies raw_families(const GrothendieckTopology& topology) {
  RawSieveFamilies out;
  for (std::size_t p = 0; p < topology.poset().size(); ++p) {
    const auto f = topology.family(ElementId{p});
    out.emplace_back(f.begin(), f.end());
  }
  return out;
}

class LawRecorder {
 public:
  explicit LawRecorder(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& witness) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.witness = witness();
    }
  }

  LawResult take() { return std::move(result_); }

 private:
  LawResult result_;
};

template <typename T>
bool sorted_contains(const std::vector<T>& sorted, const T& value) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  return it != sorted.end() && *it == value;
}

}  // namespace

TriangleReport verify_triangle(const Poset& poset, const VerifyLimits& limits) {
  const auto start = std::chrono::steady_clock::now();

  TriangleReport report;
  report.poset = describe_poset(poset);
  report.size = poset.size();
  report.downward_directed = is_downward_directed(poset);

  // Independent oracles. Nothing below feeds conversion output into counts.
  std::vector<Subset> subsets;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << poset.size()); ++m) {
    subsets.push_back(poset.subset(static_cast<Mask>(m)));
  }
  const auto nuclei = enumerate_nuclei(poset, limits.max_downsets);
  const auto topologies = enumerate_topologies(poset, limits.max_points);
  report.counts = {subsets.size(), nuclei.size(), topologies.size()};

  std::vector<Nucleus> nucleus_of;
  std::vector<GrothendieckTopology> topology_of;
  for (const Subset& x : subsets) {
    nucleus_of.push_back(subset_to_nucleus(poset, x));
    topology_of.push_back(subset_to_topology(poset, x));
  }

  auto& laws = report.laws;
  {
    LawRecorder law("roundtrip_subset_nucleus");
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const Subset back = nucleus_to_subset(poset, nucleus_of[i]);
      law.check(back == subsets[i], [&] {
        return "X=" + show(poset, subsets[i]) + " came back as " + show(poset, back);
      });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("roundtrip_subset_topology");
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const Subset back = topology_to_subset(poset, topology_of[i]);
      law.check(back == subsets[i], [&] {
        return "X=" + show(poset, subsets[i]) + " came back as " + show(poset, back);
      });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("roundtrip_nucleus_subset");
    for (const Nucleus& j : nuclei) {
      const Nucleus back = subset_to_nucleus(poset, nucleus_to_subset(poset, j));
      law.check(back == j, [&] { return "j=" + show(poset, j); });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("roundtrip_topology_subset");
    for (const GrothendieckTopology& t : topologies) {
      const GrothendieckTopology back = subset_to_topology(poset, topology_to_subset(poset, t));
      law.check(back == t, [&] { return "J=" + show(poset, t); });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("roundtrip_nucleus_topology");
    for (const Nucleus& j : nuclei) {
      const Nucleus back = topology_to_nucleus(poset, nucleus_to_topology(poset, j));
      law.check(back == j, [&] { return "j=" + show(poset, j); });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("roundtrip_topology_nucleus");
    for (const GrothendieckTopology& t : topologies) {
      const GrothendieckTopology back = nucleus_to_topology(poset, topology_to_nucleus(poset, t));
      law.check(back == t, [&] { return "J=" + show(poset, t); });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("commute_nucleus_topology");
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      law.check(nucleus_to_topology(poset, nucleus_of[i]) == topology_of[i],
                [&] { return "X=" + show(poset, subsets[i]); });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("commute_topology_nucleus");
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      law.check(topology_to_nucleus(poset, topology_of[i]) == nucleus_of[i],
                [&] { return "X=" + show(poset, subsets[i]); });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("identity_composite");
    for (const Nucleus& j : nuclei) {
      const Subset direct = nucleus_to_subset(poset, j);
      const Subset composite = nucleus_to_subset_via_topology(poset, j);
      law.check(direct == composite, [&] {
        return "j=" + show(poset, j) + " X_j=" + show(poset, direct) +
               " X_{J_j}=" + show(poset, composite);
      });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("identity_alt");
    for (const Nucleus& j : nuclei) {
      const Subset direct = nucleus_to_subset(poset, j);
      const Subset alt = nucleus_to_subset_alt(poset, j);
      law.check(direct == alt, [&] {
        return "j=" + show(poset, j) + " X_j=" + show(poset, direct) +
               " X'_j=" + show(poset, alt);
      });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("composite_cross_check");
    for (const Nucleus& j : nuclei) {
      const Subset literal = topology_to_subset(poset, nucleus_to_topology(poset, j));
      const Subset quantified = nucleus_to_subset_via_topology(poset, j);
      law.check(literal == quantified, [&] { return "j=" + show(poset, j); });
    }
    laws.push_back(law.take());
  }

  const std::uint64_t expected = std::uint64_t{1} << poset.size();
  {
    LawRecorder law("count_nuclei");
    law.check(nuclei.size() == expected, [&] {
      return "enumerated " + std::to_string(nuclei.size()) + " nuclei, expected " +
             std::to_string(expected);
    });
    std::vector<Nucleus> image = nucleus_of;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    law.check(image.size() == subsets.size(), [&] {
      return "X -> j_X hits only " + std::to_string(image.size()) + " distinct nuclei";
    });
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      law.check(sorted_contains(nuclei, nucleus_of[i]), [&] {
        return "j_X for X=" + show(poset, subsets[i]) + " is missing from the enumeration";
      });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("count_topologies");
    law.check(topologies.size() == expected, [&] {
      return "enumerated " + std::to_string(topologies.size()) + " topologies, expected " +
             std::to_string(expected);
    });
    std::vector<GrothendieckTopology> image = topology_of;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    law.check(image.size() == subsets.size(), [&] {
      return "X -> J_X hits only " + std::to_string(image.size()) + " distinct topologies";
    });
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      law.check(sorted_contains(topologies, topology_of[i]), [&] {
        return "J_X for X=" + show(poset, subsets[i]) + " is missing from the enumeration";
      });
    }
    laws.push_back(law.take());
  }
  {
    LawRecorder law("well_defined");
    auto nucleus_ok = [&](const Nucleus& j, const std::string& origin) {
      std::string why;
      try {
        validate_nucleus(poset, RawNucleusTable(j.images().begin(), j.images().end()));
      } catch (const Error& e) {
        why = e.what();
      }
      law.check(why.empty(), [&] { return origin + ": " + why; });
    };
    auto topology_ok = [&](const GrothendieckTopology& t, const std::string& origin) {
      std::string why;
      try {
        validate_topology(poset, raw_families(t));
      } catch (const Error& e) {
        why = e.what();
      }
      law.check(why.empty(), [&] { return origin + ": " + why; });
    };
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      nucleus_ok(nucleus_of[i], "j_X for X=" + show(poset, subsets[i]));
      topology_ok(topology_of[i], "J_X for X=" + show(poset, subsets[i]));
    }
    for (const Nucleus& j : nuclei) topology_ok(nucleus_to_topology(poset, j), "J_j");
    for (const GrothendieckTopology& t : topologies) {
      nucleus_ok(topology_to_nucleus(poset, t), "j_J");
    }
    laws.push_back(law.take());
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<TriangleReport> verify_all(std::span<const Poset> posets, const VerifyLimits& limits,
                                       std::size_t threads) {
  std::vector<TriangleReport> reports(posets.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(posets.size(), 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < posets.size(); i = next++) {
      try {
        reports[i] = verify_triangle(posets[i], limits);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& worker : pool) worker.join();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

}  // namespace ptri
