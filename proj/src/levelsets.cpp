#include "biplane/levelsets.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "biplane/parallel.hpp"

namespace biplane {

bool ExceptionalSet::contains(std::size_t row) const { return std::binary_search(rows.begin(), rows.end(), row); }

ExceptionalSet exceptional_indices(const BiplaneParams& params) {
  ExceptionalSet e;
  e.params = params;
  const int k = params.k, v = params.v;
  int a = 2 * k - 2;
  for (int t = 1; a <= v; ++t) {
    e.rows.push_back(static_cast<std::size_t>(a - 1));
    if (a == v) break;
    a += k - 2 - t;
  }
  return e;
}

std::optional<std::uint64_t> ClassBin::constant_count() const {
  if (per_subset.empty()) return std::nullopt;
  const auto first = per_subset.begin()->second;
  for (const auto& [row, n] : per_subset)
    if (n != first) return std::nullopt;
  return first;
}

namespace {

// Subset rows packed contiguously, W words per vector.
template <std::size_t W>
struct Packed {
  std::vector<std::uint64_t> data;
  std::size_t count = 0;

  explicit Packed(const std::vector<BitRow>& rows) : count(rows.size()) {
    data.reserve(rows.size() * W);
    for (const auto& r : rows)
      for (std::size_t w = 0; w < W; ++w) data.push_back(r.word(w));
  }

  std::uint64_t meeting_in_two(const BitRow& a) const {
    std::uint64_t n = 0;
    const std::uint64_t* p = data.data();
    for (std::size_t i = 0; i < count; ++i, p += W) {
      int d = 0;
      for (std::size_t w = 0; w < W; ++w) d += std::popcount(a.word(w) & p[w]);
      n += d == 2;
    }
    return n;
  }
};

std::pair<std::uint64_t, int> modal(const std::vector<std::uint64_t>& counts) {
  std::map<std::uint64_t, int> freq;
  for (auto c : counts) ++freq[c];
  std::uint64_t value = 0;
  int mult = 0;
  for (const auto& [c, f] : freq)
    if (f >= mult) {
      value = c;
      mult = f;
    }
  return {value, mult};
}

template <std::size_t W>
std::vector<std::vector<VectorModal>> profile_all(const TwoSpace& space, const std::vector<std::size_t>& homes, unsigned threads,
                                                  std::size_t sample) {
  std::vector<Packed<W>> packed;
  packed.reserve(homes.size());
  for (auto row : homes) packed.emplace_back(space.subset(row));

  struct Item {
    std::size_t home_index;
    std::size_t vector_index;
  };
  std::vector<Item> items;
  for (std::size_t h = 0; h < homes.size(); ++h) {
    const std::size_t size = space.subset(homes[h]).size();
    if (sample == 0 || sample >= size) {
      for (std::size_t x = 0; x < size; ++x) items.push_back({h, x});
    } else {
      for (std::size_t t = 0; t < sample; ++t) items.push_back({h, t * size / sample});
    }
  }

  std::vector<std::vector<VectorModal>> out(homes.size());
  for (std::size_t h = 0; h < homes.size(); ++h) out[h].resize(space.subset(homes[h]).size());
  parallel_for(items.size(), threads, [&](std::size_t n) {
    const auto [h, x] = items[n];
    const BitRow& a = space.subset(homes[h])[x];
    std::vector<std::uint64_t> counts;
    counts.reserve(homes.size());
    for (std::size_t j = 0; j < homes.size(); ++j)
      if (j != h) counts.push_back(packed[j].meeting_in_two(a));
    const auto [value, mult] = modal(counts);
    out[h][x] = {value, mult, true};
  });
  return out;
}

}  // namespace

LevelProfile level_profile(const BitRow& a, std::size_t home, const TwoSpace& space, const ExceptionalSet& exceptional) {
  LevelProfile p;
  p.vector = a;
  p.home = home;
  std::vector<std::uint64_t> regular;
  for (std::size_t j = space.first_row(); j < space.end_row(); ++j) {
    if (j == home) continue;
    std::uint64_t n = 0;
    for (const auto& b : space.subset(j)) n += dot(a, b) == 2;
    p.counts[j] = n;
    if (!exceptional.contains(j)) regular.push_back(n);
  }
  std::tie(p.modal_value, p.modal_multiplicity) = modal(regular);
  return p;
}

VectorClassCensus classify_vectors(const TwoSpace& space, const ExceptionalSet& exceptional, const ClassifyOptions& options) {
  VectorClassCensus census;
  const auto threshold = options.threshold;
  census.order = space.params.order;
  std::vector<std::size_t> homes;
  for (std::size_t j = space.first_row(); j < space.end_row(); ++j)
    if (!exceptional.contains(j)) homes.push_back(j);
  census.foreign_subsets = homes.empty() ? 0 : static_cast<int>(homes.size()) - 1;

  const auto stats = static_cast<std::size_t>(space.params.v) <= 64 ? profile_all<1>(space, homes, options.threads, options.sample)
                                                                     : profile_all<2>(space, homes, options.threads, options.sample);
  for (std::size_t h = 0; h < homes.size(); ++h)
    for (const auto& s : stats[h]) census.sampled = census.sampled || !s.profiled;

  std::map<std::pair<std::uint64_t, int>, ClassBin> bins;
  int max_mult = 0;
  for (std::size_t h = 0; h < homes.size(); ++h)
    for (const auto& s : stats[h]) {
      if (!s.profiled) continue;
      auto& bin = bins[{s.modal_value, s.multiplicity}];
      bin.modal_value = s.modal_value;
      bin.multiplicity = s.multiplicity;
      ++bin.total;
      ++bin.per_subset[homes[h]];
      max_mult = std::max(max_mult, s.multiplicity);
    }
  census.threshold = threshold.value_or(max_mult);
  if (census.threshold < 0) throw std::invalid_argument("classify_vectors: negative threshold");

  std::map<std::uint64_t, ClassBin> merged;
  for (auto& [key, bin] : bins) {
    for (auto row : homes) bin.per_subset.try_emplace(row, 0);
    bin.regular = bin.multiplicity >= census.threshold;
    census.histogram.push_back(bin);
    if (!bin.regular) continue;
    auto& m = merged[bin.modal_value];
    m.modal_value = bin.modal_value;
    m.multiplicity = m.total == 0 ? bin.multiplicity : std::min(m.multiplicity, bin.multiplicity);
    m.regular = true;
    m.total += bin.total;
    for (const auto& [row, n] : bin.per_subset) m.per_subset[row] += n;
  }
  for (auto& [value, m] : merged)
    for (auto row : homes) m.per_subset.try_emplace(row, 0);

  std::vector<ClassBin> dominant;
  for (auto& [value, m] : merged) dominant.push_back(m);
  std::stable_sort(dominant.begin(), dominant.end(), [](const ClassBin& a, const ClassBin& b) {
    return a.total != b.total ? a.total > b.total : a.modal_value > b.modal_value;
  });
  if (dominant.size() > 2) dominant.resize(2);
  std::sort(dominant.begin(), dominant.end(), [](const ClassBin& a, const ClassBin& b) { return a.modal_value > b.modal_value; });
  if (!dominant.empty()) census.alpha = dominant[0];
  if (dominant.size() > 1) census.beta = dominant[1];

  census.tags.assign(space.end_row(), {});
  census.modal.assign(space.end_row(), {});
  for (std::size_t h = 0; h < homes.size(); ++h) {
    census.modal[homes[h]] = stats[h];
    auto& tags = census.tags[homes[h]];
    tags.assign(stats[h].size(), VectorClass::other);
    for (std::size_t x = 0; x < stats[h].size(); ++x) {
      const auto& s = stats[h][x];
      if (!s.profiled || s.multiplicity < census.threshold) continue;
      if (census.alpha && s.modal_value == census.alpha->modal_value)
        tags[x] = VectorClass::alpha;
      else if (census.beta && s.modal_value == census.beta->modal_value)
        tags[x] = VectorClass::beta;
    }
  }
  return census;
}

TwoSpace restricted_space(const TwoSpace& space, const VectorClassCensus& census, const ExceptionalSet& exceptional) {
  if (census.sampled) throw std::invalid_argument("restricted_space: needs a census of every vector");
  TwoSpace out = space;
  for (std::size_t j = space.first_row(); j < space.end_row(); ++j) {
    if (exceptional.contains(j)) continue;
    const auto& tags = census.tags.at(j);
    if (tags.size() != space.subset(j).size()) throw std::invalid_argument("restricted_space: census does not match space");
    std::vector<BitRow> kept;
    for (std::size_t x = 0; x < tags.size(); ++x)
      if (tags[x] != VectorClass::other) kept.push_back(space.subset(j)[x]);
    out.subsets[j] = std::move(kept);
  }
  return out;
}

}  // namespace biplane
