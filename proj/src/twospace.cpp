#include "biplane/twospace.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "biplane/parallel.hpp"

namespace biplane {

namespace {

// Backtracking over the header rows in order. Header row 0 is settled by
// the canonical prefix; header row t >= 1 then takes its missing 1s from
// column block t+1, whose columns meet header rows t and u > t.
class SubsetEnumerator {
 public:
  SubsetEnumerator(const CanonicalHeader& header, std::size_t row, const SubsetFilter& filter)
      : h_(header), k_(header.params.k), v_(static_cast<std::size_t>(header.params.v)), forced_(v_, -1) {
    if (row < static_cast<std::size_t>(k_) || row >= v_) throw std::out_of_range("enumerate_subset: row is not below the header");
    for (const auto& [col, bit] : filter.forced) {
      if (col >= v_) throw std::out_of_range("enumerate_subset: forced cell out of range");
      if (forced_[col] != -1 && forced_[col] != static_cast<int>(bit)) {
        feasible_ = false;
        return;
      }
      forced_[col] = bit ? 1 : 0;
    }
    budget_ = filter.column_budget;
    if (!budget_.empty() && budget_.size() != v_) throw std::invalid_argument("enumerate_subset: budget size must be v");

    current_ = header.row_prefix(row);
    for (std::size_t c = 0; c < static_cast<std::size_t>(k_); ++c)
      if (!admits(c, current_.test(c))) {
        feasible_ = false;
        return;
      }
    degree_.fill(0);
    degree_[0] = 2;
    const auto [a, b] = h_.blocks.column_pair(row);
    degree_[static_cast<std::size_t>(a)] = 1;
    degree_[static_cast<std::size_t>(b)] = 1;
    if (filter.require_diagonal) {
      if (!admits(row, true)) {
        feasible_ = false;
        return;
      }
      current_.set(row);
      decided_diagonal_ = row;
      ++degree_[static_cast<std::size_t>(a)];
      ++degree_[static_cast<std::size_t>(b)];
    }
  }

  template <typename Emit>
  void run(Emit&& emit) {
    if (feasible_) vertex(1, emit);
  }

 private:
  bool admits(std::size_t col, bool bit) const {
    if (forced_[col] != -1 && forced_[col] != static_cast<int>(bit)) return false;
    if (bit && !budget_.empty() && budget_[col] <= 0) return false;
    return true;
  }

  template <typename Emit>
  void vertex(int t, Emit& emit) {
    if (t == k_ - 1) {
      if (degree_[static_cast<std::size_t>(t)] == 2) emit(current_);
      return;
    }
    const Range block = h_.blocks.column_block(t + 1);
    // Columns forced to 1 in this block are taken unconditionally.
    std::array<std::size_t, 2> taken{};
    int taken_count = 0;
    std::array<std::size_t, 64> open{};
    std::size_t open_count = 0;
    for (std::size_t c = block.begin; c < block.end; ++c) {
      if (c == decided_diagonal_) continue;
      const auto u = static_cast<std::size_t>(h_.blocks.column_pair(c).second);
      if (forced_[c] == 1) {
        if (degree_[u] >= 2 || !admits(c, true) || taken_count == 2) return;
        taken[static_cast<std::size_t>(taken_count++)] = c;
      } else if (degree_[u] < 2 && admits(c, true)) {
        open[open_count++] = c;
      }
    }
    const int have = degree_[static_cast<std::size_t>(t)] + taken_count;
    if (have > 2) return;
    const int need = 2 - have;
    for (int i = 0; i < taken_count; ++i) take(taken[static_cast<std::size_t>(i)], true);
    if (need == 0) {
      vertex(t + 1, emit);
    } else if (need == 1) {
      for (std::size_t x = 0; x < open_count; ++x) {
        take(open[x], true);
        vertex(t + 1, emit);
        take(open[x], false);
      }
    } else {
      for (std::size_t x = 0; x < open_count; ++x) {
        take(open[x], true);
        for (std::size_t y = x + 1; y < open_count; ++y) {
          take(open[y], true);
          vertex(t + 1, emit);
          take(open[y], false);
        }
        take(open[x], false);
      }
    }
    for (int i = 0; i < taken_count; ++i) take(taken[static_cast<std::size_t>(i)], false);
  }

  void take(std::size_t col, bool on) {
    const auto [a, b] = h_.blocks.column_pair(col);
    const int delta = on ? 1 : -1;
    degree_[static_cast<std::size_t>(a)] += delta;
    degree_[static_cast<std::size_t>(b)] += delta;
    current_.set(col, on);
  }

  const CanonicalHeader& h_;
  int k_;
  std::size_t v_;
  std::vector<int> forced_;
  std::vector<int> budget_;
  BitRow current_;
  std::array<int, 64> degree_{};
  std::size_t decided_diagonal_ = static_cast<std::size_t>(-1);
  bool feasible_ = true;
};

}  // namespace

std::vector<BitRow> enumerate_subset(const CanonicalHeader& header, std::size_t row, const SubsetFilter& filter) {
  std::vector<BitRow> out;
  SubsetEnumerator(header, row, filter).run([&](const BitRow& r) { out.push_back(r); });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_subset(const CanonicalHeader& header, std::size_t row, const SubsetFilter& filter) {
  std::uint64_t n = 0;
  SubsetEnumerator(header, row, filter).run([&](const BitRow&) { ++n; });
  return n;
}

std::size_t TwoSpace::total_size() const {
  std::size_t n = 0;
  for (const auto& s : subsets) n += s.size();
  return n;
}

void require_supported_order(int order) {
  if (order < 1 || order > kMaxSupportedOrder)
    throw std::invalid_argument("order " + std::to_string(order) + " outside the supported range 1.." +
                                std::to_string(kMaxSupportedOrder));
}

TwoSpace build_two_space(const BiplaneParams& params, bool diagonal_restricted, unsigned threads) {
  require_supported_order(params.order);
  TwoSpace space;
  space.params = params;
  space.diagonal_restricted = diagonal_restricted;
  space.header = canonical_header(params);
  space.subsets.resize(static_cast<std::size_t>(params.v));
  const std::size_t first = space.first_row();
  SubsetFilter filter;
  filter.require_diagonal = diagonal_restricted;
  parallel_for(space.end_row() - first, threads,
               [&](std::size_t i) { space.subsets[first + i] = enumerate_subset(space.header, first + i, filter); });
  return space;
}

SubsetCensus census_of(const TwoSpace& space) {
  SubsetCensus c;
  c.order = space.params.order;
  for (std::size_t r = space.first_row(); r < space.end_row(); ++r) c.per_subset[r] = space.subset(r).size();
  c.bound = cardinality_bound(space.params);
  if (!c.per_subset.empty()) c.q = c.per_subset.begin()->second;
  for (const auto& [row, n] : c.per_subset) c.constant = c.constant && n == c.q;
  return c;
}

SubsetCensus q_census(int order, unsigned threads) {
  require_supported_order(order);
  const auto params = BiplaneParams::from_order(order);
  const auto header = canonical_header(params);
  const auto first = static_cast<std::size_t>(params.k);
  const auto n = static_cast<std::size_t>(params.v) - first;
  std::vector<std::uint64_t> counts(n);
  parallel_for(n, threads, [&](std::size_t i) { counts[i] = count_subset(header, first + i); });
  SubsetCensus c;
  c.order = order;
  for (std::size_t i = 0; i < n; ++i) c.per_subset[first + i] = counts[i];
  c.bound = cardinality_bound(params);
  if (!counts.empty()) c.q = counts.front();
  for (auto x : counts) c.constant = c.constant && x == c.q;
  return c;
}

std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::int64_t i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return out;
}

std::optional<std::uint64_t> cardinality_bound(const BiplaneParams& params) {
  const int k = params.k;
  if (k < 5) return std::nullopt;
  return binomial(k - 2, 2) * binomial(params.v - 3 * k + 5, k - 5);
}

}  // namespace biplane
