#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "biplane/bitrow.hpp"
#include "biplane/header.hpp"
#include "biplane/params.hpp"

namespace biplane {

constexpr int kMaxSupportedOrder = 11;

// Extra restrictions on the candidates for one row.
struct SubsetFilter {
  // Candidate must hold a 1 on its own diagonal cell.
  bool require_diagonal = true;
  // Forced cells of this row: (column, bit).
  std::vector<std::pair<std::size_t, bool>> forced;
  // Remaining 1s allowed per column; empty means unlimited.
  std::vector<int> column_budget;
};

// Every length-v row with weight k whose first k entries are the canonical
// prefix of `row`, that meets each header row in exactly two positions,
// and that satisfies the filter. Sorted lexicographically.
std::vector<BitRow> enumerate_subset(const CanonicalHeader& header, std::size_t row, const SubsetFilter& filter = {});
std::uint64_t count_subset(const CanonicalHeader& header, std::size_t row, const SubsetFilter& filter = {});

// Candidate rows for every non-header row index k..v-1.
struct TwoSpace {
  BiplaneParams params;
  bool diagonal_restricted = true;
  CanonicalHeader header;
  std::vector<std::vector<BitRow>> subsets;  // indexed by row; header rows are empty

  std::size_t first_row() const { return static_cast<std::size_t>(params.k); }
  std::size_t end_row() const { return static_cast<std::size_t>(params.v); }
  const std::vector<BitRow>& subset(std::size_t row) const { return subsets.at(row); }
  std::size_t total_size() const;
};

// Throws std::invalid_argument for orders outside 1..11.
void require_supported_order(int order);

TwoSpace build_two_space(const BiplaneParams& params, bool diagonal_restricted = true, unsigned threads = 1);

struct SubsetCensus {
  int order = 0;
  std::uint64_t q = 0;
  std::map<std::size_t, std::uint64_t> per_subset;  // row index -> cardinality
  std::optional<std::uint64_t> bound;
  bool constant = true;
};

// Count-only census of the diagonal-restricted subsets.
SubsetCensus q_census(int order, unsigned threads = 1);
SubsetCensus census_of(const TwoSpace& space);

// C(k-2, 2) * C(v-3k+5, k-5); empty when k < 5.
std::optional<std::uint64_t> cardinality_bound(const BiplaneParams& params);

std::uint64_t binomial(std::int64_t n, std::int64_t r);

}  // namespace biplane
