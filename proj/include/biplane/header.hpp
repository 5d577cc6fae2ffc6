#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "biplane/bitrow.hpp"
#include "biplane/params.hpp"

namespace biplane {

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool contains(std::size_t x) const { return x >= begin && x < end; }
  friend bool operator==(const Range&, const Range&) = default;
};

// Block layout of a canonical incidence matrix. All row and column indices
// are 0-based; block and group labels follow the 1-based D^{i,j} naming.
//
// Column block j (j = 0..k-1) has width k-j; block 0 is the single
// all-ones column. Row group b (b = 1..k-2) below the header has k-1-b
// rows. D^{i,j} is row group i crossed with column block j+1.
class BlockIndex {
 public:
  BlockIndex() = default;
  explicit BlockIndex(const BiplaneParams& params);

  const BiplaneParams& params() const { return params_; }

  Range column_block(int j) const { return col_blocks_.at(static_cast<std::size_t>(j)); }
  Range row_group(int b) const { return row_groups_.at(static_cast<std::size_t>(b - 1)); }

  struct DBlock {
    Range rows;
    Range cols;
  };
  DBlock d_block(int i, int j) const;

  // Header rows (0-based, a < b) carrying the two header 1s of column c >= 1.
  // Column 0 meets every header row and has no pair.
  std::pair<int, int> column_pair(std::size_t c) const { return column_pairs_.at(c); }
  // Inverse of column_pair.
  std::size_t column_of_pair(int a, int b) const;

  // Row group / column block containing an index, with its offset.
  std::pair<int, std::size_t> group_of_row(std::size_t row) const;
  std::pair<int, std::size_t> block_of_column(std::size_t col) const;

 private:
  BiplaneParams params_;
  std::vector<Range> col_blocks_;
  std::vector<Range> row_groups_;
  std::vector<std::pair<int, int>> column_pairs_;
};

struct CanonicalHeader {
  BiplaneParams params;
  std::vector<BitRow> rows;  // k rows of length v
  BlockIndex blocks;

  // The forced first k entries of a non-header row: the transpose of the
  // header part of the same-numbered column.
  BitRow row_prefix(std::size_t row) const;
};

CanonicalHeader canonical_header(const BiplaneParams& params);

}  // namespace biplane
