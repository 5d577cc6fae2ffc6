#include "biplane/header.hpp"

#include <stdexcept>

namespace biplane {

BlockIndex::BlockIndex(const BiplaneParams& params) : params_(params) {
  const int k = params.k;
  std::size_t col = 0;
  column_pairs_.assign(static_cast<std::size_t>(params.v), {-1, -1});
  col_blocks_.push_back({0, 1});
  col = 1;
  for (int j = 1; j < k; ++j) {
    const std::size_t width = static_cast<std::size_t>(k - j);
    col_blocks_.push_back({col, col + width});
    // Column offset o of block j meets header row j-1 (the all-ones row of
    // the block) and header row j+o (the identity part).
    for (std::size_t o = 0; o < width; ++o) column_pairs_[col + o] = {j - 1, j + static_cast<int>(o)};
    col += width;
  }
  std::size_t row = static_cast<std::size_t>(k);
  for (int b = 1; b <= k - 2; ++b) {
    const std::size_t size = static_cast<std::size_t>(k - 1 - b);
    row_groups_.push_back({row, row + size});
    row += size;
  }
  if (col != static_cast<std::size_t>(params.v) || row != static_cast<std::size_t>(params.v))
    throw std::logic_error("BlockIndex: ranges do not partition the matrix");
}

BlockIndex::DBlock BlockIndex::d_block(int i, int j) const {
  const int k = params_.k;
  if (i < 1 || i > k - 2 || j < 1 || j > k - 2) throw std::out_of_range("d_block index out of range");
  return {row_group(i), column_block(j + 1)};
}

std::size_t BlockIndex::column_of_pair(int a, int b) const {
  if (a > b) std::swap(a, b);
  if (a < 0 || a == b || b >= params_.k) throw std::out_of_range("column_of_pair: invalid header rows");
  // Block a+1 holds the pairs (a, a+1+o).
  return col_blocks_[static_cast<std::size_t>(a + 1)].begin + static_cast<std::size_t>(b - a - 1);
}

std::pair<int, std::size_t> BlockIndex::group_of_row(std::size_t row) const {
  for (std::size_t g = 0; g < row_groups_.size(); ++g)
    if (row_groups_[g].contains(row)) return {static_cast<int>(g + 1), row - row_groups_[g].begin};
  throw std::out_of_range("group_of_row: header row or out of range");
}

std::pair<int, std::size_t> BlockIndex::block_of_column(std::size_t col) const {
  for (std::size_t b = 0; b < col_blocks_.size(); ++b)
    if (col_blocks_[b].contains(col)) return {static_cast<int>(b), col - col_blocks_[b].begin};
  throw std::out_of_range("block_of_column: out of range");
}

BitRow CanonicalHeader::row_prefix(std::size_t row) const {
  BitRow prefix(static_cast<std::size_t>(params.v));
  for (std::size_t t = 0; t < rows.size(); ++t)
    if (rows[t].test(row)) prefix.set(t);
  return prefix;
}

CanonicalHeader canonical_header(const BiplaneParams& params) {
  CanonicalHeader h;
  h.params = params;
  h.blocks = BlockIndex(params);
  const auto v = static_cast<std::size_t>(params.v);
  h.rows.assign(static_cast<std::size_t>(params.k), BitRow(v));
  for (auto& r : h.rows) r.set(0);
  for (std::size_t c = 1; c < v; ++c) {
    const auto [a, b] = h.blocks.column_pair(c);
    h.rows[static_cast<std::size_t>(a)].set(c);
    h.rows[static_cast<std::size_t>(b)].set(c);
  }
  return h;
}

}  // namespace biplane
