#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "biplane/bitrow.hpp"

namespace biplane {

// Small dense 0/1 matrix stored as rows of bits.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);
  explicit BinaryMatrix(std::vector<BitRow> rows);

  static BinaryMatrix from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool at(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

  const BitRow& row(std::size_t r) const { return rows_[r]; }
  BitRow& row(std::size_t r) { return rows_[r]; }
  const std::vector<BitRow>& row_data() const { return rows_; }

  BinaryMatrix transpose() const;
  // Integer product reduced to a 0/1 matrix; throws if an entry exceeds 1.
  BinaryMatrix operator*(const BinaryMatrix& rhs) const;

  // Copies `block` into this matrix with its top-left corner at (r0, c0).
  void place(const BinaryMatrix& block, std::size_t r0, std::size_t c0);

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitRow> rows_;
};

// Generator matrices used to describe the canonical form and the
// structural invariants.
BinaryMatrix identity(std::size_t n);
BinaryMatrix unit(std::size_t m, std::size_t n);
BinaryMatrix zero(std::size_t m, std::size_t n);
// (m+1) x n: m-n zero rows, an all-ones row, then I_n. Requires m >= n >= 1.
BinaryMatrix k_block(std::size_t m, std::size_t n);
// Permutation matrix of the n-cycle c_1 -> c_2 -> ... -> c_n -> c_1 raised to the i-th power.
BinaryMatrix cyclic(std::size_t n, std::size_t power);
// Order-reversal permutation matrix.
BinaryMatrix anticyclic(std::size_t n);
// diag(I_i, C_{n-i}^2).
BinaryMatrix t_block(std::size_t n, std::size_t i);
// Path on n vertices with loops at both ends: L[0][0]=L[0][1]=1, L[r][r-1]=L[r][r+1]=1,
// L[n-1][n-2]=L[n-1][n-1]=1. Requires n >= 2.
BinaryMatrix l_block(std::size_t n);
// M * anticyclic(cols).
BinaryMatrix reverse_columns(const BinaryMatrix& m);

}  // namespace biplane
