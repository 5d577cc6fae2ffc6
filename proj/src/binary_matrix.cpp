#include "biplane/binary_matrix.hpp"

#include <stdexcept>

namespace biplane {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitRow(cols)) {}

BinaryMatrix::BinaryMatrix(std::vector<BitRow> rows) : cols_(rows.empty() ? 0 : rows.front().size()), rows_(std::move(rows)) {
  for (const auto& r : rows_)
    if (r.size() != cols_) throw std::invalid_argument("BinaryMatrix: ragged rows");
}

BinaryMatrix BinaryMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitRow> out;
  out.reserve(rows.size());
  for (const auto& s : rows) out.push_back(BitRow::from_string(s));
  return BinaryMatrix(std::move(out));
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c)) t.set(c, r);
  return t;
}

BinaryMatrix BinaryMatrix::operator*(const BinaryMatrix& rhs) const {
  if (cols_ != rhs.rows()) throw std::invalid_argument("BinaryMatrix: dimension mismatch in product");
  const BinaryMatrix rt = rhs.transpose();
  BinaryMatrix out(rows(), rhs.cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      const int d = dot(rows_[r], rt.row(c));
      if (d > 1) throw std::domain_error("BinaryMatrix: product is not a 0/1 matrix");
      if (d) out.set(r, c);
    }
  return out;
}

void BinaryMatrix::place(const BinaryMatrix& block, std::size_t r0, std::size_t c0) {
  if (r0 + block.rows() > rows() || c0 + block.cols() > cols_)
    throw std::out_of_range("BinaryMatrix::place: block does not fit");
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) set(r0 + r, c0 + c, block.at(r, c));
}

BinaryMatrix identity(std::size_t n) {
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinaryMatrix unit(std::size_t m, std::size_t n) {
  BinaryMatrix out(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) out.set(r, c);
  return out;
}

BinaryMatrix zero(std::size_t m, std::size_t n) { return BinaryMatrix(m, n); }

BinaryMatrix k_block(std::size_t m, std::size_t n) {
  if (n < 1 || m < n) throw std::invalid_argument("k_block requires m >= n >= 1");
  BinaryMatrix out(m + 1, n);
  out.place(unit(1, n), m - n, 0);
  out.place(identity(n), m - n + 1, 0);
  return out;
}

BinaryMatrix cyclic(std::size_t n, std::size_t power) {
  if (n < 1) throw std::invalid_argument("cyclic requires n >= 1");
  BinaryMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) out.set(r, (r + power) % n);
  return out;
}

BinaryMatrix anticyclic(std::size_t n) {
  if (n < 1) throw std::invalid_argument("anticyclic requires n >= 1");
  BinaryMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) out.set(r, n - 1 - r);
  return out;
}

BinaryMatrix t_block(std::size_t n, std::size_t i) {
  if (i > n) throw std::invalid_argument("t_block requires i <= n");
  BinaryMatrix out(n, n);
  out.place(identity(i), 0, 0);
  if (n > i) out.place(cyclic(n - i, 2), i, i);
  return out;
}

BinaryMatrix l_block(std::size_t n) {
  if (n < 2) throw std::invalid_argument("l_block requires n >= 2");
  BinaryMatrix out(n, n);
  out.set(0, 0);
  out.set(0, 1);
  for (std::size_t r = 1; r + 1 < n; ++r) {
    out.set(r, r - 1);
    out.set(r, r + 1);
  }
  out.set(n - 1, n - 2);
  out.set(n - 1, n - 1);
  return out;
}

BinaryMatrix reverse_columns(const BinaryMatrix& m) { return m * anticyclic(m.cols()); }

}  // namespace biplane
