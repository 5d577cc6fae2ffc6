#include "biplane/incidence.hpp"


namespace biplane {

Verdict is_biplane(const IncidenceMatrix& m) {
  const auto v = static_cast<std::size_t>(m.params.v);
  const int k = m.params.k;
  if (m.rows.size() != v) return Verdict::fail("expected " + std::to_string(v) + " rows, got " + std::to_string(m.rows.size()));
  for (std::size_t r = 0; r < v; ++r) {
    if (m.rows[r].size() != v) return Verdict::fail("row " + std::to_string(r + 1) + " has wrong length");
    if (const int w = m.rows[r].weight(); w != k)
      return Verdict::fail("row " + std::to_string(r + 1) + " sum " + std::to_string(w) + " != " + std::to_string(k));
  }
  for (std::size_t c = 0; c < v; ++c) {
    int s = 0;
    for (const auto& row : m.rows) s += row.test(c);
    if (s != k) return Verdict::fail("column " + std::to_string(c + 1) + " sum " + std::to_string(s) + " != " + std::to_string(k));
  }
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b)
      if (const int d = dot(m.rows[a], m.rows[b]); d != 2)
        return Verdict::fail("rows " + std::to_string(a + 1) + "," + std::to_string(b + 1) + " meet in " + std::to_string(d));
  return Verdict::pass();
}

IncidenceMatrix transpose(const IncidenceMatrix& m) {
  IncidenceMatrix t;
  t.params = m.params;
  const std::size_t n = m.rows.size();
  t.rows.assign(n, BitRow(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (m.at(r, c)) t.rows[c].set(r);
  return t;
}

IncidenceMatrix dual(const IncidenceMatrix& m) { return transpose(m); }

MatrixStats matrix_stats(const IncidenceMatrix& m) {
  MatrixStats s;
  const std::size_t n = m.rows.size();
  for (std::size_t i = 0; i < n; ++i) s.trace += m.at(i, i);
  s.symmetric = (transpose(m) == m);
  if (m.params.k >= 1 && n == static_cast<std::size_t>(m.params.v)) {
    const auto header = canonical_header(m.params);
    s.is_canonical_header = true;
    for (std::size_t r = 0; r < header.rows.size(); ++r)
      if (!(m.rows[r] == header.rows[r])) s.is_canonical_header = false;
  }
  return s;
}

namespace {

// Visits every cell of the zero pattern in relation order; stops when the
// visitor returns true.
template <typename Visit>
void for_each_lemma_cell(const BlockIndex& blocks, Visit&& visit) {
  const int k = blocks.params().k;
  for (int i = 1; i <= k - 2; ++i)
    for (int j = i + 1; j <= k - 2; ++j) {
      const auto upper = blocks.d_block(i, j);
      const auto lower = blocks.d_block(j, i);
      const int width = k - 1 - j;  // columns of D^{i,j}, rows of D^{j,i}
      for (int l = 1; l <= width; ++l) {
        const auto r1 = upper.rows.begin + static_cast<std::size_t>(j - i - 1);
        const auto r2 = upper.rows.begin + static_cast<std::size_t>(j - i + l - 1);
        const auto c = upper.cols.begin + static_cast<std::size_t>(l - 1);
        if (visit(r1, c, LemmaViolation{i, j, l, false})) return;
        if (visit(r2, c, LemmaViolation{i, j, l, false})) return;
        // Transposed relations inside D^{j,i}.
        const auto tr = lower.rows.begin + static_cast<std::size_t>(l - 1);
        const auto c1 = lower.cols.begin + static_cast<std::size_t>(j - i - 1);
        const auto c2 = lower.cols.begin + static_cast<std::size_t>(j - i + l - 1);
        if (visit(tr, c1, LemmaViolation{j, i, l, true})) return;
        if (visit(tr, c2, LemmaViolation{j, i, l, true})) return;
      }
    }
}

}  // namespace

std::optional<LemmaViolation> check_lemma_zero_pattern(const IncidenceMatrix& m) {
  std::optional<LemmaViolation> found;
  for_each_lemma_cell(BlockIndex(m.params), [&](std::size_t r, std::size_t c, LemmaViolation where) {
    if (m.at(r, c)) {
      found = where;
      return true;
    }
    return false;
  });
  return found;
}

std::vector<std::pair<std::size_t, std::size_t>> lemma_zero_cells(const BlockIndex& blocks) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for_each_lemma_cell(blocks, [&](std::size_t r, std::size_t c, LemmaViolation) {
    cells.emplace_back(r, c);
    return false;
  });
  return cells;
}

}  // namespace biplane
