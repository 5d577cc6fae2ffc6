#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "biplane/bitrow.hpp"
#include "biplane/header.hpp"
#include "biplane/params.hpp"

namespace biplane {

struct IncidenceMatrix {
  BiplaneParams params;
  std::vector<BitRow> rows;

  bool at(std::size_t r, std::size_t c) const { return rows[r].test(c); }
  std::size_t size() const { return rows.size(); }

  friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;
};

struct Verdict {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// Row sums, column sums and pairwise row intersections of a biplane.
Verdict is_biplane(const IncidenceMatrix& m);

struct MatrixStats {
  int trace = 0;
  bool symmetric = false;
  bool is_canonical_header = false;
};
MatrixStats matrix_stats(const IncidenceMatrix& m);

IncidenceMatrix transpose(const IncidenceMatrix& m);
// Points and lines exchanged. Requires is_biplane(m).
IncidenceMatrix dual(const IncidenceMatrix& m);

struct LemmaViolation {
  int i = 0;  // D-block row group (1-based)
  int j = 0;  // D-block column group (1-based)
  int l = 0;  // position inside the relation (1-based)
  bool transposed = false;
};

// Zero pattern forced in the D-blocks of a canonical matrix with full
// trace: for i < j, D^{i,j}[j-i, l] = 0 and D^{i,j}[j-i+l, l] = 0, and the
// transposed relations for i > j. Returns the first violation.
std::optional<LemmaViolation> check_lemma_zero_pattern(const IncidenceMatrix& m);

// Every (row, col) cell the zero pattern forces to 0, 0-based.
std::vector<std::pair<std::size_t, std::size_t>> lemma_zero_cells(const BlockIndex& blocks);

}  // namespace biplane
