#include <doctest.h>

#include "biplane/binary_matrix.hpp"
#include "biplane/header.hpp"
#include "biplane/incidence.hpp"
#include "biplane/matrix_io.hpp"
#include "biplane/twospace.hpp"
#include "fixtures.hpp"

using namespace biplane;

TEST_CASE("parameters") {
  const auto p4 = params_from_order(4);
  CHECK(p4.k == 6);
  CHECK(p4.v == 16);
  CHECK(params_from_order(9).v == 56);
  CHECK(params_from_order(11).k == 13);
  CHECK(params_from_order(11).v == 79);
  CHECK_THROWS_AS(params_from_order(0), std::invalid_argument);
  for (int n = 1; n <= 20; ++n) {
    const auto p = params_from_order(n);
    CHECK(p.v == 1 + p.k * (p.k - 1) / 2);
  }
}

TEST_CASE("generator matrices") {
  CHECK(k_block(5, 3) == BinaryMatrix::from_strings({"000", "000", "111", "100", "010", "001"}));
  CHECK(l_block(3) == BinaryMatrix::from_strings({"110", "101", "011"}));
  CHECK(reverse_columns(l_block(4)) == BinaryMatrix::from_strings({"0011", "0101", "1010", "1100"}));
  CHECK(anticyclic(3) == BinaryMatrix::from_strings({"001", "010", "100"}));
  CHECK(cyclic(4, 1) * cyclic(4, 3) == identity(4));
  CHECK(cyclic(5, 0) == identity(5));
  CHECK(t_block(4, 1) == BinaryMatrix::from_strings({"1000", "0001", "0100", "0010"}));
  CHECK(identity(3) * l_block(3) == l_block(3));
  CHECK(zero(2, 3) == BinaryMatrix(2, 3));
  CHECK(unit(2, 2) == BinaryMatrix::from_strings({"11", "11"}));
  CHECK_THROWS_AS(k_block(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(l_block(1), std::invalid_argument);
  CHECK_THROWS_AS(unit(2, 2) * unit(2, 2), std::domain_error);
}

TEST_CASE("canonical header of order 1 and 4") {
  const auto h1 = canonical_header(params_from_order(1));
  REQUIRE(h1.rows.size() == 3);
  CHECK(h1.rows[0].to_string() == "1110");
  CHECK(h1.rows[1].to_string() == "1101");
  CHECK(h1.rows[2].to_string() == "1011");

  const auto h4 = canonical_header(params_from_order(4));
  for (std::size_t r = 0; r < 6; ++r) CHECK(h4.rows[r].to_string() == fixtures::kB4c[r]);
}

TEST_CASE("header invariants for orders 1 to 11") {
  for (int n = 1; n <= kMaxSupportedOrder; ++n) {
    CAPTURE(n);
    const auto p = params_from_order(n);
    const auto h = canonical_header(p);
    REQUIRE(h.rows.size() == static_cast<std::size_t>(p.k));
    for (std::size_t a = 0; a < h.rows.size(); ++a) {
      CHECK(h.rows[a].weight() == p.k);
      for (std::size_t b = a + 1; b < h.rows.size(); ++b) CHECK(dot(h.rows[a], h.rows[b]) == 2);
    }
    int full_columns = 0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(p.v); ++c) {
      int s = 0;
      for (const auto& r : h.rows) s += r.test(c);
      if (s == p.k)
        ++full_columns;
      else
        CHECK(s == 2);
    }
    CHECK(full_columns == 1);
  }
}

TEST_CASE("block index partitions the matrix") {
  for (int n = 1; n <= kMaxSupportedOrder; ++n) {
    CAPTURE(n);
    const auto p = params_from_order(n);
    const BlockIndex blocks(p);
    std::size_t next = 0;
    for (int j = 0; j < p.k; ++j) {
      const auto r = blocks.column_block(j);
      CHECK(r.begin == next);
      CHECK(r.size() == static_cast<std::size_t>(j == 0 ? 1 : p.k - j));
      next = r.end;
    }
    CHECK(next == static_cast<std::size_t>(p.v));
    next = static_cast<std::size_t>(p.k);
    for (int b = 1; b <= p.k - 2; ++b) {
      const auto r = blocks.row_group(b);
      CHECK(r.begin == next);
      CHECK(r.size() == static_cast<std::size_t>(p.k - 1 - b));
      next = r.end;
    }
    CHECK(next == static_cast<std::size_t>(p.v));
    for (int i = 1; i <= p.k - 2; ++i)
      for (int j = 1; j <= p.k - 2; ++j) {
        const auto d = blocks.d_block(i, j);
        CHECK(d.rows.size() == static_cast<std::size_t>(p.k - 1 - i));
        CHECK(d.cols.size() == static_cast<std::size_t>(p.k - 1 - j));
      }
    for (std::size_t c = 1; c < static_cast<std::size_t>(p.v); ++c) {
      const auto [a, b] = blocks.column_pair(c);
      CHECK(blocks.column_of_pair(a, b) == c);
    }
  }
}

TEST_CASE("biplane verification") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  CHECK(is_biplane(m));

  auto flipped = m;
  flipped.rows[8].set(3, !flipped.rows[8].test(3));
  const auto v = is_biplane(flipped);
  CHECK_FALSE(v);
  CHECK(v.violation.find("row 9") != std::string::npos);

  IncidenceMatrix zero;
  zero.params = params_from_order(4);
  zero.rows.assign(16, BitRow(16));
  const auto z = is_biplane(zero);
  CHECK_FALSE(z);
  CHECK(z.violation == "row 1 sum 0 != 6");

  // Two rows swapped: sums intact, still a biplane (rows are just relabeled).
  auto swapped = m;
  std::swap(swapped.rows[3], swapped.rows[12]);
  CHECK(is_biplane(swapped));
}

TEST_CASE("matrix statistics and duality") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  const auto s = matrix_stats(m);
  CHECK(s.trace == 16);
  CHECK(s.is_canonical_header);
  CHECK(s.symmetric);
  const auto t = matrix_stats(transpose(m));
  CHECK(t.trace == s.trace);
  CHECK(t.symmetric == s.symmetric);
  CHECK(dual(dual(m)) == m);
  CHECK(is_biplane(dual(m)));

  const auto h1 = canonical_header(params_from_order(1));
  IncidenceMatrix order1{params_from_order(1), h1.rows};
  order1.rows.push_back(BitRow::from_string("0111"));
  CHECK(is_biplane(order1));
  CHECK(is_biplane(dual(order1)));
}

TEST_CASE("zero pattern of full-trace canonical matrices") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  CHECK_FALSE(check_lemma_zero_pattern(m).has_value());

  auto planted = m;
  const auto d = BlockIndex(m.params).d_block(1, 2);
  planted.rows[d.rows.begin].set(d.cols.begin);
  const auto violation = check_lemma_zero_pattern(planted);
  REQUIRE(violation.has_value());
  CHECK(violation->i == 1);
  CHECK(violation->j == 2);
  CHECK(violation->l == 1);
  CHECK_FALSE(violation->transposed);

  // Every listed cell is 0 in the fixture.
  for (const auto& [r, c] : lemma_zero_cells(BlockIndex(m.params))) CHECK_FALSE(m.at(r, c));
}

TEST_CASE("matrix text format") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  const auto text = format_incidence(m);
  CHECK(to_incidence(parse_matrix_text(text)) == m);
  CHECK(format_incidence(to_incidence(parse_matrix_text(text))) == text);

  const auto parsed = parse_matrix_text("order=1\n\n1.1·\n\n0101\n");
  REQUIRE(parsed.order == 1);
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.rows[0].to_string() == "1010");
  CHECK(parsed.rows[1].to_string() == "0101");
  CHECK_THROWS_AS(parse_matrix_text("10x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix_text("101\n10\n"), std::invalid_argument);
}
