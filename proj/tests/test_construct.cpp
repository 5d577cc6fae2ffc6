#include <doctest.h>

#include <algorithm>
#include <set>

#include "biplane/construct.hpp"
#include "fixtures.hpp"

using namespace biplane;

namespace {

// Plain backtracking in row order with no pruning beyond the definition.
void naive_extend(const PartialMatrix& pm, const TwoSpace& space, std::vector<BitRow>& rows, std::set<std::vector<BitRow>>& out) {
  const auto v = static_cast<std::size_t>(pm.params.v);
  const auto r = rows.size();
  if (r == v) {
    std::vector<int> sums(v, 0);
    for (const auto& row : rows)
      for (std::size_t c = 0; c < v; ++c) sums[c] += row.test(c);
    if (std::all_of(sums.begin(), sums.end(), [&](int s) { return s == pm.params.k; })) out.insert(rows);
    return;
  }
  for (const auto& cand : space.subset(r)) {
    bool ok = true;
    for (const auto& [cell, bit] : pm.cell_constraints)
      if (cell.first == r && cand.test(cell.second) != bit) ok = false;
    for (const auto& prev : rows) ok = ok && dot(prev, cand) == 2;
    if (!ok) continue;
    rows.push_back(cand);
    naive_extend(pm, space, rows, out);
    rows.pop_back();
  }
}

std::set<std::vector<BitRow>> naive_completions(int order, const StructuralInvariant* inv, bool trace) {
  const auto p = params_from_order(order);
  const auto h = canonical_header(p);
  const auto pm = apply_invariant(h, inv, trace);
  const auto space = build_two_space(p, trace);
  std::vector<BitRow> rows = h.rows;
  std::set<std::vector<BitRow>> out;
  naive_extend(pm, space, rows, out);
  return out;
}

std::set<std::vector<BitRow>> engine_completions(int order, const StructuralInvariant* inv, bool trace, unsigned threads = 1) {
  const auto p = params_from_order(order);
  const auto pm = apply_invariant(canonical_header(p), inv, trace);
  CompletionConfig cfg;
  cfg.threads = threads;
  std::set<std::vector<BitRow>> out;
  for (const auto& m : complete_all(pm, build_two_space(p, trace), cfg)) out.insert(m.rows);
  return out;
}

}  // namespace

TEST_CASE("builtin invariants") {
  const auto p4 = params_from_order(4);
  const auto a = builtin_invariant("A", p4);
  REQUIRE(a.assignments.size() == 2);
  CHECK(a.assignments[0].block == identity(4));
  CHECK(a.assignments[1].block == BinaryMatrix::from_strings({"000", "011", "101", "110"}));
  CHECK(a.trace_restriction);

  const auto p7 = params_from_order(7);
  const auto b = builtin_invariant("B", p7);
  CHECK_FALSE(b.trace_restriction);
  CHECK(b.assignments[1].block.rows() == 7);
  CHECK(b.assignments[1].block.cols() == 6);
  CHECK(b.assignments[1].block.row(0).weight() == 0);
  CHECK(b.assignments[1].block.row(1).to_string() == "000011");

  const auto p9 = params_from_order(9);
  const auto c = builtin_invariant("C", p9);
  CHECK(c.assignments[1].block.rows() == 9);
  CHECK(c.assignments[1].block.cols() == 8);
  CHECK(c.assignments[1].block.row(1).to_string() == "00001100");
  CHECK(c.assignments[1].block.row(5).to_string() == "00110000");

  const auto fig = builtin_invariant("FIG_B9C", p9);
  CHECK(fig.assignments[0].block == identity(9));
  CHECK_FALSE(fig.trace_restriction);
  CHECK_FALSE(c.trace_restriction);
  CHECK(fig.assignments[1].block.row(1).to_string() == "01000001");

  CHECK_THROWS_AS(builtin_invariant("A", p7), std::invalid_argument);
  CHECK_THROWS_AS(builtin_invariant("Z", p4), std::invalid_argument);
  CHECK(builtin_invariant_names().size() == 5);
  for (const auto& name : builtin_invariant_names()) {
    for (int order : {4, 7, 9}) {
      const auto p = params_from_order(order);
      try {
        const auto inv = builtin_invariant(name, p);
        // Every invariant fits its own header and is self-consistent.
        CHECK_FALSE(apply_invariant(canonical_header(p), &inv, false).infeasible);
      } catch (const std::invalid_argument&) {
      }
    }
  }
}

TEST_CASE("invariant text round trip") {
  const auto p9 = params_from_order(9);
  for (const char* name : {"C", "FIG_B9C"}) {
    const auto inv = builtin_invariant(name, p9);
    const auto back = parse_invariant_text(format_invariant_text(inv), name);
    REQUIRE(back.assignments.size() == inv.assignments.size());
    for (std::size_t i = 0; i < inv.assignments.size(); ++i) {
      CHECK(back.assignments[i].i == inv.assignments[i].i);
      CHECK(back.assignments[i].j == inv.assignments[i].j);
      CHECK(back.assignments[i].block == inv.assignments[i].block);
    }
  }
  const auto parsed = parse_invariant_text("# comment\nblock 1 1\n10\n01\n", "x");
  REQUIRE(parsed.assignments.size() == 1);
  CHECK(parsed.assignments[0].block == identity(2));
  CHECK_THROWS_AS(parse_invariant_text("10\nblock 1 1\n10\n", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_invariant_text("block 0 1\n1\n", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_invariant_text("", "x"), std::invalid_argument);
}

TEST_CASE("applying an invariant") {
  const auto p4 = params_from_order(4);
  const auto h = canonical_header(p4);
  const auto a = builtin_invariant("A", p4);
  const auto pm = apply_invariant(h, &a, true);
  CHECK_FALSE(pm.infeasible);
  CHECK(pm.fixed_rows.size() == 6);
  CHECK(pm.col_remaining[0] == 0);
  CHECK(pm.col_remaining[7] == 4);
  const auto d11 = h.blocks.d_block(1, 1);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(pm.cell_constraints.at({d11.rows.begin + r, d11.cols.begin + c}) == (r == c));
  for (std::size_t r = 6; r < 16; ++r) CHECK(pm.cell_constraints.at({r, r}));

  const auto off = apply_invariant(h, &a, false);
  CHECK(off.cell_constraints.size() == 4 * 4 + 4 * 3);

  // A zero on the diagonal of D^{1,1} contradicts the trace restriction.
  StructuralInvariant bad{"bad", {{1, 1, zero(4, 4)}}, true};
  const auto clash = apply_invariant(h, &bad, true);
  REQUIRE(clash.infeasible);
  CHECK(clash.infeasible->find("trace restriction") != std::string::npos);
  CHECK(construct_census(4, &bad, true).classes.empty());

  StructuralInvariant wrong{"wrong", {{1, 2, identity(3)}}, true};
  CHECK_THROWS_AS(apply_invariant(h, &wrong, true), std::invalid_argument);
  StructuralInvariant missing{"missing", {{5, 1, identity(1)}}, true};
  CHECK_THROWS_AS(apply_invariant(h, &missing, true), std::invalid_argument);
}

TEST_CASE("completions agree with naive search") {
  for (int order = 1; order <= 4; ++order) {
    for (bool trace : {true, false}) {
      CAPTURE(order);
      CAPTURE(trace);
      const auto naive = naive_completions(order, nullptr, trace);
      CHECK(engine_completions(order, nullptr, trace) == naive);
      for (const auto& rows : naive) CHECK(is_biplane(IncidenceMatrix{params_from_order(order), rows}));
    }
  }
  const auto a = builtin_invariant("A", params_from_order(4));
  CHECK(engine_completions(4, &a, true) == naive_completions(4, &a, true));
  CHECK(engine_completions(4, &a, false) == naive_completions(4, &a, false));
}

TEST_CASE("small orders") {
  const auto r1 = construct_census(1, nullptr);
  REQUIRE(r1.classes.size() == 1);
  CHECK(r1.classes[0].aut_order == 24);
  CHECK(r1.classes[0].completions == 1);
  CHECK(r1.exhaustive());

  // Trace v forces an empty subset at order 2.
  CHECK(construct_census(2, nullptr).classes.empty());
  const auto r2 = construct_census(2, nullptr, false);
  REQUIRE(r2.classes.size() == 1);
  CHECK(r2.classes[0].aut_order == 168);

  const auto r3 = construct_census(3, nullptr, false);
  REQUIRE(r3.classes.size() == 1);
  CHECK(r3.classes[0].aut_order == 660);

  const auto r4 = construct_census(4, nullptr);
  REQUIRE(r4.classes.size() == 1);
  CHECK(r4.classes[0].aut_order == 11520);
  CHECK(r4.classes[0].representative == fixtures::matrix(fixtures::kB4c));
  CHECK(r4.classes[0].lemma_failures == 0);
}

TEST_CASE("invariant A at order 4") {
  const auto a = builtin_invariant("A", params_from_order(4));
  const auto r = construct_census(4, &a, true);
  REQUIRE(r.classes.size() == 1);
  CHECK(r.classes[0].aut_order == 11520);
  CHECK(r.classes[0].symmetric == r.classes[0].completions);
  CHECK(matrix_stats(r.classes[0].representative).trace == 16);
}

TEST_CASE("node budget") {
  CompletionConfig cfg;
  cfg.node_budget = 3;
  const auto r = construct_census(4, nullptr, false, cfg);
  CHECK(r.stats.budget_exhausted);
  CHECK_FALSE(r.exhaustive());
}

TEST_CASE("figure invariant at order 7") {
  const auto p7 = params_from_order(7);
  const auto inv = builtin_invariant("FIG_B7", p7);
  CompletionConfig one, three;
  three.threads = 3;
  const auto r1 = construct_census(7, &inv, true, one);
  const auto r3 = construct_census(7, &inv, true, three);
  REQUIRE(r1.classes.size() == 2);
  REQUIRE(r3.classes.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r1.classes[i].certificate == r3.classes[i].certificate);
    CHECK(r1.classes[i].completions == r3.classes[i].completions);
    CHECK(r1.classes[i].aut_order == 1512);
    CHECK(r1.classes[i].full_trace == r1.classes[i].completions);
    CHECK(r1.classes[i].lemma_failures == 0);
  }
  CHECK(r1.stats.nodes == r3.stats.nodes);
  // The two classes are dual to each other.
  const auto& m0 = r1.classes[0].representative;
  const auto& m1 = r1.classes[1].representative;
  CHECK_FALSE(are_isomorphic(m0, m1, false));
  CHECK(are_isomorphic(m0, m1, true));
}
