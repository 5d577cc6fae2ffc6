#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "biplane/autgroup.hpp"
#include "fixtures.hpp"

using namespace biplane;

TEST_CASE("order-2 biplane has 11520 automorphisms") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  REQUIRE(is_biplane(m));
  const auto r = analyze(IncidenceGraph(m));
  CHECK(r.group_order == 11520);
  for (const auto& g : r.generators) CHECK(is_automorphism(IncidenceGraph(m), g));
  CHECK(schreier_sims_order(32, r.generators) == 11520);
}

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

IncidenceMatrix order_one() {
  return fixtures::matrix({"1110", "1101", "1011", "0111"});
}

}  // namespace

TEST_CASE("certificate is invariant under relabeling") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  const auto base = canonical_certificate(IncidenceGraph(m));
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pp = random_perm(16, rng);
    const auto lp = random_perm(16, rng);
    const auto r = relabel(m, pp, lp);
    REQUIRE(is_biplane(r));
    const auto res = analyze(IncidenceGraph(r));
    CHECK(res.certificate == base);
    CHECK(res.group_order == 11520);
    if (trial % 100 == 0) CHECK(are_isomorphic(m, r, false));
  }
}

TEST_CASE("relabel places entries") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  std::mt19937_64 rng(7);
  const auto pp = random_perm(16, rng);
  const auto lp = random_perm(16, rng);
  const auto r = relabel(m, pp, lp);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j)
      CHECK(r.at(static_cast<std::size_t>(pp[i]), static_cast<std::size_t>(lp[j])) == m.at(i, j));
}

TEST_CASE("small biplanes") {
  const auto m1 = order_one();
  REQUIRE(is_biplane(m1));
  const auto r1 = analyze(IncidenceGraph(m1));
  CHECK(r1.group_order == 24);
  CHECK(schreier_sims_order(8, r1.generators) == 24);
  CHECK(IncidenceGraph(m1).edge_count() == 12);
  CHECK(IncidenceGraph(m1).degree(5) == 3);
}

TEST_CASE("dual has the same group") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  CHECK(analyze(IncidenceGraph(dual(m))).group_order == analyze(IncidenceGraph(m)).group_order);
  CHECK(are_isomorphic(m, transpose(m), true));
}

TEST_CASE("schreier-sims on symmetric groups") {
  const std::uint64_t factorial[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};
  for (std::size_t n = 2; n <= 8; ++n) {
    Permutation swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<int>((i + 1) % n);
    CHECK(schreier_sims_order(n, {swap, cycle}) == factorial[n]);
    CHECK(schreier_sims_order(n, {cycle}) == n);
  }
  CHECK(schreier_sims_order(5, {}) == 1);
}

TEST_CASE("non-automorphisms are rejected") {
  const auto m = fixtures::matrix(fixtures::kB4c);
  const IncidenceGraph g(m);
  Permutation id(32);
  std::iota(id.begin(), id.end(), 0);
  CHECK(is_automorphism(g, id));
  auto cross = id;
  std::swap(cross[0], cross[16]);  // point to line
  CHECK_FALSE(is_automorphism(g, cross));
  auto pts = id;
  std::swap(pts[0], pts[6]);
  CHECK_FALSE(is_automorphism(g, pts));
}

TEST_CASE("isomorphism needs matching parameters") {
  CHECK_THROWS_AS(are_isomorphic(order_one(), fixtures::matrix(fixtures::kB4c), false), std::invalid_argument);
}

TEST_CASE("certificate digest") {
  const auto c = canonical_certificate(IncidenceGraph(order_one()));
  CHECK(c.digest().size() == 16);
  CHECK(c.hex().size() >= c.digest().size());
  CHECK(c.digest() != canonical_certificate(IncidenceGraph(fixtures::matrix(fixtures::kB4c))).digest());
}
