#include <doctest.h>

#include <algorithm>
#include <random>

#include "biplane/levelsets.hpp"

using namespace biplane;

namespace {

std::vector<std::size_t> one_based(const ExceptionalSet& e) {
  std::vector<std::size_t> out;
  for (auto r : e.rows) out.push_back(r + 1);
  return out;
}

}  // namespace

TEST_CASE("exceptional subsets") {
  CHECK(one_based(exceptional_indices(BiplaneParams::from_order(4))) == std::vector<std::size_t>{10, 13, 15, 16});
  CHECK(one_based(exceptional_indices(BiplaneParams::from_order(7))) == std::vector<std::size_t>{16, 22, 27, 31, 34, 36, 37});
  for (int order = 1; order <= kMaxSupportedOrder; ++order) {
    const auto p = BiplaneParams::from_order(order);
    const auto e = exceptional_indices(p);
    CHECK(e.rows.size() == static_cast<std::size_t>(p.k - 2));
    CHECK(e.rows.back() == static_cast<std::size_t>(p.v - 1));
    CHECK(e.rows.front() >= static_cast<std::size_t>(p.k));
    if (p.k > 3) CHECK(e.contains(static_cast<std::size_t>(p.v - 2)));
  }
}

TEST_CASE("order 4 level sets") {
  const auto p = BiplaneParams::from_order(4);
  const auto space = build_two_space(p);
  const auto e = exceptional_indices(p);
  const auto& a = space.subset(6).front();
  const auto prof = level_profile(a, 6, space, e);
  for (const auto& [j, n] : prof.counts) CHECK(n == 1);
  CHECK(prof.modal_value == 1);

  const auto full = build_two_space(p, false);
  const auto wide = level_profile(a, 6, full, e);
  for (const auto& [j, n] : wide.counts) CHECK(n == 5);

  const auto census = classify_vectors(space, e);
  REQUIRE(census.alpha);
  CHECK_FALSE(census.beta);
  CHECK(census.alpha->modal_value == 1);
  CHECK(census.alpha->constant_count() == 1);
  const auto restricted = restricted_space(space, census, e);
  CHECK(restricted.subsets == space.subsets);
}

TEST_CASE("order 7 table") {
  const auto p = BiplaneParams::from_order(7);
  const auto space = build_two_space(p);
  const auto e = exceptional_indices(p);
  const auto census = classify_vectors(space, e);
  REQUIRE(census.alpha);
  REQUIRE(census.beta);
  CHECK(census.alpha->modal_value == 30);
  CHECK(census.beta->modal_value == 24);
  CHECK(census.alpha->constant_count() == 10);
  CHECK(census.beta->constant_count() == 60);
}

TEST_CASE("pair counts are symmetric between subsets") {
  const auto p = BiplaneParams::from_order(7);
  const auto space = build_two_space(p);
  const auto e = exceptional_indices(p);
  for (std::size_t i : {9u, 12u, 20u})
    for (std::size_t j : {10u, 17u, 25u}) {
      CAPTURE(i);
      CAPTURE(j);
      std::uint64_t from_i = 0, from_j = 0;
      for (const auto& a : space.subset(i)) from_i += level_profile(a, i, space, e).counts.at(j);
      for (const auto& b : space.subset(j)) from_j += level_profile(b, j, space, e).counts.at(i);
      CHECK(from_i == from_j);
    }
}

TEST_CASE("classification ignores the order of vectors") {
  const auto p = BiplaneParams::from_order(7);
  const auto space = build_two_space(p);
  const auto e = exceptional_indices(p);
  auto shuffled = space;
  std::mt19937 rng(11);
  for (auto& s : shuffled.subsets) std::shuffle(s.begin(), s.end(), rng);
  const auto a = classify_vectors(space, e);
  ClassifyOptions threaded;
  threaded.threads = 3;
  const auto b = classify_vectors(shuffled, e, threaded);
  REQUIRE(a.histogram.size() == b.histogram.size());
  for (std::size_t i = 0; i < a.histogram.size(); ++i) {
    CHECK(a.histogram[i].modal_value == b.histogram[i].modal_value);
    CHECK(a.histogram[i].multiplicity == b.histogram[i].multiplicity);
    CHECK(a.histogram[i].per_subset == b.histogram[i].per_subset);
  }
  CHECK(a.alpha->total == b.alpha->total);
  CHECK(a.beta->total == b.beta->total);
  CHECK(a.threshold == b.threshold);
  CHECK(a.foreign_subsets == p.v - p.k - (p.k - 2) - 1);
}

TEST_CASE("restricted space keeps alpha and beta only") {
  const auto p = BiplaneParams::from_order(7);
  const auto space = build_two_space(p);
  const auto e = exceptional_indices(p);
  const auto census = classify_vectors(space, e);
  const auto r = restricted_space(space, census, e);
  for (std::size_t row = space.first_row(); row < space.end_row(); ++row) {
    if (e.contains(row)) {
      CHECK(r.subset(row) == space.subset(row));
      continue;
    }
    CHECK(r.subset(row).size() == census.alpha->constant_count().value() + census.beta->constant_count().value());
  }
  ClassifyOptions sampled;
  sampled.sample = 5;
  const auto s = classify_vectors(space, e, sampled);
  CHECK(s.sampled);
  CHECK_THROWS(restricted_space(space, s, e));
}

TEST_CASE("explicit threshold") {
  const auto p = BiplaneParams::from_order(7);
  const auto space = build_two_space(p);
  const auto e = exceptional_indices(p);
  ClassifyOptions strict;
  strict.threshold = 1000;
  const auto none = classify_vectors(space, e, strict);
  CHECK(none.threshold == 1000);
  CHECK_FALSE(none.alpha);
  CHECK_FALSE(none.beta);
}
