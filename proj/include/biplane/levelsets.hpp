#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "biplane/bitrow.hpp"
#include "biplane/params.hpp"
#include "biplane/twospace.hpp"

namespace biplane {

// Subset indices exempt from the regularity classification: 1-based
// a_1 = 2k-2, a_{t+1} = a_t + (k-2-t), up to v. Stored as 0-based rows.
struct ExceptionalSet {
  BiplaneParams params;
  std::vector<std::size_t> rows;

  bool contains(std::size_t row) const;
};

ExceptionalSet exceptional_indices(const BiplaneParams& params);

struct LevelProfile {
  BitRow vector;
  std::size_t home = 0;
  // Foreign row j -> |{b in subset j : dot(a, b) = 2}|.
  std::map<std::size_t, std::uint64_t> counts;
  // Most frequent count over non-exceptional foreign subsets; ties go to
  // the larger count.
  std::uint64_t modal_value = 0;
  int modal_multiplicity = 0;
};

LevelProfile level_profile(const BitRow& a, std::size_t home, const TwoSpace& space, const ExceptionalSet& exceptional);

enum class VectorClass : std::uint8_t { other = 0, alpha = 1, beta = 2 };

struct VectorModal {
  std::uint64_t modal_value = 0;
  int multiplicity = 0;
  bool profiled = false;  // false for vectors skipped by sampling
};

// Vectors sharing a modal value and modal multiplicity.
struct ClassBin {
  std::uint64_t modal_value = 0;
  int multiplicity = 0;
  std::uint64_t total = 0;
  std::map<std::size_t, std::uint64_t> per_subset;  // home row -> count
  bool regular = false;

  // Common per-subset count, when every non-exceptional subset has the same.
  std::optional<std::uint64_t> constant_count() const;
};

struct VectorClassCensus {
  int order = 0;
  int threshold = 0;            // r actually applied
  int foreign_subsets = 0;      // non-exceptional subsets other than the home one
  std::vector<ClassBin> histogram;  // ascending by (modal value, multiplicity)
  std::optional<ClassBin> alpha;    // regular bins merged by modal value
  std::optional<ClassBin> beta;
  bool sampled = false;
  // Indexed by row, then by position in the subset; exceptional and header
  // rows are empty.
  std::vector<std::vector<VectorModal>> modal;
  std::vector<std::vector<VectorClass>> tags;
};

struct ClassifyOptions {
  std::optional<int> threshold;
  unsigned threads = 1;
  // When nonzero, only this many evenly spaced vectors per subset are
  // profiled (still against the full subsets).
  std::size_t sample = 0;
};

// Regular: modal count attained on at least r non-exceptional foreign
// subsets. Without r the largest multiplicity present is used. Regular
// vectors are merged by modal value; the two largest such bins become
// alpha (larger modal value) and beta.
VectorClassCensus classify_vectors(const TwoSpace& space, const ExceptionalSet& exceptional, const ClassifyOptions& options = {});

// Non-exceptional subsets keep only alpha and beta vectors; exceptional
// subsets are copied unchanged. Rejects a sampled census.
TwoSpace restricted_space(const TwoSpace& space, const VectorClassCensus& census, const ExceptionalSet& exceptional);

}  // namespace biplane
