#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biplane/construct.hpp"

namespace biplane {

struct ConjectureReport {
  int order = 0;
  int threshold = 0;
  std::uint64_t removed_vectors = 0;  // dropped by the restriction
  std::vector<std::string> classes_full;        // sorted certificate hex
  std::vector<std::string> classes_restricted;
  bool exhaustive_full = true;
  bool exhaustive_restricted = true;
  // Only meaningful when both searches were exhaustive.
  bool equal = false;
  ConstructionResult full;
  ConstructionResult restricted;
};

// Seedless trace-v completion over the full subset space and over the
// alpha/beta-restricted space, compared by isomorphism class.
ConjectureReport conjecture_check(int order, const CompletionConfig& config, std::optional<int> threshold = std::nullopt);

}  // namespace biplane
