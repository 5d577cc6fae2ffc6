#include "biplane/conjecture.hpp"

#include <algorithm>

#include "biplane/levelsets.hpp"

namespace biplane {

namespace {

std::vector<std::string> class_keys(const ConstructionResult& r) {
  std::vector<std::string> out;
  for (const auto& c : r.classes) out.push_back(c.certificate.hex());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ConjectureReport conjecture_check(int order, const CompletionConfig& config, std::optional<int> threshold) {
  require_supported_order(order);
  const auto params = BiplaneParams::from_order(order);
  const auto header = canonical_header(params);
  const auto partial = apply_invariant(header, nullptr, true);
  const auto space = build_two_space(params, true, config.threads);
  const auto exceptional = exceptional_indices(params);
  const auto census = classify_vectors(space, exceptional, {threshold, config.threads, 0});
  const auto restricted = restricted_space(space, census, exceptional);

  ConjectureReport report;
  report.order = order;
  report.threshold = census.threshold;
  report.removed_vectors = space.total_size() - restricted.total_size();
  report.full = census_of_completions(partial, space, config);
  report.full.invariant = "none";
  report.restricted = census_of_completions(partial, restricted, config);
  report.restricted.invariant = "none";
  report.classes_full = class_keys(report.full);
  report.classes_restricted = class_keys(report.restricted);
  report.exhaustive_full = report.full.exhaustive();
  report.exhaustive_restricted = report.restricted.exhaustive();
  report.equal = report.exhaustive_full && report.exhaustive_restricted && report.classes_full == report.classes_restricted;
  return report;
}

}  // namespace biplane
