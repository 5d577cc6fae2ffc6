#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biplane/autgroup.hpp"
#include "biplane/binary_matrix.hpp"
#include "biplane/header.hpp"
#include "biplane/incidence.hpp"
#include "biplane/twospace.hpp"

namespace biplane {

struct BlockAssignment {
  int i = 0;  // 1-based D-block labels
  int j = 0;
  BinaryMatrix block;
};

struct StructuralInvariant {
  std::string name;
  std::vector<BlockAssignment> assignments;
  // Default for the trace-v restriction when searching with this invariant.
  bool trace_restriction = true;
};

// D^{1,1} = I_{k-2} together with the named D^{1,2}. Names: A (order 4),
// B and FIG_B7 (order 7), C and FIG_B9C (order 9). A and FIG_B7 default
// to the trace restriction; B, C and FIG_B9C need it off to reach all of
// their classes.
StructuralInvariant builtin_invariant(std::string_view name, const BiplaneParams& params);
std::vector<std::string> builtin_invariant_names();

// "block i j" followed by the block rows in matrix text format; any number
// of blocks.
StructuralInvariant parse_invariant_text(std::string_view text, std::string name);
std::string format_invariant_text(const StructuralInvariant& inv);

struct PartialMatrix {
  BiplaneParams params;
  CanonicalHeader header;
  std::map<std::size_t, BitRow> fixed_rows;  // the header rows
  std::vector<int> col_remaining;            // 1s still required per column
  std::map<std::pair<std::size_t, std::size_t>, bool> cell_constraints;
  bool trace_restriction = true;
  // Set when the constraints contradict each other before any search.
  std::optional<std::string> infeasible;
};

// Throws std::invalid_argument when an assigned block has the wrong shape.
PartialMatrix apply_invariant(const CanonicalHeader& header, const StructuralInvariant* inv, bool trace_restriction);

struct CompletionConfig {
  std::uint64_t node_budget = 0;  // 0: unlimited
  unsigned threads = 1;
  // Search levels expanded up front into independent tasks.
  int split_depth = 2;
};

struct CompletionStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::uint64_t completions = 0;
  std::size_t tasks = 0;
  bool budget_exhausted = false;
};

// Receives each completion with the index of the task that produced it.
// Called concurrently for different tasks; calls for one task arrive in
// search order.
using CompletionSink = std::function<void(std::size_t task, const IncidenceMatrix&)>;

// Depth-first extension over the free rows, always branching on the row
// with the fewest compatible candidates. Every emitted matrix has passed
// is_biplane. `space` must match partial.trace_restriction.
CompletionStats complete(const PartialMatrix& partial, const TwoSpace& space, const CompletionConfig& config, const CompletionSink& sink);

// All completions in deterministic order (single consumer convenience).
std::vector<IncidenceMatrix> complete_all(const PartialMatrix& partial, const TwoSpace& space, const CompletionConfig& config = {},
                                          CompletionStats* stats = nullptr);

struct IsoClass {
  Certificate certificate;
  std::uint64_t aut_order = 0;
  IncidenceMatrix representative;
  std::uint64_t completions = 0;
  std::uint64_t symmetric = 0;     // completions equal to their transpose
  std::uint64_t full_trace = 0;    // completions with trace v
  std::uint64_t lemma_failures = 0;  // full-trace completions breaking the zero pattern
};

struct ConstructionResult {
  std::string invariant;
  BiplaneParams params;
  bool trace_restriction = true;
  std::vector<IsoClass> classes;  // in order of first emission
  CompletionStats stats;
  double seconds = 0;

  bool exhaustive() const { return !stats.budget_exhausted; }
};

// Completions of `partial` grouped by canonical certificate.
ConstructionResult census_of_completions(const PartialMatrix& partial, const TwoSpace& space, const CompletionConfig& config);

// apply_invariant + complete + grouping. A null invariant runs seedless.
ConstructionResult construct_census(int order, const StructuralInvariant* inv, bool trace_restriction = true,
                                    const CompletionConfig& config = {});

}  // namespace biplane
