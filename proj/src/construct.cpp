#include "biplane/construct.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "biplane/matrix_io.hpp"
#include "biplane/parallel.hpp"

namespace biplane {

namespace {

// Rows of the figure blocks D^{1,1} | D^{1,2}.
const std::vector<std::string> kFigB7 = {
    "1000000000000", "0100000010100", "0010000001010", "0001000100001",
    "0000100100010", "0000010010001", "0000001001100",
};

const std::vector<std::string> kFigB9c = {
    "10000000000000000", "01000000001000001", "00100000000101000", "00010000000010100", "00001000010000010",
    "00000100010000100", "00000010001000010", "00000001000100001", "00000000100011000",
};

// L_n as used inside the invariants: the path matrix with its columns
// reversed.
BinaryMatrix invariant_l(std::size_t n) { return reverse_columns(l_block(n)); }

// Zero row over [0 X; Y 0] with square n x n blocks X and Y.
BinaryMatrix two_block(std::size_t n, const BinaryMatrix& x, const BinaryMatrix& y) {
  BinaryMatrix m(2 * n + 1, 2 * n);
  m.place(x, 1, n);
  m.place(y, n + 1, 0);
  return m;
}

StructuralInvariant from_figure(std::string name, const std::vector<std::string>& rows, std::size_t width11) {
  const auto full = BinaryMatrix::from_strings(rows);
  BinaryMatrix d11(full.rows(), width11), d12(full.rows(), full.cols() - width11);
  for (std::size_t r = 0; r < full.rows(); ++r)
    for (std::size_t c = 0; c < full.cols(); ++c)
      if (full.at(r, c)) (c < width11 ? d11.set(r, c) : d12.set(r, c - width11));
  return {std::move(name), {{1, 1, d11}, {1, 2, d12}}, true};
}

}  // namespace

std::vector<std::string> builtin_invariant_names() { return {"A", "B", "C", "FIG_B7", "FIG_B9C"}; }

StructuralInvariant builtin_invariant(std::string_view name, const BiplaneParams& params) {
  const std::map<std::string_view, int> orders = {{"A", 4}, {"B", 7}, {"C", 9}, {"FIG_B7", 7}, {"FIG_B9C", 9}};
  const auto it = orders.find(name);
  if (it == orders.end()) throw std::invalid_argument("unknown invariant '" + std::string(name) + "'");
  if (it->second != params.order)
    throw std::invalid_argument("invariant " + std::string(name) + " belongs to order " + std::to_string(it->second));
  if (name == "FIG_B7") return from_figure("FIG_B7", kFigB7, 7);
  if (name == "FIG_B9C") {
    auto inv = from_figure("FIG_B9C", kFigB9c, 9);
    inv.trace_restriction = false;
    return inv;
  }

  const auto n = static_cast<std::size_t>(params.k - 2);
  BinaryMatrix d12;
  if (name == "A") {
    d12 = BinaryMatrix(4, 3);
    d12.place(invariant_l(3), 1, 0);
  } else if (name == "B") {
    d12 = two_block(3, invariant_l(3), invariant_l(3));
  } else {
    d12 = two_block(4, l_block(4), invariant_l(4));
  }
  return {std::string(name), {{1, 1, identity(n)}, {1, 2, d12}}, name == "A"};
}

StructuralInvariant parse_invariant_text(std::string_view text, std::string name) {
  StructuralInvariant inv;
  inv.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line, body;
  int bi = 0, bj = 0;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    const auto parsed = parse_matrix_text(body);
    if (parsed.rows.empty()) throw std::invalid_argument("invariant block " + std::to_string(bi) + "," + std::to_string(bj) + " is empty");
    inv.assignments.push_back({bi, bj, BinaryMatrix(parsed.rows)});
    body.clear();
  };
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string head;
    words >> head;
    if (head == "block") {
      flush();
      if (!(words >> bi >> bj) || bi < 1 || bj < 1) throw std::invalid_argument("malformed block line: " + line);
      open = true;
    } else if (!head.empty() && head[0] == '#') {
      continue;
    } else {
      if (!open && !head.empty()) throw std::invalid_argument("matrix rows before the first block line");
      body += line + "\n";
    }
  }
  flush();
  if (inv.assignments.empty()) throw std::invalid_argument("invariant file holds no blocks");
  return inv;
}

std::string format_invariant_text(const StructuralInvariant& inv) {
  std::string out;
  for (const auto& a : inv.assignments) {
    out += "block " + std::to_string(a.i) + " " + std::to_string(a.j) + "\n";
    out += format_matrix_text(a.block.row_data());
  }
  return out;
}

PartialMatrix apply_invariant(const CanonicalHeader& header, const StructuralInvariant* inv, bool trace_restriction) {
  PartialMatrix pm;
  pm.params = header.params;
  pm.header = header;
  pm.trace_restriction = trace_restriction;
  const auto v = static_cast<std::size_t>(header.params.v);
  const auto k = static_cast<std::size_t>(header.params.k);
  pm.col_remaining.assign(v, header.params.k);
  for (std::size_t r = 0; r < k; ++r) {
    pm.fixed_rows[r] = header.rows[r];
    for (std::size_t c = 0; c < v; ++c)
      if (header.rows[r].test(c)) --pm.col_remaining[c];
  }

  auto constrain = [&](std::size_t r, std::size_t c, bool bit, const std::string& source) {
    const auto [it, fresh] = pm.cell_constraints.try_emplace({r, c}, bit);
    if (!fresh && it->second != bit && !pm.infeasible)
      pm.infeasible = source + " contradicts an earlier constraint at row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1);
  };

  if (inv) {
    const auto& blocks = header.blocks;
    for (const auto& a : inv->assignments) {
      if (a.i < 1 || a.j < 1 || a.i > header.params.k - 2 || a.j > header.params.k - 2)
        throw std::invalid_argument("block " + std::to_string(a.i) + "," + std::to_string(a.j) + " does not exist at this order");
      const auto d = blocks.d_block(a.i, a.j);
      if (a.block.rows() != d.rows.size() || a.block.cols() != d.cols.size())
        throw std::invalid_argument("block " + std::to_string(a.i) + "," + std::to_string(a.j) + " must be " + std::to_string(d.rows.size()) +
                                    "x" + std::to_string(d.cols.size()));
      for (std::size_t r = 0; r < d.rows.size(); ++r)
        for (std::size_t c = 0; c < d.cols.size(); ++c)
          constrain(d.rows.begin + r, d.cols.begin + c, a.block.at(r, c), "invariant " + inv->name);
    }
  }
  if (trace_restriction) {
    for (std::size_t r = k; r < v; ++r) constrain(r, r, true, "trace restriction");
    for (const auto& [r, c] : lemma_zero_cells(header.blocks)) constrain(r, c, false, "zero pattern");
  }
  return pm;
}

namespace {

struct Placement {
  std::size_t slot;
  std::uint32_t index;
};

// Completion search over the free rows. Candidates are packed W words per
// row; each depth owns a reusable frame holding, for every free row, the
// candidates still compatible with the rows placed so far.
template <std::size_t W>
class CompletionSearch {
 public:
  CompletionSearch(const PartialMatrix& pm, const TwoSpace& space, const CompletionConfig& config, const CompletionSink& sink)
      : pm_(pm), config_(config), sink_(sink), v_(static_cast<std::size_t>(pm.params.v)), k_(pm.params.k) {
    if (!(space.params == pm.params)) throw std::invalid_argument("complete: space and partial matrix disagree on parameters");
    if (space.diagonal_restricted != pm.trace_restriction)
      throw std::invalid_argument("complete: space and partial matrix disagree on the trace restriction");
    for (std::size_t r = 0; r < v_; ++r)
      if (!pm.fixed_rows.count(r)) rows_.push_back(r);
    fixed_pairs_.assign(v_ * v_, 0);
    for (const auto& [r, row] : pm.fixed_rows)
      for (std::size_t a = 0; a < v_; ++a)
        for (std::size_t b = a + 1; b < v_ && row.test(a); ++b)
          if (row.test(b)) ++fixed_pairs_[a * v_ + b];
    slots_ = rows_.size();
    candidates_.resize(slots_);
    packed_.resize(slots_);
    for (std::size_t s = 0; s < slots_; ++s)
      for (const auto& b : space.subset(rows_[s]))
        if (admissible(rows_[s], b)) {
          candidates_[s].push_back(b);
          for (std::size_t w = 0; w < W; ++w) packed_[s].push_back(b.word(w));
        }
  }

  CompletionStats run() {
    CompletionStats stats;
    if (pm_.infeasible) return stats;
    std::vector<std::vector<Placement>> tasks;
    {
      Worker root(*this);
      if (root.start()) root.collect(0, tasks);
    }
    stats.tasks = tasks.size();
    std::atomic<std::uint64_t> completions{0};
    parallel_for(tasks.size(), config_.threads, [&](std::size_t t) {
      Worker w(*this);
      if (!w.start()) return;
      std::size_t depth = 0;
      for (const auto& p : tasks[t]) {
        if (!w.descend(depth, p.slot, p.index)) return;
        ++depth;
      }
      completions += w.dfs(depth, t);
    });
    stats.nodes = nodes_.load();
    stats.prunes = prunes_.load();
    stats.completions = completions.load();
    stats.budget_exhausted = exhausted_.load();
    return stats;
  }

 private:
  using Word = std::array<std::uint64_t, W>;
  static constexpr std::uint32_t kUnplaced = UINT32_MAX;

  struct Frame {
    std::vector<std::uint32_t> live;
    std::vector<std::uint32_t> begin, end;  // per slot, into live
    Word full{};                            // columns already holding k 1s
  };

  class Worker {
   public:
    explicit Worker(CompletionSearch& s)
        : s_(s), chosen_(s.slots_, kUnplaced), count_(s.v_, 0), pairs_(s.v_ * s.v_, 0), frames_(s.slots_ + 1) {
      for (auto& f : frames_) {
        f.begin.assign(s.slots_, 0);
        f.end.assign(s.slots_, 0);
      }
    }

    // Root frame: every admissible candidate. False when already dead.
    bool start() {
      Frame& f = frames_[0];
      for (std::size_t c = 0; c < s_.v_; ++c) {
        count_[c] = s_.k_ - s_.pm_.col_remaining[c];
        if (count_[c] >= s_.k_) f.full[c >> 6] |= std::uint64_t{1} << (c & 63);
      }
      pairs_ = s_.fixed_pairs_;
      f.live.clear();
      std::vector<Word> reach(s_.slots_, Word{});
      for (std::size_t slot = 0; slot < s_.slots_; ++slot) {
        f.begin[slot] = static_cast<std::uint32_t>(f.live.size());
        const std::size_t n = s_.candidates_[slot].size();
        for (std::uint32_t i = 0; i < n; ++i) {
          f.live.push_back(i);
          const std::uint64_t* b = s_.cand(slot, i);
          for (std::size_t w = 0; w < W; ++w) reach[slot][w] |= b[w];
        }
        f.end[slot] = static_cast<std::uint32_t>(f.live.size());
        if (f.end[slot] == f.begin[slot]) return false;
      }
      return coverable(reach, 0);
    }

    // Places candidate `index` of `slot` on top of frame `depth` and fills
    // frame depth+1. False when the placement leaves some row or column
    // without support.
    bool descend(std::size_t depth, std::size_t slot, std::uint32_t index) {
      const Frame& f = frames_[depth];
      Frame& g = frames_[depth + 1];
      const std::uint64_t* row = s_.cand(slot, index);
      g.full = f.full;
      for (std::size_t w = 0; w < W; ++w)
        for (std::uint64_t x = row[w]; x; x &= x - 1) {
          const std::size_t c = 64 * w + static_cast<std::size_t>(std::countr_zero(x));
          if (++count_[c] == s_.k_) g.full[w] |= std::uint64_t{1} << (c & 63);
        }
      chosen_[slot] = index;
      add_pairs(row, 1);
      const bool ok = filter(f, g, row, depth + 1);
      if (!ok) undo(slot, row);
      return ok;
    }

    void undo(std::size_t slot, const std::uint64_t* row) {
      chosen_[slot] = kUnplaced;
      add_pairs(row, -1);
      for (std::size_t w = 0; w < W; ++w)
        for (std::uint64_t x = row[w]; x; x &= x - 1) --count_[64 * w + static_cast<std::size_t>(std::countr_zero(x))];
    }

    void collect(std::size_t depth, std::vector<std::vector<Placement>>& tasks) {
      if (static_cast<int>(depth) >= s_.config_.split_depth || depth == s_.slots_) {
        tasks.push_back(path_);
        return;
      }
      const std::size_t slot = branch_slot(depth);
      const Frame& f = frames_[depth];
      for (std::uint32_t p = f.begin[slot]; p < f.end[slot]; ++p) {
        const std::uint32_t i = f.live[p];
        if (!descend(depth, slot, i)) {
          ++s_.prunes_;
          continue;
        }
        path_.push_back({slot, i});
        collect(depth + 1, tasks);
        path_.pop_back();
        undo(slot, s_.cand(slot, i));
      }
    }

    std::uint64_t dfs(std::size_t depth, std::size_t task) {
      if (s_.over_budget()) return 0;
      if (depth == s_.slots_) {
        s_.emit(chosen_, task);
        return 1;
      }
      std::uint64_t found = 0;
      const std::size_t slot = branch_slot(depth);
      const Frame& f = frames_[depth];
      for (std::uint32_t p = f.begin[slot]; p < f.end[slot]; ++p) {
        const std::uint32_t i = f.live[p];
        if (!descend(depth, slot, i)) {
          ++s_.prunes_;
          continue;
        }
        found += dfs(depth + 1, task);
        undo(slot, s_.cand(slot, i));
        if (s_.exhausted_.load(std::memory_order_relaxed)) break;
      }
      return found;
    }

   private:
    // Column pair counts (c1 < c2) over the rows placed so far.
    void add_pairs(const std::uint64_t* row, int delta) {
      std::size_t cols[BitRow::kCapacity];
      std::size_t n = 0;
      for (std::size_t w = 0; w < W; ++w)
        for (std::uint64_t x = row[w]; x; x &= x - 1) cols[n++] = 64 * w + static_cast<std::size_t>(std::countr_zero(x));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs_[cols[i] * s_.v_ + cols[j]] += delta;
    }

    // pairs_ index of the two columns where b meets row.
    std::size_t meet_index(const std::uint64_t* b, const std::uint64_t* row) const {
      std::size_t cols[2];
      std::size_t n = 0;
      for (std::size_t w = 0; w < W; ++w)
        for (std::uint64_t x = b[w] & row[w]; x; x &= x - 1) cols[n++] = 64 * w + static_cast<std::size_t>(std::countr_zero(x));
      return cols[0] * s_.v_ + cols[1];
    }

    std::size_t branch_slot(std::size_t depth) const {
      const Frame& f = frames_[depth];
      std::size_t best = s_.slots_;
      std::uint32_t best_size = UINT32_MAX;
      for (std::size_t s = 0; s < s_.slots_; ++s)
        if (chosen_[s] == kUnplaced && f.end[s] - f.begin[s] < best_size) {
          best = s;
          best_size = f.end[s] - f.begin[s];
        }
      return best;
    }

    bool filter(const Frame& f, Frame& g, const std::uint64_t* row, std::size_t placed) {
      g.live.clear();
      reach_.assign(s_.slots_, Word{});
      for (std::size_t slot = 0; slot < s_.slots_; ++slot) {
        g.begin[slot] = static_cast<std::uint32_t>(g.live.size());
        if (chosen_[slot] != kUnplaced) {
          g.end[slot] = g.begin[slot];
          continue;
        }
        Word& reach = reach_[slot];
        for (std::uint32_t p = f.begin[slot]; p < f.end[slot]; ++p) {
          const std::uint32_t i = f.live[p];
          const std::uint64_t* b = s_.cand(slot, i);
          int d = 0;
          bool blocked = false;
          for (std::size_t w = 0; w < W; ++w) {
            d += std::popcount(b[w] & row[w]);
            blocked = blocked || (b[w] & g.full[w]);
          }
          if (d != 2 || blocked) continue;
          // Two columns already sharing two rows cannot share a third.
          if (pairs_[meet_index(b, row)] >= 2) continue;
          g.live.push_back(i);
          for (std::size_t w = 0; w < W; ++w) reach[w] |= b[w];
        }
        g.end[slot] = static_cast<std::uint32_t>(g.live.size());
        if (g.end[slot] == g.begin[slot]) return false;
      }
      return coverable(reach_, placed);
    }

    // Each column short of k needs that many free rows able to supply a 1.
    bool coverable(const std::vector<Word>& reach, std::size_t placed) {
      const int free_rows = static_cast<int>(s_.slots_ - placed);
      supply_.assign(s_.v_, 0);
      for (std::size_t slot = 0; slot < s_.slots_; ++slot) {
        if (chosen_[slot] != kUnplaced) continue;
        for (std::size_t w = 0; w < W; ++w)
          for (std::uint64_t x = reach[slot][w]; x; x &= x - 1) ++supply_[64 * w + static_cast<std::size_t>(std::countr_zero(x))];
      }
      for (std::size_t c = 0; c < s_.v_; ++c) {
        const int need = s_.k_ - count_[c];
        if (need > free_rows || need > supply_[c]) return false;
      }
      return true;
    }

    CompletionSearch& s_;
    std::vector<std::uint32_t> chosen_;
    std::vector<int> count_;
    std::vector<int> pairs_;
    std::vector<Frame> frames_;
    std::vector<Word> reach_;
    std::vector<int> supply_;
    std::vector<Placement> path_;
  };

  const std::uint64_t* cand(std::size_t slot, std::uint32_t i) const { return packed_[slot].data() + static_cast<std::size_t>(i) * W; }

  bool admissible(std::size_t row, const BitRow& b) const {
    for (auto it = pm_.cell_constraints.lower_bound({row, 0}); it != pm_.cell_constraints.end() && it->first.first == row; ++it)
      if (b.test(it->first.second) != it->second) return false;
    for (std::size_t c = 0; c < v_; ++c)
      if (b.test(c) && pm_.col_remaining[c] <= 0) return false;
    // Two columns already sharing two fixed rows cannot share a third.
    for (std::size_t a = 0; a < v_; ++a)
      for (std::size_t c = a + 1; c < v_ && b.test(a); ++c)
        if (b.test(c) && fixed_pairs_[a * v_ + c] >= 2) return false;
    return true;
  }

  bool over_budget() {
    const auto n = ++nodes_;
    if (config_.node_budget != 0 && n > config_.node_budget) {
      exhausted_ = true;
      return true;
    }
    return exhausted_.load(std::memory_order_relaxed);
  }

  void emit(const std::vector<std::uint32_t>& chosen, std::size_t task) const {
    IncidenceMatrix m;
    m.params = pm_.params;
    m.rows.assign(v_, BitRow(v_));
    for (const auto& [r, row] : pm_.fixed_rows) m.rows[r] = row;
    for (std::size_t s = 0; s < slots_; ++s) m.rows[rows_[s]] = candidates_[s][chosen[s]];
    const auto verdict = is_biplane(m);
    if (!verdict) throw std::logic_error("completion failed verification: " + verdict.violation);
    sink_(task, m);
  }

  const PartialMatrix& pm_;
  const CompletionConfig& config_;
  const CompletionSink& sink_;
  std::size_t v_;
  int k_;
  std::vector<std::size_t> rows_;
  std::size_t slots_ = 0;
  std::vector<std::vector<BitRow>> candidates_;
  std::vector<std::vector<std::uint64_t>> packed_;
  std::vector<int> fixed_pairs_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> prunes_{0};
  std::atomic<bool> exhausted_{false};
};

}  // namespace

CompletionStats complete(const PartialMatrix& partial, const TwoSpace& space, const CompletionConfig& config, const CompletionSink& sink) {
  if (partial.params.v <= 64) return CompletionSearch<1>(partial, space, config, sink).run();
  return CompletionSearch<2>(partial, space, config, sink).run();
}

std::vector<IncidenceMatrix> complete_all(const PartialMatrix& partial, const TwoSpace& space, const CompletionConfig& config,
                                          CompletionStats* stats) {
  std::map<std::size_t, std::vector<IncidenceMatrix>> per_task;
  std::mutex mutex;
  const auto s = complete(partial, space, config, [&](std::size_t task, const IncidenceMatrix& m) {
    std::lock_guard lock(mutex);
    per_task[task].push_back(m);
  });
  if (stats) *stats = s;
  std::vector<IncidenceMatrix> out;
  for (auto& [task, ms] : per_task)
    for (auto& m : ms) out.push_back(std::move(m));
  return out;
}

ConstructionResult census_of_completions(const PartialMatrix& partial, const TwoSpace& space, const CompletionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ConstructionResult result;
  result.params = partial.params;
  result.trace_restriction = partial.trace_restriction;

  // Per task: classes in first-emission order, merged in task order below.
  struct TaskClasses {
    std::vector<IsoClass> classes;
    std::map<Certificate, std::size_t> index;
  };
  std::map<std::size_t, TaskClasses> per_task;
  std::mutex mutex;
  const auto v = partial.params.v;
  result.stats = complete(partial, space, config, [&](std::size_t task, const IncidenceMatrix& m) {
    const auto aut = analyze(IncidenceGraph(m));
    const auto ms = matrix_stats(m);
    const bool full_trace = ms.trace == v;
    const bool lemma_ok = !full_trace || !check_lemma_zero_pattern(m).has_value();
    TaskClasses* tc;
    {
      std::lock_guard lock(mutex);
      tc = &per_task[task];
    }
    // Only the worker running `task` touches this entry.
    auto [it, fresh] = tc->index.try_emplace(aut.certificate, tc->classes.size());
    if (fresh) tc->classes.push_back(IsoClass{aut.certificate, aut.group_order, m});
    auto& cls = tc->classes[it->second];
    ++cls.completions;
    cls.symmetric += ms.symmetric;
    cls.full_trace += full_trace;
    cls.lemma_failures += !lemma_ok;
  });

  std::map<Certificate, std::size_t> index;
  for (auto& [task, tc] : per_task)
    for (auto& cls : tc.classes) {
      auto [it, fresh] = index.try_emplace(cls.certificate, result.classes.size());
      if (fresh) {
        result.classes.push_back(std::move(cls));
        continue;
      }
      auto& into = result.classes[it->second];
      into.completions += cls.completions;
      into.symmetric += cls.symmetric;
      into.full_trace += cls.full_trace;
      into.lemma_failures += cls.lemma_failures;
    }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ConstructionResult construct_census(int order, const StructuralInvariant* inv, bool trace_restriction, const CompletionConfig& config) {
  require_supported_order(order);
  const auto params = BiplaneParams::from_order(order);
  const auto header = canonical_header(params);
  const auto partial = apply_invariant(header, inv, trace_restriction);
  const auto space = build_two_space(params, trace_restriction, config.threads);
  auto result = census_of_completions(partial, space, config);
  result.invariant = inv ? inv->name : "none";
  return result;
}

}  // namespace biplane
