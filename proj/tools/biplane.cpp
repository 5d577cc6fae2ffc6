// Command-line front end: header, twospace, construct, verify, aut,
// levelsets, conjecture and catalog maintenance. Every command except
// `header` prints a JSON stats document on stdout.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "biplane/autgroup.hpp"
#include "biplane/catalog.hpp"
#include "biplane/conjecture.hpp"
#include "biplane/construct.hpp"
#include "biplane/levelsets.hpp"
#include "biplane/matrix_io.hpp"
#include "biplane/stats.hpp"
#include "biplane/twospace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace biplane;

namespace {

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2, kBudgetExhausted = 3 };

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int print(StatsDocument& doc, const Timer& timer, int code = kOk) {
  doc.runtime_seconds = timer.seconds();
  std::cout << doc.dump() << "\n";
  return code;
}

json rows_1based(const std::map<std::size_t, std::uint64_t>& per_row) {
  json out = json::object();
  for (const auto& [row, n] : per_row) out[std::to_string(row + 1)] = n;
  return out;
}

json bin_json(const ClassBin& b) {
  json j{{"modal_value", b.modal_value}, {"multiplicity", b.multiplicity}, {"total", b.total}, {"regular", b.regular}};
  if (const auto c = b.constant_count()) j["per_subset"] = *c;
  else j["per_subset"] = rows_1based(b.per_subset);
  return j;
}

json class_json(const IsoClass& c) {
  return {{"key", c.certificate.digest()},    {"aut_order", c.aut_order}, {"completions", c.completions},
          {"symmetric", c.symmetric},        {"full_trace", c.full_trace}, {"lemma_failures", c.lemma_failures},
          {"representative_trace", matrix_stats(c.representative).trace}};
}

struct Options {
  int order = 0;
  unsigned threads = 1;
  std::uint64_t node_budget = 0;
  std::string catalog;
  bool no_catalog = false;

  // header
  std::string output;
  // twospace
  bool count_only = false;
  // construct
  std::string invariant;
  std::string invariant_file;
  bool seedless = false;
  bool no_trace = false;
  bool force_trace = false;
  // verify / aut
  std::string path;
  // levelsets / conjecture
  std::vector<int> thresholds;
  std::size_t sample = 0;
  std::string profiles;
};

fs::path catalog_root(const Options& o) { return o.catalog.empty() ? default_catalog_path() : fs::path(o.catalog); }

int cmd_header(const Options& o) {
  require_supported_order(o.order);
  const auto h = canonical_header(BiplaneParams::from_order(o.order));
  const auto text = format_matrix_text(h.rows, o.order);
  if (o.output.empty())
    std::cout << text;
  else
    write_text_file(o.output, text);
  return kOk;
}

int cmd_twospace(const Options& o) {
  Timer timer;
  StatsDocument doc{"twospace", {{"order", o.order}, {"count_only", o.count_only}, {"threads", o.threads}}};
  require_supported_order(o.order);
  const auto census = o.count_only ? q_census(o.order, o.threads) : census_of(build_two_space(BiplaneParams::from_order(o.order), true, o.threads));
  doc.results = {{"q", census.q}, {"constant", census.constant}, {"per_subset", rows_1based(census.per_subset)}};
  doc.results["bound"] = census.bound ? json(*census.bound) : json(nullptr);
  return print(doc, timer);
}

std::string config_digest(const Options& o, const std::string& invariant_text, bool trace) {
  return text_digest("order=" + std::to_string(o.order) + ";trace=" + (trace ? "1" : "0") + ";budget=" + std::to_string(o.node_budget) +
                     ";invariant=" + invariant_text);
}

int cmd_construct(const Options& o) {
  Timer timer;
  require_supported_order(o.order);
  const auto params = BiplaneParams::from_order(o.order);
  std::optional<StructuralInvariant> inv;
  if (!o.invariant.empty()) inv = builtin_invariant(o.invariant, params);
  if (!o.invariant_file.empty()) inv = parse_invariant_text(read_text_file(o.invariant_file), fs::path(o.invariant_file).filename().string());
  if (!inv && !o.seedless) throw CLI::ValidationError("construct", "give --invariant, --invariant-file or --seedless");
  bool trace = inv ? inv->trace_restriction : true;
  if (o.no_trace) trace = false;
  if (o.force_trace) trace = true;

  StatsDocument doc{"construct",
                    {{"order", o.order}, {"invariant", inv ? inv->name : "none"}, {"trace_restriction", trace},
                     {"node_budget", o.node_budget}, {"threads", o.threads}}};
  CompletionConfig config;
  config.node_budget = o.node_budget;
  config.threads = o.threads;
  const auto result = construct_census(o.order, inv ? &*inv : nullptr, trace, config);
  doc.nodes = result.stats.nodes;

  const Provenance provenance{inv ? inv->name : "none", config_digest(o, inv ? format_invariant_text(*inv) : "", trace), utc_timestamp()};
  std::optional<Catalog> catalog;
  if (!o.no_catalog) catalog.emplace(catalog_root(o));
  if (!o.output.empty()) fs::create_directories(o.output);

  json classes = json::array();
  for (const auto& c : result.classes) {
    json j = class_json(c);
    if (catalog) {
      AutResult known;
      known.certificate = c.certificate;
      known.group_order = c.aut_order;
      const auto added = catalog->add(c.representative, provenance, &known);
      j["catalog_key"] = added.entry.key;
      j["catalog_added"] = added.fresh;
    }
    if (!o.output.empty()) write_text_file(fs::path(o.output) / (c.certificate.digest() + ".txt"), format_incidence(c.representative));
    classes.push_back(j);
  }
  doc.results = {{"classes", classes},
                 {"completions", result.stats.completions},
                 {"prunes", result.stats.prunes},
                 {"tasks", result.stats.tasks},
                 {"exhaustive", result.exhaustive()}};
  if (catalog) doc.results["catalog"] = catalog->root().string();
  return print(doc, timer, result.exhaustive() ? kOk : kBudgetExhausted);
}

int cmd_verify(const Options& o) {
  Timer timer;
  StatsDocument doc{"verify", {{"path", o.path}}};
  IncidenceMatrix m;
  try {
    m = read_incidence_file(o.path);
  } catch (const std::invalid_argument& e) {
    doc.results = {{"ok", false}, {"violation", e.what()}};
    return print(doc, timer, kVerificationFailed);
  }
  const auto verdict = is_biplane(m);
  const auto stats = matrix_stats(m);
  doc.results = {{"order", m.params.order}, {"v", m.params.v}, {"ok", verdict.ok}, {"trace", stats.trace}, {"symmetric", stats.symmetric},
                 {"canonical_header", stats.is_canonical_header}};
  if (!verdict.ok) doc.results["violation"] = verdict.violation;
  if (verdict.ok && stats.is_canonical_header && stats.trace == m.params.v) {
    const auto lemma = check_lemma_zero_pattern(m);
    doc.results["zero_pattern"] = lemma ? json{{"i", lemma->i}, {"j", lemma->j}, {"l", lemma->l}, {"transposed", lemma->transposed}} : json("ok");
  } else {
    doc.results["zero_pattern"] = "not applicable";
  }
  return print(doc, timer, verdict.ok ? kOk : kVerificationFailed);
}

int cmd_aut(const Options& o) {
  Timer timer;
  StatsDocument doc{"aut", {{"path", o.path}}};
  const auto m = read_incidence_file(o.path);
  if (const auto verdict = is_biplane(m); !verdict) {
    doc.results = {{"ok", false}, {"violation", verdict.violation}};
    return print(doc, timer, kVerificationFailed);
  }
  const IncidenceGraph g(m);
  const auto r = analyze(g);
  doc.nodes = r.nodes;
  const auto dual_cert = canonical_certificate(IncidenceGraph(transpose(m)));
  doc.results = {{"ok", true},
                 {"aut_order", r.group_order},
                 {"schreier_sims_order", schreier_sims_order(g.vertex_count(), r.generators)},
                 {"generators", r.generators.size()},
                 {"key", r.certificate.digest()},
                 {"certificate", r.certificate.hex()},
                 {"self_dual", dual_cert == r.certificate}};
  return print(doc, timer);
}

int cmd_levelsets(const Options& o) {
  Timer timer;
  require_supported_order(o.order);
  if (o.order > 9 && o.sample == 0) throw CLI::ValidationError("levelsets", "orders above 9 need --sample");
  std::optional<int> threshold;
  if (!o.thresholds.empty()) threshold = o.thresholds.front();
  StatsDocument doc{"levelsets", {{"order", o.order}, {"threads", o.threads}, {"sample", o.sample}}};
  doc.parameters["threshold"] = threshold ? json(*threshold) : json("auto");
  const auto params = BiplaneParams::from_order(o.order);
  const auto space = build_two_space(params, true, o.threads);
  const auto e = exceptional_indices(params);
  const auto census = classify_vectors(space, e, {threshold, o.threads, o.sample});

  json exceptional = json::array();
  for (auto r : e.rows) exceptional.push_back(r + 1);
  json histogram = json::array();
  for (const auto& b : census.histogram) histogram.push_back(bin_json(b));
  doc.results = {{"exceptional", exceptional},
                 {"threshold", census.threshold},
                 {"foreign_subsets", census.foreign_subsets},
                 {"q", space.subset(space.first_row()).size()},
                 {"sampled", census.sampled},
                 {"histogram", histogram}};
  doc.results["alpha"] = census.alpha ? bin_json(*census.alpha) : json(nullptr);
  doc.results["beta"] = census.beta ? bin_json(*census.beta) : json(nullptr);

  if (!o.profiles.empty()) {
    std::ofstream out(o.profiles);
    if (!out) throw std::runtime_error("cannot write " + o.profiles);
    for (std::size_t row = 0; row < census.modal.size(); ++row)
      for (std::size_t x = 0; x < census.modal[row].size(); ++x) {
        const auto& m = census.modal[row][x];
        if (!m.profiled) continue;
        const auto tag = census.tags[row][x];
        out << json{{"subset", row + 1},
                    {"vector", space.subset(row)[x].to_string()},
                    {"modal_value", m.modal_value},
                    {"multiplicity", m.multiplicity},
                    {"class", tag == VectorClass::alpha ? "alpha" : tag == VectorClass::beta ? "beta" : "other"}}
                   .dump()
            << "\n";
      }
  }
  return print(doc, timer);
}

int cmd_conjecture(const Options& o) {
  Timer timer;
  require_supported_order(o.order);
  StatsDocument doc{"conjecture", {{"order", o.order}, {"node_budget", o.node_budget}, {"threads", o.threads}}};
  std::vector<std::optional<int>> sweep;
  for (int r : o.thresholds) sweep.emplace_back(r);
  if (sweep.empty()) sweep.emplace_back(std::nullopt);
  doc.parameters["thresholds"] = o.thresholds.empty() ? json("auto") : json(o.thresholds);
  CompletionConfig config;
  config.node_budget = o.node_budget;
  config.threads = o.threads;

  json runs = json::array();
  bool exhaustive = true;
  for (const auto& r : sweep) {
    const auto rep = conjecture_check(o.order, config, r);
    auto keys = [](const ConstructionResult& res) {
      json a = json::array();
      for (const auto& c : res.classes) a.push_back({{"key", c.certificate.digest()}, {"aut_order", c.aut_order}, {"completions", c.completions}});
      return a;
    };
    runs.push_back({{"threshold", rep.threshold},
                    {"removed_vectors", rep.removed_vectors},
                    {"classes_full", keys(rep.full)},
                    {"classes_restricted", keys(rep.restricted)},
                    {"exhaustive_full", rep.exhaustive_full},
                    {"exhaustive_restricted", rep.exhaustive_restricted},
                    {"equal", rep.equal}});
    doc.nodes += rep.full.stats.nodes + rep.restricted.stats.nodes;
    exhaustive = exhaustive && rep.exhaustive_full && rep.exhaustive_restricted;
  }
  doc.results = {{"runs", runs}, {"exhaustive", exhaustive}};
  return print(doc, timer, exhaustive ? kOk : kBudgetExhausted);
}

int cmd_catalog_scan(const Options& o) {
  Timer timer;
  const Catalog catalog(catalog_root(o));
  StatsDocument doc{"catalog scan", {{"catalog", catalog.root().string()}}};
  const auto issues = catalog.scan();
  json list = json::array();
  for (const auto& i : issues) list.push_back({{"key", i.key}, {"problem", i.problem}});
  doc.results = {{"entries", catalog.entries().size()}, {"issues", list}, {"ok", issues.empty()}};
  return print(doc, timer, issues.empty() ? kOk : kVerificationFailed);
}

int cmd_catalog_list(const Options& o) {
  Timer timer;
  const Catalog catalog(catalog_root(o));
  StatsDocument doc{"catalog list", {{"catalog", catalog.root().string()}}};
  json list = json::array();
  for (const auto& e : catalog.entries())
    list.push_back({{"key", e.key}, {"order", e.params.order}, {"aut_order", e.aut_order}, {"trace", e.trace}, {"symmetric", e.symmetric},
                    {"invariant", e.provenance.invariant}, {"timestamp", e.provenance.timestamp}});
  doc.results = {{"entries", list}};
  return print(doc, timer);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, enumerate and verify biplanes (symmetric 2-(v,k,2) designs)."};
  app.require_subcommand(1);
  Options o;

  auto order_option = [&](CLI::App* cmd) { cmd->add_option("--order", o.order, "Biplane order n = k - 2")->required()->check(CLI::Range(1, 1000)); };
  auto threads_option = [&](CLI::App* cmd) { cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)")->capture_default_str(); };
  auto catalog_option = [&](CLI::App* cmd) {
    cmd->add_option("--catalog", o.catalog, "Catalog directory (default: $BIPLANE_CATALOG or ./biplane-catalog)");
  };

  auto* header = app.add_subcommand("header", "Print the canonical header rows");
  order_option(header);
  header->add_option("--output", o.output, "Write to a file instead of stdout");

  auto* twospace = app.add_subcommand("twospace", "Subset sizes of the diagonal-restricted 2-space");
  order_option(twospace);
  threads_option(twospace);
  twospace->add_flag("--count-only", o.count_only, "Count without storing vectors");

  auto* construct = app.add_subcommand("construct", "Complete matrices seeded by a structural invariant");
  order_option(construct);
  threads_option(construct);
  catalog_option(construct);
  auto* inv_opt = construct->add_option("--invariant", o.invariant, "Builtin invariant: A, B, C, FIG_B7, FIG_B9C");
  auto* file_opt = construct->add_option("--invariant-file", o.invariant_file, "Invariant file ('block i j' + rows)")->check(CLI::ExistingFile);
  auto* seedless_opt = construct->add_flag("--seedless", o.seedless, "Search from the header alone");
  inv_opt->excludes(file_opt)->excludes(seedless_opt);
  file_opt->excludes(seedless_opt);
  auto* no_trace = construct->add_flag("--no-trace-restriction", o.no_trace, "Do not force the diagonal to 1");
  construct->add_flag("--trace-restriction", o.force_trace, "Force the diagonal to 1 even where the invariant defaults off")->excludes(no_trace);
  construct->add_option("--node-budget", o.node_budget, "Stop after this many search nodes (0: unlimited)");
  construct->add_option("--output", o.output, "Directory for representative matrices");
  construct->add_flag("--no-catalog", o.no_catalog, "Do not record classes in the catalog");

  auto* verify = app.add_subcommand("verify", "Check a matrix file against the biplane axioms");
  verify->add_option("path", o.path, "Matrix text file")->required()->check(CLI::ExistingFile);

  auto* aut = app.add_subcommand("aut", "Automorphism group order and certificate of a matrix file");
  aut->add_option("path", o.path, "Matrix text file")->required()->check(CLI::ExistingFile);

  auto* levelsets = app.add_subcommand("levelsets", "Level-set census and alpha/beta classification");
  order_option(levelsets);
  threads_option(levelsets);
  levelsets->add_option("--threshold", o.thresholds, "Regularity threshold r (default: largest multiplicity)")->expected(1);
  levelsets->add_option("--sample", o.sample, "Profile only this many vectors per subset");
  levelsets->add_option("--profiles", o.profiles, "Write one JSON line per profiled vector to this file");

  auto* conjecture = app.add_subcommand("conjecture", "Compare seedless completions over the full and restricted spaces");
  order_option(conjecture);
  threads_option(conjecture);
  conjecture->add_option("--threshold", o.thresholds, "Regularity threshold r; repeat for a sweep");
  conjecture->add_option("--node-budget", o.node_budget, "Node budget per search (0: unlimited)");

  auto* catalog = app.add_subcommand("catalog", "Catalog maintenance");
  catalog->require_subcommand(1);
  auto* scan = catalog->add_subcommand("scan", "Re-verify every catalog entry");
  catalog_option(scan);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  catalog_option(list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*header) return cmd_header(o);
    if (*twospace) return cmd_twospace(o);
    if (*construct) return cmd_construct(o);
    if (*verify) return cmd_verify(o);
    if (*aut) return cmd_aut(o);
    if (*levelsets) return cmd_levelsets(o);
    if (*conjecture) return cmd_conjecture(o);
    if (*scan) return cmd_catalog_scan(o);
    if (*list) return cmd_catalog_list(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kUsage;
}
