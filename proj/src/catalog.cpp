#include "biplane/catalog.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <system_error>

#include "biplane/matrix_io.hpp"

namespace biplane {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kIndexSchema = "biplane-catalog/1";

class FileLock {
 public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      const int err = errno;
      ::close(fd_);
      throw std::system_error(err, std::generic_category(), "cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

json to_json(const CatalogEntry& e) {
  return json{{"key", e.key},
              {"certificate", e.certificate},
              {"order", e.params.order},
              {"k", e.params.k},
              {"v", e.params.v},
              {"aut_order", e.aut_order},
              {"trace", e.trace},
              {"symmetric", e.symmetric},
              {"provenance", {{"invariant", e.provenance.invariant}, {"config_digest", e.provenance.config_digest}, {"timestamp", e.provenance.timestamp}}}};
}

CatalogEntry from_json(const json& j) {
  CatalogEntry e;
  e.key = j.at("key").get<std::string>();
  e.certificate = j.at("certificate").get<std::string>();
  e.params = BiplaneParams::from_order(j.at("order").get<int>());
  e.aut_order = j.at("aut_order").get<std::uint64_t>();
  e.trace = j.at("trace").get<int>();
  e.symmetric = j.at("symmetric").get<bool>();
  const auto& p = j.at("provenance");
  e.provenance = {p.at("invariant").get<std::string>(), p.at("config_digest").get<std::string>(), p.at("timestamp").get<std::string>()};
  return e;
}

// Write-then-rename so readers never see a partial file.
void atomic_write(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  write_text_file(tmp, contents);
  fs::rename(tmp, path);
}

std::vector<CatalogEntry> read_index(const fs::path& root) {
  const fs::path index = root / "index.json";
  if (!fs::exists(index)) return {};
  const json doc = json::parse(read_text_file(index));
  if (doc.value("schema", "") != kIndexSchema) throw std::runtime_error(index.string() + ": unknown schema");
  std::vector<CatalogEntry> out;
  for (const auto& e : doc.at("entries")) out.push_back(from_json(e));
  return out;
}

void write_index(const fs::path& root, const std::vector<CatalogEntry>& entries) {
  json doc{{"schema", kIndexSchema}, {"entries", json::array()}};
  for (const auto& e : entries) doc["entries"].push_back(to_json(e));
  atomic_write(root / "index.json", doc.dump(2) + "\n");
}

}  // namespace

std::string text_digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kDigits[h & 0xF];
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path default_catalog_path() {
  if (const char* env = std::getenv("BIPLANE_CATALOG"); env && *env) return env;
  return "biplane-catalog";
}

Catalog::Catalog(fs::path root) : root_(std::move(root)) {}

std::vector<CatalogEntry> Catalog::entries() const { return read_index(root_); }

std::optional<CatalogEntry> Catalog::find(const std::string& certificate_hex) const {
  for (auto& e : entries())
    if (e.certificate == certificate_hex) return e;
  return std::nullopt;
}

fs::path Catalog::matrix_path(const CatalogEntry& entry) const { return root_ / entry.key / "matrix.txt"; }

IncidenceMatrix Catalog::load(const CatalogEntry& entry) const { return read_incidence_file(matrix_path(entry)); }

Catalog::Added Catalog::add(const IncidenceMatrix& m, const Provenance& provenance, const AutResult* known) {
  if (const auto verdict = is_biplane(m); !verdict) throw std::invalid_argument("not a biplane: " + verdict.violation);
  const AutResult aut = known ? *known : analyze(IncidenceGraph(m));
  const std::string hex = aut.certificate.hex();

  fs::create_directories(root_);
  FileLock lock(root_ / ".lock");
  auto all = read_index(root_);
  for (const auto& e : all)
    if (e.certificate == hex) return {e, false};

  CatalogEntry entry;
  entry.certificate = hex;
  entry.params = m.params;
  entry.aut_order = aut.group_order;
  const auto stats = matrix_stats(m);
  entry.trace = stats.trace;
  entry.symmetric = stats.symmetric;
  entry.provenance = provenance;
  entry.key = aut.certificate.digest();
  for (int n = 1; fs::exists(root_ / entry.key); ++n) entry.key = aut.certificate.digest() + "-" + std::to_string(n);

  const fs::path staging = root_ / (entry.key + ".tmp");
  fs::remove_all(staging);
  fs::create_directories(staging);
  write_text_file(staging / "matrix.txt", format_matrix_text(m.rows, m.params.order));
  write_text_file(staging / "meta.json", to_json(entry).dump(2) + "\n");
  fs::rename(staging, root_ / entry.key);

  all.push_back(entry);
  write_index(root_, all);
  return {entry, true};
}

std::vector<CatalogIssue> Catalog::scan() const {
  std::vector<CatalogIssue> issues;
  std::vector<CatalogEntry> all;
  try {
    all = entries();
  } catch (const std::exception& e) {
    return {{"index.json", e.what()}};
  }
  for (const auto& e : all) {
    auto report = [&](std::string problem) { issues.push_back({e.key, std::move(problem)}); };
    try {
      const auto meta = from_json(json::parse(read_text_file(root_ / e.key / "meta.json")));
      if (to_json(meta) != to_json(e)) report("meta.json disagrees with the index");
      const auto m = load(e);
      if (!(m.params == e.params)) report("matrix parameters differ from the index");
      if (const auto verdict = is_biplane(m); !verdict) {
        report("not a biplane: " + verdict.violation);
        continue;
      }
      const auto aut = analyze(IncidenceGraph(m));
      if (aut.certificate.hex() != e.certificate) report("certificate does not recompute");
      if (aut.group_order != e.aut_order) report("automorphism group order does not recompute");
      const auto stats = matrix_stats(m);
      if (stats.trace != e.trace || stats.symmetric != e.symmetric) report("trace or symmetry does not recompute");
    } catch (const std::exception& ex) {
      report(ex.what());
    }
  }
  return issues;
}

}  // namespace biplane
