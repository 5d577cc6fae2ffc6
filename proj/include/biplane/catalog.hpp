#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "biplane/autgroup.hpp"
#include "biplane/incidence.hpp"

namespace biplane {

struct Provenance {
  std::string invariant;
  std::string config_digest;
  std::string timestamp;  // ISO 8601, UTC
};

struct CatalogEntry {
  std::string key;          // directory name: certificate digest, suffixed on collision
  std::string certificate;  // full hex
  BiplaneParams params;
  std::uint64_t aut_order = 0;
  int trace = 0;
  bool symmetric = false;
  Provenance provenance;
};

struct CatalogIssue {
  std::string key;
  std::string problem;
};

// One directory per isomorphism class holding matrix.txt and meta.json,
// plus index.json at the root. Writes go through a temporary name and a
// rename; concurrent writers are serialized by an exclusive lock on
// <root>/.lock.
class Catalog {
 public:
  explicit Catalog(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  std::vector<CatalogEntry> entries() const;
  std::optional<CatalogEntry> find(const std::string& certificate_hex) const;

  struct Added {
    CatalogEntry entry;
    bool fresh = false;
  };
  // Idempotent by certificate. `known` skips recomputing the analysis.
  Added add(const IncidenceMatrix& m, const Provenance& provenance, const AutResult* known = nullptr);

  IncidenceMatrix load(const CatalogEntry& entry) const;
  std::filesystem::path matrix_path(const CatalogEntry& entry) const;

  // Re-verifies every entry: biplane axioms, certificate, automorphism
  // group order, and agreement between index and metadata.
  std::vector<CatalogIssue> scan() const;

 private:
  std::filesystem::path root_;
};

// $BIPLANE_CATALOG, else ./biplane-catalog.
std::filesystem::path default_catalog_path();

std::string utc_timestamp();

// FNV-1a 64 of arbitrary text, 16 hex digits.
std::string text_digest(const std::string& text);

}  // namespace biplane
