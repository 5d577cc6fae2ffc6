#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "biplane/incidence.hpp"

namespace biplane {

// Vertex permutation: perm[x] is the image of x.
using Permutation = std::vector<int>;

// Point/line incidence graph of a square incidence matrix. Vertices
// 0..v-1 are points (rows), v..2v-1 are lines (columns); the two sides
// carry distinct colours.
class IncidenceGraph {
 public:
  static constexpr std::size_t kWords = 3;
  using Bits = std::array<std::uint64_t, kWords>;

  explicit IncidenceGraph(const IncidenceMatrix& m);

  std::size_t points() const { return v_; }
  std::size_t vertex_count() const { return 2 * v_; }
  std::size_t edge_count() const;
  bool adjacent(int a, int b) const {
    return (adjacency_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b) >> 6] >> (b & 63)) & 1u;
  }
  const Bits& neighbours(int x) const { return adjacency_[static_cast<std::size_t>(x)]; }
  int degree(int x) const;

 private:
  std::size_t v_ = 0;
  std::vector<Bits> adjacency_;
};

// Canonical incidence matrix of the isomorphism class, packed row-major.
struct Certificate {
  std::size_t v = 0;
  std::vector<std::uint64_t> words;

  std::string hex() const;
  // 16 hex digits (FNV-1a 64 of the packed words); short catalog key.
  std::string digest() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;
  friend auto operator<=>(const Certificate&, const Certificate&) = default;
};

struct AutResult {
  std::uint64_t group_order = 1;
  std::vector<Permutation> generators;
  Certificate certificate;
  // canonical_labeling[position] = vertex placed at that position.
  std::vector<int> canonical_labeling;
  std::uint64_t nodes = 0;
};

// One individualization-refinement search yields the certificate, the
// generators and the group order together.
AutResult analyze(const IncidenceGraph& g);

Certificate canonical_certificate(const IncidenceGraph& g);
AutResult aut_order(const IncidenceGraph& g);

bool is_automorphism(const IncidenceGraph& g, const Permutation& p);

// Order of the group generated by `generators` (degree n), by Schreier-Sims.
std::uint64_t schreier_sims_order(std::size_t degree, const std::vector<Permutation>& generators);

// Certificate equality; with allow_dual also tries the transpose of m2.
// Throws std::invalid_argument when the parameters differ.
bool are_isomorphic(const IncidenceMatrix& m1, const IncidenceMatrix& m2, bool allow_dual);

// result(point_perm[r], line_perm[c]) = m(r, c).
IncidenceMatrix relabel(const IncidenceMatrix& m, const Permutation& point_perm, const Permutation& line_perm);

}  // namespace biplane
