#pragma once

#include <string>
#include <vector>

#include "biplane/matrix_io.hpp"

namespace fixtures {

// The order-2 biplane in canonical form, with rows 12-15 in the form that
// actually satisfies the intersection conditions.
inline const std::vector<std::string> kB4c = {
    "1111110000000000", "1100001111000000", "1010001000111000", "1001000100100110",
    "1000100010010101", "1000010001001011", "0110001000000111", "0101000100011001",
    "0100100010101010", "0100010001110100", "0011000011100001", "0010100101010010",
    "0010010110001100", "0001101001001100", "0001011010010010", "0000111100100001",
};

inline biplane::IncidenceMatrix matrix(const std::vector<std::string>& rows) {
  std::string text;
  for (const auto& r : rows) text += r + "\n";
  return biplane::to_incidence(biplane::parse_matrix_text(text));
}

}  // namespace fixtures
