#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biplane/bitrow.hpp"
#include "biplane/incidence.hpp"

namespace biplane {

// Text matrix format: one row per line of '0'/'1' characters ('.' and the
// middle dot U+00B7 read as 0), blank lines ignored, optional first line
// "order=<n>".
struct MatrixText {
  std::optional<int> order;
  std::vector<BitRow> rows;
};

MatrixText parse_matrix_text(std::string_view text);
std::string format_matrix_text(const std::vector<BitRow>& rows, std::optional<int> order = std::nullopt);

// Square v x v matrix; the order comes from the header line or from v.
IncidenceMatrix to_incidence(const MatrixText& text);
std::string format_incidence(const IncidenceMatrix& m);

IncidenceMatrix read_incidence_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace biplane
