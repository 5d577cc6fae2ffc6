#include "biplane/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace biplane {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

BitRow parse_row(std::string_view line, std::size_t line_no) {
  std::string bits;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (ch == '0' || ch == '.') {
      bits.push_back('0');
    } else if (ch == '1') {
      bits.push_back('1');
    } else if (static_cast<unsigned char>(ch) == 0xC2 && i + 1 < line.size() &&
               static_cast<unsigned char>(line[i + 1]) == 0xB7) {
      bits.push_back('0');  // U+00B7 middle dot
      ++i;
    } else if (ch == ' ' || ch == '\t') {
      continue;
    } else {
      throw std::invalid_argument("matrix text line " + std::to_string(line_no) + ": unexpected character");
    }
  }
  return BitRow::from_string(bits);
}

}  // namespace

MatrixText parse_matrix_text(std::string_view text) {
  MatrixText out;
  std::size_t line_no = 0;
  bool first_content = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (first_content && line.starts_with("order=")) {
      out.order = std::stoi(std::string(line.substr(6)));
      first_content = false;
      continue;
    }
    first_content = false;
    out.rows.push_back(parse_row(line, line_no));
    if (out.rows.back().size() != out.rows.front().size())
      throw std::invalid_argument("matrix text line " + std::to_string(line_no) + ": ragged row");
  }
  return out;
}

std::string format_matrix_text(const std::vector<BitRow>& rows, std::optional<int> order) {
  std::string out;
  if (order) out += "order=" + std::to_string(*order) + "\n";
  for (const auto& r : rows) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

IncidenceMatrix to_incidence(const MatrixText& text) {
  const std::size_t v = text.rows.size();
  if (v == 0) throw std::invalid_argument("empty matrix");
  if (text.rows.front().size() != v) throw std::invalid_argument("incidence matrix must be square");
  int order = 0;
  if (text.order) {
    order = *text.order;
  } else {
    // v = 1 + k(k-1)/2
    const int k = static_cast<int>(std::lround((1.0 + std::sqrt(8.0 * static_cast<double>(v) - 7.0)) / 2.0));
    order = k - 2;
  }
  IncidenceMatrix m;
  m.params = BiplaneParams::from_order(order);
  if (static_cast<std::size_t>(m.params.v) != v)
    throw std::invalid_argument("matrix size " + std::to_string(v) + " does not match order " + std::to_string(order));
  m.rows = text.rows;
  return m;
}

std::string format_incidence(const IncidenceMatrix& m) { return format_matrix_text(m.rows, m.params.order); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

IncidenceMatrix read_incidence_file(const std::filesystem::path& path) {
  return to_incidence(parse_matrix_text(read_text_file(path)));
}

}  // namespace biplane
