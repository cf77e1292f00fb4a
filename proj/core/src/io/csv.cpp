#include "sclon/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sclon/error.hpp"

namespace sclon::io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += quote(row[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) {
    require(row.size() == table.header.size(), "to_csv: row width differs from header");
    append_row(out, row);
  }
  return out;
}

std::string matrix_csv(std::span<const double> values, std::size_t rows, std::size_t cols) {
  require(values.size() == rows * cols, "matrix_csv: shape mismatch");
  CsvTable t;
  for (std::size_t c = 0; c < cols; ++c) t.header.push_back("c" + std::to_string(c));
  for (std::size_t r = 0; r < rows; ++r) {
    auto& row = t.rows.emplace_back();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(format_double(values[r * cols + c]));
  }
  return to_csv(t);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(ErrorCode::IoError, "write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sclon::io
