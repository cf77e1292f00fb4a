#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sclon::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// %.17g, so that parsing the text recovers the double exactly.
std::string format_double(double v);

/// RFC 4180 quoting for fields containing commas, quotes or newlines.
std::string to_csv(const CsvTable& table);

/// Matrix rows as CSV with generated column names c0, c1, ...
std::string matrix_csv(std::span<const double> values, std::size_t rows, std::size_t cols);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace sclon::io
