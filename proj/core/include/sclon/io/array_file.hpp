#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sclon::io {

enum class ElementKind : std::uint8_t { F64 = 1, C128 = 2 };

/// Self-describing dense array. Layout: 64-byte header (magic "SCLN", u16
/// version, u8 element kind, u8 rank, seven u64 dims, all little-endian)
/// followed by the row-major payload; complex elements are (re, im) pairs.
struct ArrayFile {
  static constexpr std::uint16_t kVersion = 1;
  static constexpr int kMaxRank = 7;

  ElementKind kind = ElementKind::F64;
  std::vector<std::uint64_t> dims;
  /// Doubles: one per element (F64) or two (C128).
  std::vector<double> data;

  std::uint64_t element_count() const;
  /// Throws ContractViolation unless data.size() matches dims and kind.
  void check() const;
};

std::string encode_array(const ArrayFile& array);
/// Throws ErrorCode::FormatError on a bad magic, version, kind, rank or
/// payload length.
ArrayFile decode_array(const std::string& bytes);

void write_array(const std::filesystem::path& path, const ArrayFile& array);
ArrayFile read_array(const std::filesystem::path& path);

/// Convenience constructors for common shapes.
ArrayFile make_matrix(const std::vector<std::vector<double>>& rows, ElementKind kind = ElementKind::F64);
ArrayFile make_vector(const std::vector<double>& values);

}  // namespace sclon::io
