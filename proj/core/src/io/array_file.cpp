#include "sclon/io/array_file.hpp"

#include <bit>
#include <cstring>

#include "sclon/error.hpp"
#include "sclon/io/csv.hpp"

namespace sclon::io {

namespace {

constexpr std::size_t kHeaderBytes = 64;

template <class T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <class T>
T get_le(const std::string& in, std::size_t at) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t ArrayFile::element_count() const {
  std::uint64_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

void ArrayFile::check() const {
  require(!dims.empty() && static_cast<int>(dims.size()) <= kMaxRank, "ArrayFile: rank must be 1..7");
  const std::uint64_t per = kind == ElementKind::C128 ? 2 : 1;
  require(data.size() == element_count() * per, "ArrayFile: payload length does not match dims");
}

std::string encode_array(const ArrayFile& a) {
  a.check();
  std::string out;
  out.reserve(kHeaderBytes + 8 * a.data.size());
  out += "SCLN";
  put_le<std::uint16_t>(out, ArrayFile::kVersion);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(a.kind));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(a.dims.size()));
  for (int i = 0; i < ArrayFile::kMaxRank; ++i) put_le<std::uint64_t>(out, i < static_cast<int>(a.dims.size()) ? a.dims[i] : 0);
  for (double v : a.data) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

ArrayFile decode_array(const std::string& bytes) {
  const auto bad = [](const std::string& m) { fail(ErrorCode::FormatError, "ArrayFile: " + m); };
  if (bytes.size() < kHeaderBytes) bad("truncated header");
  if (bytes.compare(0, 4, "SCLN") != 0) bad("bad magic");
  if (get_le<std::uint16_t>(bytes, 4) != ArrayFile::kVersion) bad("unsupported version");
  ArrayFile a;
  const auto kind = get_le<std::uint8_t>(bytes, 6);
  if (kind != 1 && kind != 2) bad("unknown element kind");
  a.kind = static_cast<ElementKind>(kind);
  const int rank = get_le<std::uint8_t>(bytes, 7);
  if (rank < 1 || rank > ArrayFile::kMaxRank) bad("rank out of range");
  for (int i = 0; i < rank; ++i) a.dims.push_back(get_le<std::uint64_t>(bytes, 8 + 8 * i));
  const std::uint64_t count = a.element_count() * (a.kind == ElementKind::C128 ? 2 : 1);
  if (bytes.size() != kHeaderBytes + 8 * count) bad("payload length does not match dims");
  a.data.resize(count);
  for (std::uint64_t i = 0; i < count; ++i)
    a.data[i] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, kHeaderBytes + 8 * i));
  return a;
}

void write_array(const std::filesystem::path& path, const ArrayFile& array) { write_text(path, encode_array(array)); }

ArrayFile read_array(const std::filesystem::path& path) { return decode_array(read_text(path)); }

ArrayFile make_matrix(const std::vector<std::vector<double>>& rows, ElementKind kind) {
  require(!rows.empty(), "make_matrix: no rows");
  ArrayFile a;
  a.kind = kind;
  const std::size_t width = rows[0].size();
  const std::size_t per = kind == ElementKind::C128 ? 2 : 1;
  require(width % per == 0, "make_matrix: odd row width for complex data");
  a.dims = {rows.size(), width / per};
  for (const auto& r : rows) {
    require(r.size() == width, "make_matrix: ragged rows");
    a.data.insert(a.data.end(), r.begin(), r.end());
  }
  return a;
}

ArrayFile make_vector(const std::vector<double>& values) {
  ArrayFile a;
  a.dims = {values.size()};
  a.data = values;
  return a;
}

}  // namespace sclon::io
