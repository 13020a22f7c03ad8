#pragma once

// Internal little-endian byte packing helpers shared by the file codecs.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "tcsl/errors.hpp"

namespace tcsl::detail {

static_assert(std::endian::native == std::endian::little, "file formats assume little-endian");

inline void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v & 0xFF));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

// Bounds-checked cursor over an input buffer; any read past the end is a
// truncated file.
struct Reader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > size) raise(Errc::truncated, "unexpected end of file");
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data[pos] | (data[pos + 1] << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  void raw(void* out, std::size_t n) {
    need(n);
    std::memcpy(out, data + pos, n);
    pos += n;
  }
  void expect_magic(const char m[4], const char* what) {
    need(4);
    if (std::memcmp(data + pos, m, 4) != 0) raise(Errc::bad_magic, std::string("not a ") + what + " file");
    pos += 4;
  }
  void done() const {
    if (pos != size) raise(Errc::trailing_data, "trailing bytes after payload");
  }
};

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_failure, "cannot open " + path);
  in.seekg(0, std::ios::end);
  const auto end = in.tellg();
  if (end < 0) raise(Errc::io_failure, "cannot stat " + path);
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(end));
  if (!bytes.empty()) in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in) raise(Errc::io_failure, "cannot read " + path);
  return bytes;
}

inline void write_file(const std::string& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::io_failure, "cannot open " + path + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) raise(Errc::io_failure, "cannot write " + path);
}

}  // namespace tcsl::detail
