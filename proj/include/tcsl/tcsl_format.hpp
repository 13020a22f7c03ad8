#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tcsl/matrix.hpp"

namespace tcsl {

inline constexpr int kGroupSize = 32;
inline constexpr int kNumBanks = 32;

// Shared-memory bank of the 32-bit word holding the half element at tile
// coordinates (x, y): consecutive 32-bit words rotate through 32 banks, two
// halves per word, and a tile row of 8x8 blocks spans 4 banks per row.
constexpr int bank_id(int x, int y) { return (x % 8) * 4 + (y % 8) / 2; }

// One packed entry: binary16 value in the high 16 bits, in-tile location
// (x * k_tb + y) in the low 16 bits.
struct TcslEntry {
  std::uint32_t raw = 0;

  static constexpr TcslEntry make(HalfBits value, std::uint16_t location) {
    return TcslEntry{(static_cast<std::uint32_t>(value) << 16) | location};
  }
  constexpr HalfBits value_bits() const { return static_cast<HalfBits>(raw >> 16); }
  constexpr std::uint16_t location() const { return static_cast<std::uint16_t>(raw & 0xFFFFu); }
  constexpr int x(const TileConfig& cfg) const { return location() / cfg.k_tb; }
  constexpr int y(const TileConfig& cfg) const { return location() % cfg.k_tb; }
  friend constexpr bool operator==(TcslEntry a, TcslEntry b) { return a.raw == b.raw; }
};

// Tiled sparse matrix. Tiles are m_tb x k_tb, laid out row-major over the
// zero-padded (rows up to a multiple of m_tb, cols up to a multiple of k_tb)
// grid. tile_offsets has num_tiles()+1 entries indexing into `entries`; every
// tile holds a multiple of 32 entries (groups), padded with +0.0 entries at
// the tile's first zero-valued positions in row-major order.
struct TcslMatrix {
  std::uint32_t m = 0;  // original (unpadded) row count
  std::uint32_t k = 0;  // original (unpadded) column count
  TileConfig cfg;
  bool reordered = false;
  std::vector<std::uint32_t> tile_offsets;
  std::vector<TcslEntry> entries;

  int tiles_m() const { return div_up(m, cfg.m_tb); }
  int tiles_k() const { return div_up(k, cfg.k_tb); }
  std::uint32_t num_tiles() const { return static_cast<std::uint32_t>(tiles_m()) * tiles_k(); }
  std::uint32_t tile_entry_count(std::uint32_t tile) const {
    return tile_offsets[tile + 1] - tile_offsets[tile];
  }
};

// Dense -> tiled sparse. Nonzeros (numerically nonzero; -0.0 counts as zero
// and is dropped like +0.0) are gathered per tile in row-major scan order.
// With reorder=true they are redistributed ahead of time: 32 buckets keyed
// by bank_id, filled in scan order, then emitted one entry at a time from
// the bucket with the most entries remaining (ties: smallest bank id, FIFO
// inside a bucket).
TcslMatrix encode(const HalfMatrix& a, const TileConfig& cfg = {}, bool reorder = true);

// Tiled sparse -> dense (original m x k shape, zeros restored as +0.0).
// Raises location_out_of_range / inconsistent_offsets on malformed input.
HalfMatrix decode(const TcslMatrix& t);

// TCSL container, little-endian:
//   "TCSL" | u16 version=1 | u16 flags (bit0 = reordered) | u32 m | u32 k |
//   u32 m_tb | u32 k_tb | u32 num_tiles | u32 tile_offsets[num_tiles+1] |
//   u32 entries[...]
std::vector<std::uint8_t> serialize_tcsl(const TcslMatrix& t);
TcslMatrix deserialize_tcsl(const std::uint8_t* data, std::size_t size);
TcslMatrix deserialize_tcsl(const std::vector<std::uint8_t>& bytes);

void save_tcsl(const std::string& path, const TcslMatrix& t);
TcslMatrix load_tcsl(const std::string& path);

// Serialized size in bytes (header + offsets + entries).
std::size_t footprint_bytes(const TcslMatrix& t);

// footprint_bytes relative to the 2*m*k bytes of the dense f16 matrix.
double footprint_ratio(const TcslMatrix& t);

}  // namespace tcsl
