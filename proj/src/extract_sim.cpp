#include "tcsl/extract_sim.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace tcsl {

int group_wavefronts(const TcslEntry* first, std::size_t count, const TileConfig& cfg) {
  cfg.validate();
  if (count == 0) return 0;
  if (count > kGroupSize) raise(Errc::invalid_argument, "a group holds at most 32 entries");

  // A group is small enough that per-bank word dedupe can be quadratic.
  std::array<std::array<std::uint32_t, kGroupSize>, kNumBanks> words{};
  std::array<int, kNumBanks> seen{};
  int max_wf = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const TcslEntry e = first[i];
    if (e.location() >= cfg.tile_elems())
      raise(Errc::location_out_of_range, "entry location exceeds tile size");
    const int x = e.x(cfg);
    const int y = e.y(cfg);
    const int bank = bank_id(x, y);
    const std::uint32_t word = static_cast<std::uint32_t>(x) * (cfg.k_tb / 2) + y / 2;
    auto& w = words[static_cast<std::size_t>(bank)];
    int& n = seen[static_cast<std::size_t>(bank)];
    if (std::find(w.begin(), w.begin() + n, word) == w.begin() + n) {
      w[static_cast<std::size_t>(n++)] = word;
      max_wf = std::max(max_wf, n);
    }
  }
  return max_wf;
}

int group_wavefronts(const std::vector<TcslEntry>& group, const TileConfig& cfg) {
  return group_wavefronts(group.data(), group.size(), cfg);
}

WavefrontStats matrix_extract_stats(const TcslMatrix& t) {
  t.cfg.validate();
  if (t.tile_offsets.size() != static_cast<std::size_t>(t.num_tiles()) + 1 ||
      t.tile_offsets.front() != 0 || t.tile_offsets.back() != t.entries.size())
    raise(Errc::inconsistent_offsets, "offset table does not match entries");

  WavefrontStats s;
  for (std::uint32_t tile = 0; tile < t.num_tiles(); ++tile) {
    if (t.tile_offsets[tile + 1] < t.tile_offsets[tile])
      raise(Errc::inconsistent_offsets, "offsets must be non-decreasing");
    for (std::uint32_t e = t.tile_offsets[tile]; e < t.tile_offsets[tile + 1]; e += kGroupSize) {
      const std::size_t n = std::min<std::size_t>(kGroupSize, t.tile_offsets[tile + 1] - e);
      const int wf = group_wavefronts(&t.entries[e], n, t.cfg);
      ++s.groups;
      s.total_wavefronts += static_cast<std::size_t>(wf);
      s.max_per_group = std::max(s.max_per_group, wf);
      ++s.histogram[wf];
    }
  }
  s.mean_per_group = s.groups ? static_cast<double>(s.total_wavefronts) / static_cast<double>(s.groups) : 0.0;
  return s;
}

int ldmatrix_wavefronts(int x0, int y0, const TileConfig& cfg) {
  cfg.validate();
  if (x0 % 8 != 0 || y0 % 8 != 0) raise(Errc::invalid_argument, "ldmatrix origin must be 8-aligned");
  if (x0 < 0 || y0 < 0 || x0 + 8 > cfg.m_tb || y0 + 8 > cfg.k_tb)
    raise(Errc::invalid_argument, "ldmatrix block outside the tile");

  // Count distinct words per bank over the 8x8 block, same model as stores;
  // reads of one word from several lanes broadcast in a single wavefront.
  std::array<std::array<std::uint32_t, 64>, kNumBanks> words{};
  std::array<int, kNumBanks> seen{};
  int max_wf = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int x = x0 + i;
      const int y = y0 + j;
      const int bank = bank_id(x, y);
      const std::uint32_t word = static_cast<std::uint32_t>(x) * (cfg.k_tb / 2) + y / 2;
      auto& w = words[static_cast<std::size_t>(bank)];
      int& n = seen[static_cast<std::size_t>(bank)];
      if (std::find(w.begin(), w.begin() + n, word) == w.begin() + n) {
        w[static_cast<std::size_t>(n++)] = word;
        max_wf = std::max(max_wf, n);
      }
    }
  }
  return max_wf;
}

std::string to_json(const WavefrontStats& s) {
  std::ostringstream o;
  o << "{\"groups\":" << s.groups << ",\"total_wavefronts\":" << s.total_wavefronts
    << ",\"mean_per_group\":" << s.mean_per_group << ",\"max_per_group\":" << s.max_per_group
    << ",\"histogram\":{";
  bool first = true;
  for (const auto& [wf, n] : s.histogram) {
    if (!first) o << ",";
    first = false;
    o << "\"" << wf << "\":" << n;
  }
  o << "}}";
  return o.str();
}

}  // namespace tcsl
