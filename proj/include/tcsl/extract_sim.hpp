#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tcsl/tcsl_format.hpp"

namespace tcsl {

// Shared-memory store traffic of the extract stage, modeled per 32-entry
// group: each entry stores into the 32-bit word (x, y/2), which lives in
// bank_id(x, y). A group completes in as many wavefronts as the most loaded
// bank needs, where stores to the same word in the same bank coalesce.
struct WavefrontStats {
  std::size_t groups = 0;
  std::size_t total_wavefronts = 0;
  double mean_per_group = 0.0;
  int max_per_group = 0;
  std::map<int, std::size_t> histogram;  // wavefronts -> group count
};

// Wavefronts for one group of up to 32 entries: max over banks of the number
// of distinct words targeted in that bank. Empty group -> 0.
int group_wavefronts(const TcslEntry* first, std::size_t count, const TileConfig& cfg);
int group_wavefronts(const std::vector<TcslEntry>& group, const TileConfig& cfg);

// Aggregates group_wavefronts over every group of every tile.
WavefrontStats matrix_extract_stats(const TcslMatrix& t);

// Wavefronts needed to read an aligned 8x8 half block at origin (x0, y0):
// always 1, because the 32 words of such a block hit all 32 banks once.
// Raises invalid_argument when the origin is not 8-aligned or out of range.
int ldmatrix_wavefronts(int x0, int y0, const TileConfig& cfg);

std::string to_json(const WavefrontStats& s);

}  // namespace tcsl
