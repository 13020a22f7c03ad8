#include "tcsl/engine.hpp"

#include <algorithm>
#include <vector>

namespace tcsl {

std::vector<HalfBits> extract_tile(const TcslMatrix& t, std::uint32_t tile) {
  t.cfg.validate();
  if (tile >= t.num_tiles()) raise(Errc::invalid_argument, "tile index out of range");
  if (t.tile_offsets.size() != static_cast<std::size_t>(t.num_tiles()) + 1 ||
      t.tile_offsets[tile + 1] < t.tile_offsets[tile] ||
      t.tile_offsets[tile + 1] > t.entries.size())
    raise(Errc::inconsistent_offsets, "offset table does not match entries");

  // Reset to +0.0, then scatter. Padding entries store +0.0 over +0.0.
  std::vector<HalfBits> buf(static_cast<std::size_t>(t.cfg.tile_elems()), kHalfPosZero);
  for (std::uint32_t e = t.tile_offsets[tile]; e < t.tile_offsets[tile + 1]; ++e) {
    const TcslEntry entry = t.entries[e];
    if (entry.location() >= t.cfg.tile_elems())
      raise(Errc::location_out_of_range, "entry location exceeds tile size");
    buf[entry.location()] = f16_normalize_zero(entry.value_bits());
  }
  return buf;
}

FloatMatrix spmm(const TcslMatrix& a, const HalfMatrix& b) {
  a.cfg.validate();
  if (b.rows() <= 0 || b.cols() <= 0) raise(Errc::invalid_argument, "B must be non-empty");
  if (static_cast<std::int64_t>(a.k) != b.rows())
    raise(Errc::dimension_mismatch, "A has " + std::to_string(a.k) + " columns, B has " +
                                        std::to_string(b.rows()) + " rows");

  const int m = static_cast<int>(a.m);
  const int n = static_cast<int>(b.cols());
  const int m_tb = a.cfg.m_tb;
  const int k_tb = a.cfg.k_tb;
  const int tiles_m = a.tiles_m();
  const int tiles_k = a.tiles_k();
  const int k_pad = tiles_k * k_tb;

  // Widen B once with zero-padded K; the zero products take part in the
  // accumulation exactly as in dense_gemm_ref.
  std::vector<float> bf(static_cast<std::size_t>(k_pad) * n, 0.0f);
  for (int kk = 0; kk < static_cast<int>(a.k); ++kk)
    for (int j = 0; j < n; ++j)
      bf[static_cast<std::size_t>(kk) * n + j] = f32_from_f16(bits_of(b(kk, j)));

  FloatMatrix c(m, n);
  std::vector<float> at(static_cast<std::size_t>(m_tb) * k_tb);
  std::vector<float> acc(static_cast<std::size_t>(m_tb) * n);

  for (int rb = 0; rb < tiles_m; ++rb) {
    std::fill(acc.begin(), acc.end(), 0.0f);
    for (int tj = 0; tj < tiles_k; ++tj) {
      // Load as sparse, compute as dense: rebuild the tile, widen it, then
      // run the dense micro-kernel over every element including the zeros.
      const std::vector<HalfBits> tile = extract_tile(a, static_cast<std::uint32_t>(rb) * tiles_k + tj);
      for (std::size_t i = 0; i < tile.size(); ++i) at[i] = f32_from_f16(tile[i]);

      // Per output element (x, j) the k order is ascending inside the tile,
      // and tiles arrive in ascending k order: dense_gemm_ref's exact order.
      for (int x = 0; x < m_tb; ++x) {
        float* arow = &acc[static_cast<std::size_t>(x) * n];
        const float* trow = &at[static_cast<std::size_t>(x) * k_tb];
        for (int kk = 0; kk < k_tb; ++kk) {
          const float av = trow[kk];
          const float* brow = &bf[(static_cast<std::size_t>(tj) * k_tb + kk) * n];
          for (int j = 0; j < n; ++j) arow[j] += av * brow[j];
        }
      }
    }
    const int x_end = std::min(m_tb, m - rb * m_tb);
    for (int x = 0; x < x_end; ++x)
      for (int j = 0; j < n; ++j) c(rb * m_tb + x, j) = acc[static_cast<std::size_t>(x) * n + j];
  }
  return c;
}

int reg_pressure(const TcslMatrix& t) {
  t.cfg.validate();
  if (t.tile_offsets.size() != static_cast<std::size_t>(t.num_tiles()) + 1)
    raise(Errc::inconsistent_offsets, "offset table does not match tile count");
  int worst = 0;
  for (std::uint32_t tile = 0; tile < t.num_tiles(); ++tile) {
    const std::uint32_t count = t.tile_entry_count(tile);
    const int need = div_up(count, t.cfg.threads_per_block);
    worst = std::max(worst, need);
  }
  return worst;
}

}  // namespace tcsl
