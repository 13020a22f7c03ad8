#include "tcsl/tcsl_format.hpp"

#include <array>
#include <cstring>

#include "bytes.hpp"

namespace tcsl {

namespace {

constexpr char kMagic[4] = {'T', 'C', 'S', 'L'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kFlagReordered = 0x0001;

static_assert(sizeof(TcslEntry) == 4 && alignof(TcslEntry) == 4);

// Structural checks shared by decode, stats and deserialize.
void check_offsets(const TcslMatrix& t) {
  const std::uint32_t nt = t.num_tiles();
  if (t.tile_offsets.size() != static_cast<std::size_t>(nt) + 1)
    raise(Errc::inconsistent_offsets, "offset table must have num_tiles+1 entries");
  if (t.tile_offsets.front() != 0) raise(Errc::inconsistent_offsets, "first offset must be 0");
  for (std::uint32_t i = 0; i < nt; ++i) {
    if (t.tile_offsets[i + 1] < t.tile_offsets[i])
      raise(Errc::inconsistent_offsets, "offsets must be non-decreasing");
    if ((t.tile_offsets[i + 1] - t.tile_offsets[i]) % kGroupSize != 0)
      raise(Errc::inconsistent_offsets, "tile entry counts must be multiples of 32");
  }
  if (t.tile_offsets.back() != t.entries.size())
    raise(Errc::inconsistent_offsets, "last offset must equal the entry count");
}

}  // namespace

TcslMatrix encode(const HalfMatrix& a, const TileConfig& cfg, bool reorder) {
  cfg.validate();
  if (a.rows() <= 0 || a.cols() <= 0) raise(Errc::invalid_argument, "cannot encode an empty matrix");

  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  TcslMatrix t;
  t.m = static_cast<std::uint32_t>(rows);
  t.k = static_cast<std::uint32_t>(cols);
  t.cfg = cfg;
  t.reordered = reorder;

  const int tm = t.tiles_m();
  const int tk = t.tiles_k();
  t.tile_offsets.reserve(static_cast<std::size_t>(tm) * tk + 1);
  t.tile_offsets.push_back(0);

  std::array<std::vector<TcslEntry>, kNumBanks> buckets;
  std::vector<TcslEntry> natural;

  for (int ti = 0; ti < tm; ++ti) {
    for (int tj = 0; tj < tk; ++tj) {
      const int r0 = ti * cfg.m_tb;
      const int c0 = tj * cfg.k_tb;
      const int x_end = std::min(cfg.m_tb, rows - r0);
      const int y_end = std::min(cfg.k_tb, cols - c0);

      // Gather the tile's nonzeros in row-major scan order. -0.0 is
      // numerically zero and is dropped like +0.0.
      natural.clear();
      for (auto& b : buckets) b.clear();
      for (int x = 0; x < x_end; ++x) {
        const Eigen::half* row = a.data() + static_cast<std::int64_t>(r0 + x) * cols + c0;
        for (int y = 0; y < y_end; ++y) {
          const HalfBits v = bits_of(row[y]);
          if (f16_is_zero(v)) continue;
          const auto loc = static_cast<std::uint16_t>(x * cfg.k_tb + y);
          if (reorder)
            buckets[static_cast<std::size_t>(bank_id(x, y))].push_back(TcslEntry::make(v, loc));
          else
            natural.push_back(TcslEntry::make(v, loc));
        }
      }

      std::size_t nnz = 0;
      if (reorder) {
        for (const auto& b : buckets) nnz += b.size();
        // Greedy bank balancing: always pull from the fullest bucket,
        // smallest bank id on ties, oldest entry first inside a bucket.
        std::array<std::size_t, kNumBanks> head{};
        for (std::size_t left = nnz; left > 0; --left) {
          int best = 0;
          std::size_t best_left = buckets[0].size() - head[0];
          for (int bk = 1; bk < kNumBanks; ++bk) {
            const std::size_t l = buckets[static_cast<std::size_t>(bk)].size() - head[static_cast<std::size_t>(bk)];
            if (l > best_left) {
              best = bk;
              best_left = l;
            }
          }
          t.entries.push_back(buckets[static_cast<std::size_t>(best)][head[static_cast<std::size_t>(best)]++]);
        }
      } else {
        nnz = natural.size();
        t.entries.insert(t.entries.end(), natural.begin(), natural.end());
      }

      // Pad the last group to 32 with +0.0 entries at the tile's first
      // zero-valued positions (the padded fringe beyond the matrix edge is
      // zero-valued too). m_tb*k_tb is a multiple of 32, so whenever padding
      // is needed at least that many zero positions exist.
      const std::size_t rem = nnz % kGroupSize;
      if (rem != 0) {
        std::size_t need = kGroupSize - rem;
        for (int x = 0; x < cfg.m_tb && need > 0; ++x) {
          for (int y = 0; y < cfg.k_tb && need > 0; ++y) {
            const bool inside = x < x_end && y < y_end;
            if (inside && !f16_is_zero(bits_of(a(r0 + x, c0 + y)))) continue;
            t.entries.push_back(
                TcslEntry::make(kHalfPosZero, static_cast<std::uint16_t>(x * cfg.k_tb + y)));
            --need;
          }
        }
      }
      t.tile_offsets.push_back(static_cast<std::uint32_t>(t.entries.size()));
    }
  }
  return t;
}

HalfMatrix decode(const TcslMatrix& t) {
  t.cfg.validate();
  if (t.m == 0 || t.k == 0) raise(Errc::bad_header, "matrix dims must be positive");
  check_offsets(t);

  const int tk = t.tiles_k();
  const int tile_elems = t.cfg.tile_elems();
  HalfMatrix out(t.m, t.k);
  out.setZero();

  for (std::uint32_t tile = 0; tile < t.num_tiles(); ++tile) {
    const int r0 = static_cast<int>(tile) / tk * t.cfg.m_tb;
    const int c0 = static_cast<int>(tile) % tk * t.cfg.k_tb;
    for (std::uint32_t e = t.tile_offsets[tile]; e < t.tile_offsets[tile + 1]; ++e) {
      const TcslEntry entry = t.entries[e];
      if (entry.location() >= tile_elems)
        raise(Errc::location_out_of_range, "entry location exceeds tile size");
      const int r = r0 + entry.x(t.cfg);
      const int c = c0 + entry.y(t.cfg);
      const HalfBits v = f16_normalize_zero(entry.value_bits());
      if (r >= static_cast<int>(t.m) || c >= static_cast<int>(t.k)) {
        if (!f16_is_zero(v))
          raise(Errc::location_out_of_range, "nonzero entry in the padded fringe");
        continue;
      }
      out(r, c) = half_from_bits(v);
    }
  }
  return out;
}

std::vector<std::uint8_t> serialize_tcsl(const TcslMatrix& t) {
  t.cfg.validate();
  if (t.m == 0 || t.k == 0) raise(Errc::bad_header, "matrix dims must be positive");
  check_offsets(t);

  std::vector<std::uint8_t> b;
  b.reserve(footprint_bytes(t));
  b.insert(b.end(), kMagic, kMagic + 4);
  detail::put_u16(b, kVersion);
  detail::put_u16(b, t.reordered ? kFlagReordered : 0);
  detail::put_u32(b, t.m);
  detail::put_u32(b, t.k);
  detail::put_u32(b, static_cast<std::uint32_t>(t.cfg.m_tb));
  detail::put_u32(b, static_cast<std::uint32_t>(t.cfg.k_tb));
  detail::put_u32(b, t.num_tiles());

  const std::size_t head = b.size();
  b.resize(head + 4 * t.tile_offsets.size() + 4 * t.entries.size());
  std::memcpy(b.data() + head, t.tile_offsets.data(), 4 * t.tile_offsets.size());
  std::memcpy(b.data() + head + 4 * t.tile_offsets.size(), t.entries.data(), 4 * t.entries.size());
  return b;
}

TcslMatrix deserialize_tcsl(const std::uint8_t* data, std::size_t size) {
  detail::Reader r{data, size};
  r.expect_magic(kMagic, "TCSL");
  if (r.u16() != kVersion) raise(Errc::bad_version, "unknown TCSL version");
  const std::uint16_t flags = r.u16();
  if (flags & ~kFlagReordered) raise(Errc::bad_version, "unknown TCSL flag bits");

  TcslMatrix t;
  t.reordered = (flags & kFlagReordered) != 0;
  t.m = r.u32();
  t.k = r.u32();
  const std::uint32_t m_tb = r.u32();
  const std::uint32_t k_tb = r.u32();
  if (t.m == 0 || t.k == 0) raise(Errc::bad_header, "matrix dims must be positive");
  if (m_tb == 0 || k_tb == 0 || m_tb > 65536 || k_tb > 65536)
    raise(Errc::bad_header, "implausible tile dims");
  t.cfg.m_tb = static_cast<int>(m_tb);
  t.cfg.k_tb = static_cast<int>(k_tb);
  try {
    t.cfg.validate();
  } catch (const Error& e) {
    raise(Errc::bad_header, e.what());
  }

  const std::uint32_t num_tiles = r.u32();
  if (num_tiles != t.num_tiles()) raise(Errc::bad_header, "tile count does not match dims");

  t.tile_offsets.resize(static_cast<std::size_t>(num_tiles) + 1);
  r.raw(t.tile_offsets.data(), 4 * t.tile_offsets.size());
  if (t.tile_offsets.front() != 0) raise(Errc::inconsistent_offsets, "first offset must be 0");
  for (std::uint32_t i = 0; i < num_tiles; ++i) {
    if (t.tile_offsets[i + 1] < t.tile_offsets[i])
      raise(Errc::inconsistent_offsets, "offsets must be non-decreasing");
    if ((t.tile_offsets[i + 1] - t.tile_offsets[i]) % kGroupSize != 0)
      raise(Errc::inconsistent_offsets, "tile entry counts must be multiples of 32");
  }
  const std::uint32_t n_entries = t.tile_offsets.back();
  r.need(4 * static_cast<std::size_t>(n_entries));  // bound before allocating
  t.entries.resize(n_entries);
  r.raw(t.entries.data(), 4 * t.entries.size());
  r.done();
  return t;
}

TcslMatrix deserialize_tcsl(const std::vector<std::uint8_t>& bytes) {
  return deserialize_tcsl(bytes.data(), bytes.size());
}

void save_tcsl(const std::string& path, const TcslMatrix& t) {
  const std::vector<std::uint8_t> bytes = serialize_tcsl(t);
  detail::write_file(path, bytes.data(), bytes.size());
}

TcslMatrix load_tcsl(const std::string& path) {
  const std::vector<std::uint8_t> bytes = detail::read_file(path);
  return deserialize_tcsl(bytes.data(), bytes.size());
}

std::size_t footprint_bytes(const TcslMatrix& t) {
  return 28 + 4 * t.tile_offsets.size() + 4 * t.entries.size();
}

double footprint_ratio(const TcslMatrix& t) {
  const double dense = 2.0 * static_cast<double>(t.m) * static_cast<double>(t.k);
  return static_cast<double>(footprint_bytes(t)) / dense;
}

}  // namespace tcsl
