#include "tcsl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace tcsl {

void TileConfig::validate() const {
  if (m_tb <= 0 || k_tb <= 0) raise(Errc::invalid_argument, "tile dims must be positive");
  if (m_tb % 8 != 0 || k_tb % 8 != 0)
    raise(Errc::invalid_argument, "tile dims must be multiples of 8");
  if (static_cast<std::int64_t>(m_tb) * k_tb > 65536)
    raise(Errc::invalid_argument, "tile locations must fit 16 bits");
  if (threads_per_block <= 0) raise(Errc::invalid_argument, "threads_per_block must be positive");
}

int tile_n_for(int n) {
  if (n <= 8) return 8;
  if (n <= 16) return 16;
  if (n <= 64) return 32;
  return 64;
}

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) raise(Errc::invalid_argument, "sparsity must be in [0, 1]");
}

}  // namespace

HalfMatrix gen_random_sparse(int rows, int cols, double beta, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) raise(Errc::invalid_argument, "matrix dims must be positive");
  check_beta(beta);

  const std::int64_t n = static_cast<std::int64_t>(rows) * cols;
  std::int64_t needed = std::llround(beta * static_cast<double>(n));
  needed = std::clamp<std::int64_t>(needed, 0, n);

  HalfMatrix a(rows, cols);
  Eigen::half* p = a.data();
  std::mt19937_64 rng(seed);

  // Selection sampling: walking every position once, each is chosen as a
  // zero with probability needed/remaining, which yields exactly `needed`
  // zeros uniformly without replacement and one draw per position.
  std::int64_t remaining = n;
  for (std::int64_t i = 0; i < n; ++i, --remaining) {
    if (rng() % static_cast<std::uint64_t>(remaining) < static_cast<std::uint64_t>(needed)) {
      p[i] = half_from_bits(kHalfPosZero);
      --needed;
    } else {
      // Exact binary16 values: uniform sign, exponent field 13..17
      // (magnitude 0.25..7.996), uniform 10-bit mantissa. Never zero,
      // never rounded, never clamped.
      const std::uint64_t r = rng();
      const auto man = static_cast<HalfBits>(r & 0x3FFu);
      const auto expf = static_cast<HalfBits>(13 + (r >> 10) % 5);
      const auto sign = static_cast<HalfBits>(((r >> 63) & 1u) << 15);
      p[i] = half_from_bits(static_cast<HalfBits>(sign | (expf << 10) | man));
    }
  }
  return a;
}

HalfMatrix prune_magnitude(const HalfMatrix& a, double beta) {
  check_beta(beta);
  const std::int64_t n = a.size();
  HalfMatrix out = a;
  std::int64_t cut = static_cast<std::int64_t>(std::floor(beta * static_cast<double>(n)));
  cut = std::clamp<std::int64_t>(cut, 0, n);
  if (cut == 0 || n == 0) return out;

  // Rank by |value|; NaN ranks above every number so it is pruned last.
  const Eigen::half* p = a.data();
  std::vector<float> rank(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const float m = std::fabs(f32_from_f16(bits_of(p[i])));
    rank[static_cast<std::size_t>(i)] = std::isnan(m) ? HUGE_VALF : m;
  }
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  // Strict total order: magnitude ascending, then index descending, so among
  // tied magnitudes the larger row-major index is pruned first and the
  // smaller one survives.
  const auto before = [&](std::int64_t i, std::int64_t j) {
    const float ri = rank[static_cast<std::size_t>(i)];
    const float rj = rank[static_cast<std::size_t>(j)];
    if (ri != rj) return ri < rj;
    return i > j;
  };
  std::nth_element(idx.begin(), idx.begin() + (cut - 1), idx.end(), before);

  Eigen::half* q = out.data();
  for (std::int64_t i = 0; i < cut; ++i) q[idx[static_cast<std::size_t>(i)]] = half_from_bits(kHalfPosZero);
  return out;
}

double sparsity(const HalfMatrix& a) {
  const std::int64_t n = a.size();
  if (n == 0) return 0.0;
  const Eigen::half* p = a.data();
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < n; ++i) zeros += f16_is_zero(bits_of(p[i])) ? 1 : 0;
  return static_cast<double>(zeros) / static_cast<double>(n);
}

HalfMatrix normalize_zeros(HalfMatrix a) {
  Eigen::half* p = a.data();
  const std::int64_t n = a.size();
  for (std::int64_t i = 0; i < n; ++i) p[i] = half_from_bits(f16_normalize_zero(bits_of(p[i])));
  return a;
}

}  // namespace tcsl
